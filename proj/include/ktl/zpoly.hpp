#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "ktl/errors.hpp"
#include "ktl/fq.hpp"
#include "ktl/intmat.hpp"

namespace ktl {

// integer polynomials; c[i] = coefficient of x^i, no trailing zero coefficients
using ZPoly = std::vector<Int>;

ZPoly zp_trim(ZPoly f);
int zp_deg(const ZPoly& f);  // -1 for the zero polynomial
Int zp_lc(const ZPoly& f);   // 0 for the zero polynomial
bool zp_eq(const ZPoly& a, const ZPoly& b);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(const ZPoly& a);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_scale(const Int& s, const ZPoly& a);
ZPoly zp_derivative(const ZPoly& a);
Int zp_eval(const ZPoly& a, const Int& x);
mpq_class zp_eval_q(const ZPoly& a, const mpq_class& x);
ZPoly zp_compose_affine(const ZPoly& f, const Int& a, const Int& b);  // f(a x + b)
Int zp_content(const ZPoly& a);      // gcd of coefficients, >= 0; 0 for zero
ZPoly zp_primitive(const ZPoly& a);  // a / content, sign of lc preserved
std::string zp_str(const ZPoly& a);

// resultant/discriminant via the Sylvester matrix and fraction-free elimination
Int zp_resultant(const ZPoly& a, const ZPoly& b);
Int zp_disc(const ZPoly& f);  // deg f >= 1

FqPoly zp_reduce(const ZPoly& f, const FqF& F);

// number of distinct real roots (Sturm)
int zp_real_roots(const ZPoly& f);
// number of distinct real roots in the open interval (a, b)
int zp_real_roots_between(const ZPoly& f, const mpq_class& a, const mpq_class& b);

// ---- integer helpers ----

int v_p(const Int& a, const Int& p);              // valuation; a != 0
Int unit_part(const Int& a, const Int& p);        // a / p^v_p(a)
bool is_square_int(const Int& a);                 // true for 0 and positive squares
Int squarefree_part(const Int& a);                // a = s * t^2 with s squarefree (sign kept)

// full factorization by trial division up to `bound`, then a primality test on
// the cofactor; returns false if a composite cofactor beyond the bound remains
bool factor_int(const Int& a, std::vector<std::pair<Int, int>>& out, long bound = 1000000);

}  // namespace ktl
