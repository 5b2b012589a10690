#pragma once
#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "ktl/errors.hpp"
#include "ktl/intmat.hpp"

namespace ktl {

// F_{p^n} = F_p[x]/(modulus); the modulus is the lexicographically smallest
// monic irreducible of degree n (coefficients compared low-to-high)
struct FqField {
    long p = 0;
    int n = 0;
    std::vector<long> mod;  // c0..cn, cn = 1
    Int q;                  // p^n
};
using FqF = std::shared_ptr<const FqField>;

FqF make_field(long p, int n);

struct Fq {
    FqF F;
    std::vector<long> c;  // length n, entries in [0,p)
};

Fq fq_zero(const FqF& F);
Fq fq_one(const FqF& F);
Fq fq_from_int(const FqF& F, const Int& a);
inline Fq fq_from_int(const FqF& F, long a) { return fq_from_int(F, Int(a)); }
bool fq_is_zero(const Fq& a);
bool fq_eq(const Fq& a, const Fq& b);
int fq_cmp(const Fq& a, const Fq& b);  // low-to-high lexicographic
Fq fq_add(const Fq& a, const Fq& b);
Fq fq_sub(const Fq& a, const Fq& b);
Fq fq_neg(const Fq& a);
Fq fq_mul(const Fq& a, const Fq& b);
Fq fq_inv(const Fq& a);
Fq fq_pow(const Fq& a, Int e);
Fq fq_frobenius(const Fq& a, int s = 1);  // a^(p^s)
int fq_chi(const Fq& a);        // quadratic character, +-1; a != 0, p odd
// quadratic character of the subfield of order q_sub: a^((q_sub-1)/2);
// a must be a nonzero element of that subfield
int fq_chi_sub(const Fq& a, const Int& q_sub);
bool fq_is_square(const Fq& a);  // true for 0
std::string fq_str(const Fq& a);
uint64_t fq_hash(const Fq& a, uint64_t h);

// embed F_{p^s} into F_{p^m} for s | m: the generator maps to the canonical
// (lex-minimal) root of the small modulus in the big field
Fq fq_embed(const Fq& a, const FqF& big);

struct FqPoly {
    FqF F;
    std::vector<Fq> c;  // c[i] = coefficient of x^i; normalized (no leading zeros)
};

FqPoly poly_zero(const FqF& F);
FqPoly poly_from_coeffs(const FqF& F, std::vector<Fq> c);
FqPoly poly_from_ints(const FqF& F, const std::vector<Int>& c);
int poly_deg(const FqPoly& f);  // -1 for zero
bool poly_eq(const FqPoly& a, const FqPoly& b);
int poly_cmp(const FqPoly& a, const FqPoly& b);  // by degree, then coeffs low-to-high
FqPoly poly_add(const FqPoly& a, const FqPoly& b);
FqPoly poly_sub(const FqPoly& a, const FqPoly& b);
FqPoly poly_mul(const FqPoly& a, const FqPoly& b);
FqPoly poly_scale(const Fq& s, const FqPoly& a);
void poly_divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
FqPoly poly_mod(const FqPoly& a, const FqPoly& b);
FqPoly poly_div_exact(const FqPoly& a, const FqPoly& b);
FqPoly poly_gcd(FqPoly a, FqPoly b);  // monic
FqPoly poly_derivative(const FqPoly& a);
FqPoly poly_monic(const FqPoly& a);
Fq poly_eval(const FqPoly& a, const Fq& x);
FqPoly poly_pow_mod(const FqPoly& a, Int e, const FqPoly& m);
FqPoly poly_x(const FqF& F);
std::string poly_str(const FqPoly& a);
uint64_t poly_hash(const FqPoly& a);

Fq poly_resultant(const FqPoly& a, const FqPoly& b);
Fq poly_discriminant(const FqPoly& f);

struct FqFactor {
    FqPoly poly;  // monic irreducible
    int mult;
};
// deterministic: randomized splitting is seeded from (seed, hash of input);
// factors are sorted canonically
std::vector<FqFactor> factor_poly(const FqPoly& f, uint64_t seed);
bool poly_irreducible(const FqPoly& f);

// all roots of f in its coefficient field, canonically sorted
std::vector<Fq> poly_roots(const FqPoly& f, uint64_t seed);

// orbits of x -> x^(p^s) on a list of elements of one field
std::vector<std::vector<int>> frobenius_orbits(const std::vector<Fq>& elems, int s);

}  // namespace ktl
