#pragma once
#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "ktl/errors.hpp"
#include "ktl/fq.hpp"
#include "ktl/zpoly.hpp"

namespace ktl {

// O_K / p^N for K/Q_p unramified of residue degree n; integral basis
// 1, t, ..., t^(n-1) where t satisfies the canonical lift of the residue
// field modulus
struct LocalRing {
    long p = 0;
    int n = 0;
    int N = 0;      // precision exponent
    Int pN;         // p^N
    FqF k;          // residue field F_{p^n}
    ZPoly modulus;  // monic degree n, coefficients in [0, p)
};
using LRing = std::shared_ptr<const LocalRing>;

LRing make_ring(long p, int resdeg, int precision);

struct RElem {
    LRing R;
    std::vector<Int> c;  // length n, entries in [0, p^N)
};

RElem r_zero(const LRing& R);
RElem r_one(const LRing& R);
RElem r_from_int(const LRing& R, const Int& a);
RElem r_lift(const LRing& R, const Fq& a);  // canonical residue lift
bool r_eq(const RElem& a, const RElem& b);
bool r_is_zero(const RElem& a);
RElem r_add(const RElem& a, const RElem& b);
RElem r_sub(const RElem& a, const RElem& b);
RElem r_neg(const RElem& a);
RElem r_mul(const RElem& a, const RElem& b);
int r_val(const RElem& a);  // min coefficient valuation, capped at N
bool r_is_unit(const RElem& a);
RElem r_inv(const RElem& a);           // units only
RElem r_div_p(const RElem& a, int k);  // exact division by p^k; val >= k required
Fq r_residue(const RElem& a);
std::string r_str(const RElem& a);

using RPoly = std::vector<RElem>;  // c[i] = coefficient of x^i

RPoly rp_from_zpoly(const LRing& R, const ZPoly& f);
int rp_deg(const RPoly& f);  // ignores coefficients that vanish mod p^N
bool rp_eq(const RPoly& a, const RPoly& b);
RPoly rp_add(const RPoly& a, const RPoly& b);
RPoly rp_sub(const RPoly& a, const RPoly& b);
RPoly rp_mul(const RPoly& a, const RPoly& b);
RPoly rp_scale(const RElem& s, const RPoly& a);
void rp_divmod(const RPoly& a, const RPoly& b, RPoly& q, RPoly& r);  // unit lc(b)
FqPoly rp_residue(const RPoly& f);
std::string rp_str(const RPoly& f);

// resultant/discriminant over the ring, division-free (the ring has zero
// divisors, so fraction-free elimination is not available)
RElem rp_resultant(const RPoly& a, const RPoly& b);
RElem rp_disc(const RPoly& f);  // unit leading coefficient required

// coprime-block Hensel lifting: given f with unit leading coefficient,
// returns blocks with f = lc * prod B_i mod p^N, each B_i monic, and
// B_i mod p = h_i^{e_i} for the distinct irreducible factors h_i of the
// reduction of f/lc; the product identity is verified before returning
struct HenselBlock {
    FqPoly h;  // monic irreducible over the residue field
    int e;     // multiplicity in the reduction
    RPoly B;   // monic block over the ring
};
std::vector<HenselBlock> hensel_blocks(const LRing& R, const ZPoly& f, uint64_t seed);

// ---- quadratic symbols (odd residue characteristic) ----

// first nonsquare in the canonical element order; p odd
Fq least_nonsquare(const FqF& k);
// least positive integer that is a unit nonsquare of K; requires odd resdeg
Int unram_nonsquare_int(const LRing& R);

// tame Hilbert symbol (a,b)_K for a = pi^va * (unit with residue ua), p odd
int hilbert_tame(int va, const Fq& ua, int vb, const Fq& ub);
int hilbert_R(const mpq_class& a, const mpq_class& b);
int hilbert_Q2(const mpq_class& a, const mpq_class& b);
int hilbert_Qp(long p, const mpq_class& a, const mpq_class& b);  // odd p
// place = 0 for the real place, otherwise a prime
int hilbert_Q_at(const mpq_class& a, const mpq_class& b, const Int& place);

// the three quadratic extensions of K (p odd); the symbol is +1 exactly for
// norms from the extension
enum class ExtType { unram, ram_pi, ram_upi };
int artin_symbol(const LRing& R, ExtType t, int va, const Fq& ua);

// independent bounded-search oracle: decides whether z^2 = a x^2 + b y^2 has
// a nontrivial point over K (unramified of degree n over Q_p, n <= 2);
// coefficients are given on the basis 1..t^(n-1) and must have valuation <= 1
bool conic_solvable_oracle(long p, int n, const std::vector<Int>& a, const std::vector<Int>& b);

}  // namespace ktl
