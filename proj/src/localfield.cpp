#include "ktl/localfield.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "ktl/rng.hpp"

namespace ktl {

namespace {

Int md(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

Int int_pow(long p, int e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return r;
}

void check_ring(const RElem& a, const RElem& b) {
    if (a.R->p != b.R->p || a.R->n != b.R->n || a.R->N != b.R->N)
        throw domain_error("RElem: mixed rings");
}

}  // namespace

LRing make_ring(long p, int resdeg, int precision) {
    if (precision < 1 || precision > 4096) throw domain_error("make_ring: bad precision");
    auto R = std::make_shared<LocalRing>();
    R->k = make_field(p, resdeg);  // validates p and resdeg
    R->p = p;
    R->n = resdeg;
    R->N = precision;
    R->pN = int_pow(p, precision);
    R->modulus = ZPoly(R->k->mod.begin(), R->k->mod.end());
    return R;
}

RElem r_zero(const LRing& R) { return RElem{R, std::vector<Int>(R->n, Int(0))}; }

RElem r_one(const LRing& R) {
    RElem e = r_zero(R);
    e.c[0] = 1;
    return e;
}

RElem r_from_int(const LRing& R, const Int& a) {
    RElem e = r_zero(R);
    e.c[0] = md(a, R->pN);
    return e;
}

RElem r_lift(const LRing& R, const Fq& a) {
    if (a.F->p != R->p || a.F->n != R->n) throw domain_error("r_lift: wrong residue field");
    RElem e = r_zero(R);
    for (int i = 0; i < R->n; ++i) e.c[i] = a.c[i];
    return e;
}

bool r_eq(const RElem& a, const RElem& b) {
    check_ring(a, b);
    return a.c == b.c;
}

bool r_is_zero(const RElem& a) {
    for (const Int& v : a.c)
        if (v != 0) return false;
    return true;
}

RElem r_add(const RElem& a, const RElem& b) {
    check_ring(a, b);
    RElem e = r_zero(a.R);
    for (int i = 0; i < a.R->n; ++i) e.c[i] = md(a.c[i] + b.c[i], a.R->pN);
    return e;
}

RElem r_sub(const RElem& a, const RElem& b) {
    check_ring(a, b);
    RElem e = r_zero(a.R);
    for (int i = 0; i < a.R->n; ++i) e.c[i] = md(a.c[i] - b.c[i], a.R->pN);
    return e;
}

RElem r_neg(const RElem& a) {
    RElem e = r_zero(a.R);
    for (int i = 0; i < a.R->n; ++i) e.c[i] = md(-a.c[i], a.R->pN);
    return e;
}

RElem r_mul(const RElem& a, const RElem& b) {
    check_ring(a, b);
    const auto& R = a.R;
    int n = R->n;
    std::vector<Int> raw(2 * n - 1, Int(0));
    for (int i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < n; ++j) raw[i + j] += a.c[i] * b.c[j];
    }
    for (int i = 2 * n - 2; i >= n; --i) {
        Int c = md(raw[i], R->pN);
        if (c == 0) continue;
        for (int j = 0; j < n; ++j) raw[i - n + j] -= c * R->modulus[j];
    }
    RElem e = r_zero(R);
    for (int i = 0; i < n; ++i) e.c[i] = md(raw[i], R->pN);
    return e;
}

int r_val(const RElem& a) {
    int best = a.R->N;
    Int p(a.R->p);
    for (const Int& v : a.c) {
        if (v == 0) continue;
        best = std::min(best, v_p(v, p));
    }
    return best;
}

bool r_is_unit(const RElem& a) { return r_val(a) == 0; }

RElem r_inv(const RElem& a) {
    if (!r_is_unit(a)) throw domain_error("r_inv: not a unit");
    RElem x = r_lift(a.R, fq_inv(r_residue(a)));
    RElem two = r_from_int(a.R, 2);
    for (int prec = 1; prec < a.R->N; prec *= 2) x = r_mul(x, r_sub(two, r_mul(a, x)));
    if (!r_eq(r_mul(a, x), r_one(a.R))) throw check_error("r_inv: newton iteration failed");
    return x;
}

RElem r_div_p(const RElem& a, int k) {
    if (k < 0 || k > a.R->N) throw domain_error("r_div_p: bad exponent");
    Int pk = int_pow(a.R->p, k);
    RElem e = r_zero(a.R);
    for (int i = 0; i < a.R->n; ++i) {
        if (a.c[i] % pk != 0) throw domain_error("r_div_p: not divisible");
        e.c[i] = a.c[i] / pk;
    }
    return e;
}

Fq r_residue(const RElem& a) {
    Fq e;
    e.F = a.R->k;
    e.c.resize(a.R->n);
    for (int i = 0; i < a.R->n; ++i) e.c[i] = mpz_fdiv_ui(a.c[i].get_mpz_t(), (unsigned long)a.R->p);
    return e;
}

std::string r_str(const RElem& a) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < a.R->n; ++i) os << (i ? "," : "") << a.c[i].get_str();
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- polynomials

RPoly rp_from_zpoly(const LRing& R, const ZPoly& f) {
    RPoly out;
    for (const Int& v : f) out.push_back(r_from_int(R, v));
    return out;
}

int rp_deg(const RPoly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (!r_is_zero(f[i])) return i;
    return -1;
}

bool rp_eq(const RPoly& a, const RPoly& b) {
    int da = rp_deg(a), db = rp_deg(b);
    if (da != db) return false;
    for (int i = 0; i <= da; ++i)
        if (!r_eq(a[i], b[i])) return false;
    return true;
}

namespace {

const LRing& rp_ring(const RPoly& f) {
    if (f.empty()) throw domain_error("RPoly: empty polynomial has no ring");
    return f[0].R;
}

}  // namespace

RPoly rp_add(const RPoly& a, const RPoly& b) {
    const LRing& R = rp_ring(a.empty() ? b : a);
    RPoly c(std::max(a.size(), b.size()), r_zero(R));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = r_add(c[i], b[i]);
    return c;
}

RPoly rp_sub(const RPoly& a, const RPoly& b) {
    const LRing& R = rp_ring(a.empty() ? b : a);
    RPoly c(std::max(a.size(), b.size()), r_zero(R));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = r_sub(c[i], b[i]);
    return c;
}

RPoly rp_mul(const RPoly& a, const RPoly& b) {
    const LRing& R = rp_ring(a.empty() ? b : a);
    if (a.empty() || b.empty()) return {};
    RPoly c(a.size() + b.size() - 1, r_zero(R));
    for (size_t i = 0; i < a.size(); ++i) {
        if (r_is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = r_add(c[i + j], r_mul(a[i], b[j]));
    }
    return c;
}

RPoly rp_scale(const RElem& s, const RPoly& a) {
    RPoly c = a;
    for (auto& v : c) v = r_mul(s, v);
    return c;
}

void rp_divmod(const RPoly& a, const RPoly& b, RPoly& q, RPoly& r) {
    int db = rp_deg(b);
    if (db < 0) throw domain_error("rp_divmod: division by zero");
    if (!r_is_unit(b[db])) throw domain_error("rp_divmod: leading coefficient not a unit");
    const LRing& R = rp_ring(b);
    RElem binv = r_inv(b[db]);
    r = a;
    int da = rp_deg(r);
    q.assign(std::max(0, da - db + 1), r_zero(R));
    while ((da = rp_deg(r)) >= db) {
        RElem f = r_mul(r[da], binv);
        q[da - db] = r_add(q[da - db], f);
        for (int i = 0; i <= db; ++i) r[da - db + i] = r_sub(r[da - db + i], r_mul(f, b[i]));
    }
}

FqPoly rp_residue(const RPoly& f) {
    if (f.empty()) throw domain_error("rp_residue: empty polynomial");
    const LRing& R = rp_ring(f);
    std::vector<Fq> c;
    for (const RElem& v : f) c.push_back(r_residue(v));
    return poly_from_coeffs(R->k, std::move(c));
}

std::string rp_str(const RPoly& f) {
    std::ostringstream os;
    os << "deg" << rp_deg(f) << ":";
    for (const RElem& v : f) os << r_str(v);
    return os.str();
}

// ------------------------------------------------- division-free determinant

namespace {

// Berkowitz: characteristic polynomial coefficients without division, valid
// over a ring with zero divisors
RElem berkowitz_det(const std::vector<std::vector<RElem>>& A, const LRing& R) {
    int s = (int)A.size();
    if (s == 0) return r_one(R);
    std::vector<RElem> V = {r_one(R), r_neg(A[0][0])};
    for (int r = 2; r <= s; ++r) {
        // Toeplitz column: 1, -a, -Row C, -Row M C, -Row M^2 C, ...
        std::vector<RElem> tcol(r + 1, r_zero(R));
        tcol[0] = r_one(R);
        tcol[1] = r_neg(A[r - 1][r - 1]);
        std::vector<RElem> w(r - 1, r_zero(R));
        for (int i = 0; i < r - 1; ++i) w[i] = A[i][r - 1];
        for (int k = 2; k <= r; ++k) {
            RElem dot = r_zero(R);
            for (int i = 0; i < r - 1; ++i) dot = r_add(dot, r_mul(A[r - 1][i], w[i]));
            tcol[k] = r_neg(dot);
            if (k < r) {
                std::vector<RElem> w2(r - 1, r_zero(R));
                for (int i = 0; i < r - 1; ++i)
                    for (int j = 0; j < r - 1; ++j) w2[i] = r_add(w2[i], r_mul(A[i][j], w[j]));
                w = std::move(w2);
            }
        }
        std::vector<RElem> V2(r + 1, r_zero(R));
        for (int i = 0; i <= r; ++i)
            for (int j = 0; j < (int)V.size(); ++j)
                if (i - j >= 0 && i - j <= r) V2[i] = r_add(V2[i], r_mul(tcol[i - j], V[j]));
        V = std::move(V2);
    }
    RElem det = V.back();
    if (s % 2) det = r_neg(det);
    return det;
}

}  // namespace

RElem rp_resultant(const RPoly& a, const RPoly& b) {
    const LRing& R = rp_ring(a.empty() ? b : a);
    int m = rp_deg(a), n = rp_deg(b);
    if (m < 0 || n < 0) return r_zero(R);
    if (m + n == 0) return r_one(R);
    std::vector<std::vector<RElem>> S(m + n, std::vector<RElem>(m + n, r_zero(R)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) S[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) S[n + i][i + j] = b[n - j];
    return berkowitz_det(S, R);
}

RElem rp_disc(const RPoly& f) {
    int d = rp_deg(f);
    if (d < 1) throw domain_error("rp_disc: degree < 1");
    if (!r_is_unit(f[d])) throw domain_error("rp_disc: leading coefficient not a unit");
    const LRing& R = rp_ring(f);
    RPoly fp;
    for (int i = 1; i <= d; ++i) fp.push_back(r_mul(r_from_int(R, i), f[i]));
    RElem r = r_mul(rp_resultant(f, fp), r_inv(f[d]));
    if ((d % 4) == 2 || (d % 4) == 3) r = r_neg(r);  // (-1)^(d(d-1)/2)
    return r;
}

// ------------------------------------------------------------------- Hensel

namespace {

void fq_ext_gcd(const FqPoly& a0, const FqPoly& b0, FqPoly& g, FqPoly& s, FqPoly& t) {
    const FqF& F = a0.F;
    FqPoly a = a0, b = b0;
    FqPoly s0 = poly_from_ints(F, {Int(1)}), s1 = poly_zero(F);
    FqPoly t0 = poly_zero(F), t1 = poly_from_ints(F, {Int(1)});
    while (poly_deg(b) >= 0) {
        FqPoly q, r;
        poly_divmod(a, b, q, r);
        a = b;
        b = r;
        FqPoly sn = poly_sub(s0, poly_mul(q, s1));
        s0 = s1;
        s1 = sn;
        FqPoly tn = poly_sub(t0, poly_mul(q, t1));
        t0 = t1;
        t1 = tn;
    }
    g = a;
    s = s0;
    t = t0;
}

FqPoly poly_pow_small(const FqPoly& a, int e) {
    FqPoly r = poly_from_ints(a.F, {Int(1)});
    for (int i = 0; i < e; ++i) r = poly_mul(r, a);
    return r;
}

RPoly rp_lift_poly(const LRing& R, const FqPoly& f) {
    RPoly out;
    for (const Fq& v : f.c) out.push_back(r_lift(R, v));
    return out;
}

// residue of E / p^m; every coefficient of E must be divisible by p^m
FqPoly rp_div_p_residue(const RPoly& E, int m) {
    const LRing& R = rp_ring(E);
    Int pm = int_pow(R->p, m);
    std::vector<Fq> c;
    for (const RElem& e : E) {
        Fq v;
        v.F = R->k;
        v.c.resize(R->n);
        for (int i = 0; i < R->n; ++i) {
            if (e.c[i] % pm != 0) throw check_error("hensel: precision ladder broken");
            Int q = e.c[i] / pm;
            v.c[i] = mpz_fdiv_ui(q.get_mpz_t(), (unsigned long)R->p);
        }
        c.push_back(v);
    }
    return poly_from_coeffs(R->k, std::move(c));
}

// split a monic G with reduction Abar * Bbar (coprime) as G = A * B mod p^N
void hensel_pair(const LRing& R, const RPoly& G, const FqPoly& Abar, const FqPoly& Bbar, RPoly& A,
                 RPoly& B) {
    FqPoly g, S, T;
    fq_ext_gcd(Abar, Bbar, g, S, T);
    if (poly_deg(g) != 0) throw check_error("hensel: residue factors not coprime");
    Fq ginv = fq_inv(g.c[0]);
    S = poly_scale(ginv, S);
    T = poly_scale(ginv, T);
    // normalize deg S < deg Bbar (then deg T < deg Abar automatically)
    {
        FqPoly q, r;
        poly_divmod(S, Bbar, q, r);
        S = r;
        T = poly_add(T, poly_mul(q, Abar));
    }
    A = rp_lift_poly(R, Abar);
    B = rp_lift_poly(R, Bbar);
    for (int m = 1; m < R->N; ++m) {
        FqPoly ebar = rp_div_p_residue(rp_sub(G, rp_mul(A, B)), m);
        if (poly_deg(ebar) < 0) continue;
        // solve alpha*Bbar + beta*Abar = ebar with deg alpha < deg Abar,
        // deg beta < deg Bbar, then correct at level p^m
        FqPoly q, alpha;
        poly_divmod(poly_mul(T, ebar), Abar, q, alpha);
        FqPoly beta = poly_add(poly_mul(S, ebar), poly_mul(q, Bbar));
        if (poly_deg(alpha) >= poly_deg(Abar) || poly_deg(beta) >= poly_deg(Bbar))
            throw check_error("hensel: correction degree bound violated");
        Int pm = int_pow(R->p, m);
        for (int i = 0; i <= poly_deg(alpha); ++i)
            for (int j = 0; j < R->n; ++j)
                A[i].c[j] = md(A[i].c[j] + pm * alpha.c[i].c[j], R->pN);
        for (int i = 0; i <= poly_deg(beta); ++i)
            for (int j = 0; j < R->n; ++j)
                B[i].c[j] = md(B[i].c[j] + pm * beta.c[i].c[j], R->pN);
    }
    if (!rp_eq(rp_mul(A, B), G)) throw check_error("hensel: lift verification failed");
}

}  // namespace

std::vector<HenselBlock> hensel_blocks(const LRing& R, const ZPoly& f, uint64_t seed) {
    RPoly F = rp_from_zpoly(R, f);
    int d = rp_deg(F);
    if (d < 0) throw domain_error("hensel_blocks: zero polynomial");
    if (d != zp_deg(f)) throw domain_error("hensel_blocks: degree drop at this precision");
    F.resize(d + 1, r_zero(R));
    RElem lc = F[d];
    if (!r_is_unit(lc)) throw domain_error("hensel_blocks: leading coefficient is not a unit");
    RPoly G = rp_scale(r_inv(lc), F);
    auto factors = factor_poly(rp_residue(G), seed);
    std::vector<HenselBlock> out;
    RPoly rest = G;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i + 1 == factors.size()) {
            out.push_back({factors[i].poly, factors[i].mult, rest});
            break;
        }
        FqPoly A0 = poly_pow_small(factors[i].poly, factors[i].mult);
        FqPoly B0 = poly_div_exact(rp_residue(rest), A0);
        RPoly A, B;
        hensel_pair(R, rest, A0, B0, A, B);
        out.push_back({factors[i].poly, factors[i].mult, A});
        rest = B;
    }
    RPoly prod = {lc};
    for (const auto& blk : out) prod = rp_mul(prod, blk.B);
    if (!rp_eq(prod, F)) throw check_error("hensel_blocks: product certificate failed");
    for (const auto& blk : out)
        if (!poly_eq(rp_residue(blk.B), poly_pow_small(blk.h, blk.e)))
            throw check_error("hensel_blocks: residue certificate failed");
    return out;
}

// --------------------------------------------------------------- symbols

Fq least_nonsquare(const FqF& k) {
    if (k->p == 2) throw domain_error("least_nonsquare: characteristic 2");
    std::vector<long> c(k->n, 0);
    for (;;) {
        Fq e;
        e.F = k;
        e.c = c;
        if (fq_chi(e) == -1) return e;
        int i = k->n - 1;
        while (i >= 0) {
            if (++c[i] < k->p) break;
            c[i] = 0;
            --i;
        }
        if (i < 0) throw check_error("least_nonsquare: none found");
    }
}

Int unram_nonsquare_int(const LRing& R) {
    if (R->p == 2) throw domain_error("unram_nonsquare_int: characteristic 2");
    if (R->n % 2 == 0)
        throw domain_error("unram_nonsquare_int: even residue degree has no integer nonsquare unit");
    for (long r = 2; r < R->p * R->p; ++r) {
        if (fq_chi(fq_from_int(R->k, r)) == -1) return Int(r);
    }
    throw check_error("unram_nonsquare_int: none found");
}

int hilbert_tame(int va, const Fq& ua, int vb, const Fq& ub) {
    if (ua.F->p == 2) throw domain_error("hilbert_tame: characteristic 2");
    if (fq_is_zero(ua) || fq_is_zero(ub)) throw domain_error("hilbert_tame: zero unit residue");
    Fq r = fq_mul(fq_pow(ua, Int(vb)), fq_pow(ub, Int(-va)));
    if ((va & 1) && (vb & 1)) r = fq_neg(r);
    return fq_chi(r);
}

namespace {

int v_q(const mpq_class& a, const Int& p) {
    if (a == 0) throw domain_error("v_q: zero");
    Int num(a.get_num()), den(a.get_den());
    int v = num == 0 ? 0 : v_p(num, p);
    return v - v_p(den, p);
}

// residue of the unit part of a at p, in F_p
Fq residue_unit(const FqF& F, const mpq_class& a) {
    Int p(F->p);
    Int num = unit_part(Int(a.get_num()), p);
    Int den = unit_part(Int(a.get_den()), p);
    return fq_mul(fq_from_int(F, num), fq_inv(fq_from_int(F, den)));
}

// odd part of a modulo 8, in {1,3,5,7}
long odd_part_mod8(const mpq_class& a) {
    Int num = unit_part(Int(a.get_num()), Int(2));
    Int den = unit_part(Int(a.get_den()), Int(2));
    // den^-1 = den mod 8 for odd den
    Int u = md(num * den, Int(8));
    return u.get_si();
}

}  // namespace

int hilbert_R(const mpq_class& a, const mpq_class& b) {
    if (a == 0 || b == 0) throw domain_error("hilbert_R: zero argument");
    return (a < 0 && b < 0) ? -1 : 1;
}

int hilbert_Q2(const mpq_class& a, const mpq_class& b) {
    if (a == 0 || b == 0) throw domain_error("hilbert_Q2: zero argument");
    int alpha = v_q(a, Int(2)), beta = v_q(b, Int(2));
    long u = odd_part_mod8(a), v = odd_part_mod8(b);
    int eps_u = (u == 3 || u == 7) ? 1 : 0;
    int eps_v = (v == 3 || v == 7) ? 1 : 0;
    int om_u = (u == 3 || u == 5) ? 1 : 0;
    int om_v = (v == 3 || v == 5) ? 1 : 0;
    int e = eps_u * eps_v + alpha * om_v + beta * om_u;
    return (e % 2) ? -1 : 1;
}

int hilbert_Qp(long p, const mpq_class& a, const mpq_class& b) {
    if (p == 2) return hilbert_Q2(a, b);
    if (a == 0 || b == 0) throw domain_error("hilbert_Qp: zero argument");
    FqF F = make_field(p, 1);
    return hilbert_tame(v_q(a, Int(p)), residue_unit(F, a), v_q(b, Int(p)), residue_unit(F, b));
}

int hilbert_Q_at(const mpq_class& a, const mpq_class& b, const Int& place) {
    if (place == 0) return hilbert_R(a, b);
    if (place == 2) return hilbert_Q2(a, b);
    if (place < 2 || mpz_probab_prime_p(place.get_mpz_t(), 30) == 0)
        throw domain_error("hilbert_Q_at: place must be 0 or a prime");
    return hilbert_Qp(place.get_si(), a, b);
}

int artin_symbol(const LRing& R, ExtType t, int va, const Fq& ua) {
    if (R->p == 2) throw domain_error("artin_symbol: characteristic 2");
    switch (t) {
        case ExtType::unram:
            return (va & 1) ? -1 : 1;
        case ExtType::ram_pi:
            return hilbert_tame(va, ua, 1, fq_one(R->k));
        case ExtType::ram_upi:
            return hilbert_tame(va, ua, 1, least_nonsquare(R->k));
    }
    throw domain_error("artin_symbol: bad extension type");
}

// ------------------------------------------------------------ conic oracle

bool conic_solvable_oracle(long p, int n, const std::vector<Int>& a, const std::vector<Int>& b) {
    if (n < 1 || n > 2) throw domain_error("conic_solvable_oracle: resdeg must be 1 or 2");
    const int m = (p == 2) ? 6 : 3;
    long M = 1;
    for (int i = 0; i < m; ++i) M *= p;
    std::vector<long> mod;
    if (n == 2) {
        FqF k = make_field(p, 2);
        mod.assign(k->mod.begin(), k->mod.end());
    }
    auto reduce_in = [&](const std::vector<Int>& v) {
        if ((int)v.size() != n) throw domain_error("conic_solvable_oracle: bad coefficient vector");
        std::vector<long> out(n, 0);
        for (int i = 0; i < n; ++i) out[i] = (long)mpz_fdiv_ui(v[i].get_mpz_t(), (unsigned long)M);
        return out;
    };
    auto val_ok = [&](const std::vector<long>& v) {
        for (long x : v)
            if (x % p) return true;  // valuation 0
        for (long x : v)
            if (x % (p * p)) return true;  // valuation 1
        return false;
    };
    std::vector<long> la = reduce_in(a), lb = reduce_in(b);
    if (!val_ok(la) || !val_ok(lb))
        throw domain_error("conic_solvable_oracle: coefficient valuation must be <= 1");

    auto emul = [&](const std::array<long, 2>& x, const std::array<long, 2>& y) {
        std::array<long, 2> r{0, 0};
        if (n == 1) {
            r[0] = (x[0] * y[0]) % M;
        } else {
            long c0 = x[0] * y[0], c1 = x[0] * y[1] + x[1] * y[0], c2 = x[1] * y[1];
            c2 %= M;
            c0 -= c2 * mod[0];
            c1 -= c2 * mod[1];
            r[0] = ((c0 % M) + M) % M;
            r[1] = ((c1 % M) + M) % M;
        }
        return r;
    };
    long count = 1;
    for (int i = 0; i < n; ++i) count *= M;
    auto unpack = [&](long idx) {
        std::array<long, 2> e{0, 0};
        e[0] = idx % M;
        if (n == 2) e[1] = idx / M;
        return e;
    };
    auto key = [&](const std::array<long, 2>& e) { return e[0] + (n == 2 ? M * e[1] : 0); };
    std::array<long, 2> ca{la[0], n == 2 ? la[1] : 0}, cb{lb[0], n == 2 ? lb[1] : 0};

    std::vector<long> ax2(count), by2(count);
    std::vector<uint8_t> unit(count);
    for (long i = 0; i < count; ++i) {
        auto x = unpack(i);
        unit[i] = (x[0] % p) || (x[1] % p);
        auto sq = emul(x, x);
        ax2[i] = key(emul(ca, sq));
        by2[i] = key(emul(cb, sq));
    }
    // flags: bit0 = value attained; bit1 = attained with x or y a unit
    std::vector<uint8_t> flags(count, 0);
    auto addv = [&](long k1, long k2) {
        auto e1 = unpack(k1), e2 = unpack(k2);
        std::array<long, 2> s{(e1[0] + e2[0]) % M, (e1[1] + e2[1]) % M};
        return key(s);
    };
    for (long i = 0; i < count; ++i)
        for (long j = 0; j < count; ++j) {
            long k = addv(ax2[i], by2[j]);
            flags[k] |= (unit[i] || unit[j]) ? 3 : 1;
        }
    for (long z = 0; z < count; ++z) {
        auto zz = emul(unpack(z), unpack(z));
        long k = key(zz);
        if (flags[k] & 2) return true;
        if (unit[z] && (flags[k] & 1)) return true;
    }
    return false;
}

}  // namespace ktl
