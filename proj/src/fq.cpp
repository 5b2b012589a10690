#include "ktl/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "ktl/rng.hpp"

namespace ktl {

namespace {

long norm_mod(long x, long p) {
    x %= p;
    if (x < 0) x += p;
    return x;
}

bool is_prime_small(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// reduce a raw convolution (length <= 2n-1) by the monic modulus
std::vector<long> reduce_raw(std::vector<long long> raw, const FqField& K) {
    const int n = K.n;
    const long p = K.p;
    for (auto& v : raw) v %= p;
    for (int i = (int)raw.size() - 1; i >= n; --i) {
        long long c = norm_mod((long)(raw[i] % p), p);
        if (c == 0) continue;
        for (int j = 0; j < n; ++j) raw[i - n + j] -= c * K.mod[j];
        raw[i] = 0;
        if (i - n >= 0)
            for (int j = std::max(0, i - n); j < i; ++j) raw[j] %= p;
    }
    std::vector<long> out(n);
    for (int i = 0; i < n; ++i) out[i] = norm_mod((long)(raw[i] % p), p);
    return out;
}

Fq make_elem(const FqF& F, std::vector<long> c) {
    Fq e;
    e.F = F;
    e.c = std::move(c);
    return e;
}

void check_same(const Fq& a, const Fq& b) {
    if (a.F->p != b.F->p || a.F->n != b.F->n)
        throw domain_error("Fq: mixed fields");
}

bool modulus_irreducible(long p, const std::vector<long>& mod);

FqF build_field(long p, int n, std::vector<long> mod) {
    auto F = std::make_shared<FqField>();
    F->p = p;
    F->n = n;
    F->mod = std::move(mod);
    mpz_ui_pow_ui(F->q.get_mpz_t(), (unsigned long)p, (unsigned long)n);
    return F;
}

}  // namespace

FqF make_field(long p, int n) {
    if (!is_prime_small(p) || p >= (1L << 20)) throw domain_error("make_field: bad p");
    if (n < 1 || n > 64) throw domain_error("make_field: bad n");
    static std::map<std::pair<long, int>, FqF> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({p, n});
        if (it != cache.end()) return it->second;
    }
    std::vector<long> mod(n + 1, 0);
    mod[n] = 1;
    if (n > 1) {
        // enumerate (c0,...,c_{n-1}) in increasing lex order (c0 most
        // significant); c0 = 0 would make the candidate divisible by x
        std::vector<long> d(n, 0);
        d[0] = 1;
        for (;;) {
            for (int i = 0; i < n; ++i) mod[i] = d[i];
            if (modulus_irreducible(p, mod)) break;
            int i = n - 1;
            while (i >= 0) {
                if (++d[i] < p) break;
                d[i] = 0;
                --i;
            }
            if (i < 0) throw check_error("make_field: no irreducible found");
        }
    }
    FqF F = build_field(p, n, mod);
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(std::make_pair(p, n), F);
    return F;
}

Fq fq_zero(const FqF& F) { return make_elem(F, std::vector<long>(F->n, 0)); }

Fq fq_one(const FqF& F) {
    std::vector<long> c(F->n, 0);
    if (F->n >= 1) c[0] = F->p > 1 ? 1 : 0;
    return make_elem(F, std::move(c));
}

Fq fq_from_int(const FqF& F, const Int& a) {
    Int r = a % F->p;
    if (r < 0) r += F->p;
    std::vector<long> c(F->n, 0);
    c[0] = r.get_si();
    return make_elem(F, std::move(c));
}

bool fq_is_zero(const Fq& a) {
    for (long v : a.c)
        if (v) return false;
    return true;
}

bool fq_eq(const Fq& a, const Fq& b) {
    check_same(a, b);
    return a.c == b.c;
}

int fq_cmp(const Fq& a, const Fq& b) {
    check_same(a, b);
    for (int i = 0; i < a.F->n; ++i) {
        if (a.c[i] < b.c[i]) return -1;
        if (a.c[i] > b.c[i]) return 1;
    }
    return 0;
}

Fq fq_add(const Fq& a, const Fq& b) {
    check_same(a, b);
    std::vector<long> c(a.F->n);
    for (int i = 0; i < a.F->n; ++i) c[i] = norm_mod(a.c[i] + b.c[i], a.F->p);
    return make_elem(a.F, std::move(c));
}

Fq fq_sub(const Fq& a, const Fq& b) {
    check_same(a, b);
    std::vector<long> c(a.F->n);
    for (int i = 0; i < a.F->n; ++i) c[i] = norm_mod(a.c[i] - b.c[i], a.F->p);
    return make_elem(a.F, std::move(c));
}

Fq fq_neg(const Fq& a) {
    std::vector<long> c(a.F->n);
    for (int i = 0; i < a.F->n; ++i) c[i] = norm_mod(-a.c[i], a.F->p);
    return make_elem(a.F, std::move(c));
}

Fq fq_mul(const Fq& a, const Fq& b) {
    check_same(a, b);
    const int n = a.F->n;
    std::vector<long long> raw(2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < n; ++j) raw[i + j] += (long long)a.c[i] * b.c[j];
    }
    return make_elem(a.F, reduce_raw(std::move(raw), *a.F));
}

Fq fq_pow(const Fq& a, Int e) {
    if (e < 0) {
        return fq_pow(fq_inv(a), -e);
    }
    Fq r = fq_one(a.F), base = a;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) r = fq_mul(r, base);
        if (i + 1 < bits) base = fq_mul(base, base);
    }
    return r;
}

Fq fq_inv(const Fq& a) {
    if (fq_is_zero(a)) throw domain_error("fq_inv: zero");
    return fq_pow(a, a.F->q - 2);
}

Fq fq_frobenius(const Fq& a, int s) {
    Int e;
    mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)a.F->p, (unsigned long)s);
    return fq_pow(a, e);
}

int fq_chi(const Fq& a) {
    if (a.F->p == 2) throw domain_error("fq_chi: characteristic 2");
    if (fq_is_zero(a)) return 0;
    Fq r = fq_pow(a, (a.F->q - 1) / 2);
    if (fq_eq(r, fq_one(a.F))) return 1;
    return -1;
}

int fq_chi_sub(const Fq& a, const Int& q_sub) {
    if (a.F->p == 2) throw domain_error("fq_chi_sub: characteristic 2");
    if (fq_is_zero(a)) throw domain_error("fq_chi_sub: zero element");
    Fq r = fq_pow(a, (q_sub - 1) / 2);
    if (fq_eq(r, fq_one(a.F))) return 1;
    if (fq_eq(r, fq_neg(fq_one(a.F)))) return -1;
    throw domain_error("fq_chi_sub: element not in the subfield");
}

bool fq_is_square(const Fq& a) {
    if (fq_is_zero(a)) return true;
    if (a.F->p == 2) return true;  // frobenius is surjective
    return fq_chi(a) == 1;
}

std::string fq_str(const Fq& a) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < a.F->n; ++i) os << (i ? "," : "") << a.c[i];
    os << "]";
    return os.str();
}

uint64_t fq_hash(const Fq& a, uint64_t h) {
    h = fnv1a(&a.F->p, sizeof(a.F->p), h);
    for (long v : a.c) h = fnv1a(&v, sizeof(v), h);
    return h;
}

Fq fq_embed(const Fq& a, const FqF& big) {
    const FqF& small = a.F;
    if (small->p != big->p || big->n % small->n != 0)
        throw domain_error("fq_embed: no embedding");
    if (small->n == big->n) return make_elem(big, a.c);
    if (small->n == 1) {
        std::vector<long> c(big->n, 0);
        c[0] = a.c[0];
        return make_elem(big, std::move(c));
    }
    static std::map<std::tuple<long, int, int>, Fq> cache;
    static std::mutex mu;
    Fq gen = fq_zero(big);
    bool found = false;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({small->p, small->n, big->n});
        if (it != cache.end()) { gen = it->second; found = true; }
    }
    if (!found) {
        // canonical root of the small modulus in the big field
        FqPoly m = poly_from_ints(big, std::vector<Int>(small->mod.begin(), small->mod.end()));
        auto roots = poly_roots(m, 0);
        if (roots.empty()) throw check_error("fq_embed: modulus has no root upstairs");
        gen = roots.front();
        std::lock_guard<std::mutex> lk(mu);
        cache.emplace(std::make_tuple(small->p, small->n, big->n), gen);
    }
    Fq acc = fq_zero(big), pw = fq_one(big);
    for (int i = 0; i < small->n; ++i) {
        acc = fq_add(acc, fq_mul(fq_from_int(big, a.c[i]), pw));
        pw = fq_mul(pw, gen);
    }
    return acc;
}

// ---------------------------------------------------------------- polynomials

namespace {

void normalize(FqPoly& f) {
    while (!f.c.empty() && fq_is_zero(f.c.back())) f.c.pop_back();
}

Fq lc(const FqPoly& f) { return f.c.back(); }

}  // namespace

FqPoly poly_zero(const FqF& F) {
    FqPoly f;
    f.F = F;
    return f;
}

FqPoly poly_from_coeffs(const FqF& F, std::vector<Fq> c) {
    FqPoly f;
    f.F = F;
    f.c = std::move(c);
    normalize(f);
    return f;
}

FqPoly poly_from_ints(const FqF& F, const std::vector<Int>& c) {
    std::vector<Fq> v;
    v.reserve(c.size());
    for (const Int& x : c) v.push_back(fq_from_int(F, x));
    return poly_from_coeffs(F, std::move(v));
}

int poly_deg(const FqPoly& f) { return (int)f.c.size() - 1; }

bool poly_eq(const FqPoly& a, const FqPoly& b) {
    if (poly_deg(a) != poly_deg(b)) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!fq_eq(a.c[i], b.c[i])) return false;
    return true;
}

int poly_cmp(const FqPoly& a, const FqPoly& b) {
    if (poly_deg(a) != poly_deg(b)) return poly_deg(a) < poly_deg(b) ? -1 : 1;
    for (size_t i = 0; i < a.c.size(); ++i) {
        int c = fq_cmp(a.c[i], b.c[i]);
        if (c) return c;
    }
    return 0;
}

FqPoly poly_add(const FqPoly& a, const FqPoly& b) {
    std::vector<Fq> c;
    size_t n = std::max(a.c.size(), b.c.size());
    for (size_t i = 0; i < n; ++i) {
        Fq v = i < a.c.size() ? a.c[i] : fq_zero(a.F);
        if (i < b.c.size()) v = fq_add(v, b.c[i]);
        c.push_back(v);
    }
    return poly_from_coeffs(a.F, std::move(c));
}

FqPoly poly_sub(const FqPoly& a, const FqPoly& b) {
    return poly_add(a, poly_scale(fq_from_int(a.F, -1), b));
}

FqPoly poly_mul(const FqPoly& a, const FqPoly& b) {
    if (poly_deg(a) < 0 || poly_deg(b) < 0) return poly_zero(a.F);
    std::vector<Fq> c(a.c.size() + b.c.size() - 1, fq_zero(a.F));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (fq_is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = fq_add(c[i + j], fq_mul(a.c[i], b.c[j]));
    }
    return poly_from_coeffs(a.F, std::move(c));
}

FqPoly poly_scale(const Fq& s, const FqPoly& a) {
    std::vector<Fq> c;
    for (auto& v : a.c) c.push_back(fq_mul(s, v));
    return poly_from_coeffs(a.F, std::move(c));
}

void poly_divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
    if (poly_deg(b) < 0) throw domain_error("poly_divmod: division by zero");
    r = a;
    q = poly_zero(a.F);
    q.c.assign(std::max(0, poly_deg(a) - poly_deg(b) + 1), fq_zero(a.F));
    Fq binv = fq_inv(lc(b));
    while (poly_deg(r) >= poly_deg(b)) {
        int k = poly_deg(r) - poly_deg(b);
        Fq f = fq_mul(lc(r), binv);
        q.c[k] = fq_add(q.c[k], f);
        for (int i = 0; i <= poly_deg(b); ++i)
            r.c[i + k] = fq_sub(r.c[i + k], fq_mul(f, b.c[i]));
        normalize(r);
    }
    normalize(q);
}

FqPoly poly_mod(const FqPoly& a, const FqPoly& b) {
    FqPoly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

FqPoly poly_div_exact(const FqPoly& a, const FqPoly& b) {
    FqPoly q, r;
    poly_divmod(a, b, q, r);
    if (poly_deg(r) >= 0) throw check_error("poly_div_exact: not divisible");
    return q;
}

FqPoly poly_gcd(FqPoly a, FqPoly b) {
    while (poly_deg(b) >= 0) {
        FqPoly r = poly_mod(a, b);
        a = b;
        b = r;
    }
    if (poly_deg(a) >= 0) a = poly_monic(a);
    return a;
}

FqPoly poly_derivative(const FqPoly& a) {
    std::vector<Fq> c;
    for (size_t i = 1; i < a.c.size(); ++i)
        c.push_back(fq_mul(fq_from_int(a.F, (long)i), a.c[i]));
    return poly_from_coeffs(a.F, std::move(c));
}

FqPoly poly_monic(const FqPoly& a) {
    if (poly_deg(a) < 0) return a;
    return poly_scale(fq_inv(lc(a)), a);
}

Fq poly_eval(const FqPoly& a, const Fq& x) {
    Fq r = fq_zero(x.F);
    for (int i = poly_deg(a); i >= 0; --i) r = fq_add(fq_mul(r, x), fq_embed(a.c[i], x.F));
    return r;
}

FqPoly poly_pow_mod(const FqPoly& a, Int e, const FqPoly& m) {
    FqPoly r = poly_from_ints(a.F, {Int(1)});
    FqPoly base = poly_mod(a, m);
    if (e < 0) throw domain_error("poly_pow_mod: negative exponent");
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) r = poly_mod(poly_mul(r, base), m);
        if (i + 1 < bits) base = poly_mod(poly_mul(base, base), m);
    }
    return r;
}

FqPoly poly_x(const FqF& F) { return poly_from_ints(F, {Int(0), Int(1)}); }

std::string poly_str(const FqPoly& a) {
    std::ostringstream os;
    os << "deg" << poly_deg(a) << ":";
    for (auto& v : a.c) os << fq_str(v);
    return os.str();
}

uint64_t poly_hash(const FqPoly& a) {
    uint64_t h = fnv1a(&a.F->p, sizeof(a.F->p));
    h = fnv1a(&a.F->n, sizeof(a.F->n), h);
    for (auto& v : a.c) h = fq_hash(v, h);
    return h;
}

Fq poly_resultant(const FqPoly& a0, const FqPoly& b0) {
    const FqF& F = a0.F;
    FqPoly A = a0, B = b0;
    if (poly_deg(A) < 0 || poly_deg(B) < 0) return fq_zero(F);
    Fq res = fq_one(F);
    int sign = 1;
    while (poly_deg(B) > 0) {
        FqPoly R = poly_mod(A, B);
        int dA = poly_deg(A), dB = poly_deg(B), dR = poly_deg(R);
        if (dR < 0) return fq_zero(F);  // positive-degree common factor
        if ((dA & 1) && (dB & 1)) sign = -sign;
        res = fq_mul(res, fq_pow(lc(B), Int(dA - dR)));
        A = B;
        B = R;
    }
    // B is a nonzero constant
    res = fq_mul(res, fq_pow(B.c[0], Int(poly_deg(A))));
    if (sign < 0) res = fq_neg(res);
    return res;
}

Fq poly_discriminant(const FqPoly& f) {
    int d = poly_deg(f);
    if (d < 1) throw domain_error("poly_discriminant: degree < 1");
    FqPoly fp = poly_derivative(f);
    if (poly_deg(fp) < 0) return fq_zero(f.F);
    Fq r = poly_resultant(f, fp);
    r = fq_mul(r, fq_inv(lc(f)));
    if ((d % 4) == 2 || (d % 4) == 3) r = fq_neg(r);  // (-1)^(d(d-1)/2)
    return r;
}

// ---------------------------------------------------------- factorization

namespace {

FqPoly pth_root(const FqPoly& f) {
    const FqF& F = f.F;
    std::vector<Fq> c;
    for (size_t i = 0; i < f.c.size(); i += F->p) {
        // p-th root in F_{p^n}: frobenius applied n-1 times
        c.push_back(F->n > 1 ? fq_frobenius(f.c[i], F->n - 1) : f.c[i]);
    }
    return poly_from_coeffs(F, std::move(c));
}

// (monic squarefree part, multiplicity) pairs
std::vector<std::pair<FqPoly, int>> squarefree_decomp(const FqPoly& f0) {
    std::vector<std::pair<FqPoly, int>> out;
    FqPoly f = poly_monic(f0);
    if (poly_deg(f) <= 0) return out;
    FqPoly fp = poly_derivative(f);
    if (poly_deg(fp) < 0) {
        for (auto& [h, e] : squarefree_decomp(pth_root(f)))
            out.emplace_back(h, e * (int)f.F->p);
        return out;
    }
    FqPoly t = poly_gcd(f, fp);
    FqPoly v = poly_div_exact(f, t);
    int i = 1;
    while (poly_deg(v) > 0) {
        FqPoly w = poly_gcd(t, v);
        FqPoly h = poly_div_exact(v, w);
        if (poly_deg(h) > 0) out.emplace_back(poly_monic(h), i);
        v = w;
        t = poly_div_exact(t, w);
        ++i;
    }
    if (poly_deg(t) > 0)
        for (auto& [h, e] : squarefree_decomp(pth_root(t)))
            out.emplace_back(h, e * (int)f.F->p);
    return out;
}

FqPoly random_poly(Rng& rng, const FqF& F, int deg) {
    std::vector<Fq> c;
    for (int i = 0; i <= deg; ++i) {
        std::vector<long> cc(F->n);
        for (int j = 0; j < F->n; ++j) cc[j] = (long)rng.below((uint64_t)F->p);
        Fq e;
        e.F = F;
        e.c = std::move(cc);
        c.push_back(e);
    }
    return poly_from_coeffs(F, std::move(c));
}

void equal_degree_split(const FqPoly& f, int d, Rng& rng, std::vector<FqPoly>& out) {
    if (poly_deg(f) == d) {
        out.push_back(poly_monic(f));
        return;
    }
    const FqF& F = f.F;
    for (;;) {
        FqPoly r = random_poly(rng, F, poly_deg(f) - 1);
        if (poly_deg(r) < 1) continue;
        FqPoly h;
        if (F->p == 2) {
            // trace splitter: sum of r^(2^i) over the absolute degree
            FqPoly acc = poly_mod(r, f), sq = poly_mod(r, f);
            for (int i = 1; i < F->n * d; ++i) {
                sq = poly_mod(poly_mul(sq, sq), f);
                acc = poly_add(acc, sq);
            }
            h = poly_gcd(acc, f);
        } else {
            Int qd;
            mpz_pow_ui(qd.get_mpz_t(), F->q.get_mpz_t(), (unsigned long)d);
            FqPoly s = poly_pow_mod(r, (qd - 1) / 2, f);
            h = poly_gcd(poly_sub(s, poly_from_ints(F, {Int(1)})), f);
        }
        if (poly_deg(h) > 0 && poly_deg(h) < poly_deg(f)) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split(poly_div_exact(f, h), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FqFactor> factor_poly(const FqPoly& f, uint64_t seed) {
    std::vector<FqFactor> out;
    if (poly_deg(f) <= 0) return out;
    Rng rng(splitmix64(seed) ^ poly_hash(f));
    for (auto& [sf, mult] : squarefree_decomp(f)) {
        // distinct-degree on the squarefree part
        FqPoly rest = sf;
        FqPoly h = poly_mod(poly_x(f.F), rest);
        int d = 0;
        while (poly_deg(rest) >= 2 * (d + 1)) {
            ++d;
            h = poly_pow_mod(h, f.F->q, rest);
            FqPoly g = poly_gcd(poly_sub(h, poly_x(f.F)), rest);
            if (poly_deg(g) > 0) {
                std::vector<FqPoly> parts;
                equal_degree_split(g, d, rng, parts);
                for (auto& pp : parts) out.push_back({pp, mult});
                rest = poly_div_exact(rest, g);
                h = poly_mod(h, rest);
            }
        }
        if (poly_deg(rest) > 0) out.push_back({poly_monic(rest), mult});
    }
    std::sort(out.begin(), out.end(), [](const FqFactor& a, const FqFactor& b) {
        int c = poly_cmp(a.poly, b.poly);
        if (c) return c < 0;
        return a.mult < b.mult;
    });
    return out;
}

namespace {

bool modulus_irreducible_impl(const FqPoly& f) {
    const FqF& F = f.F;
    int d = poly_deg(f);
    if (d < 1) return false;
    FqPoly x = poly_x(F);
    // x^(q^d) == x mod f, and gcd(x^(q^(d/l)) - x, f) == 1 for primes l | d
    std::vector<int> prime_div;
    int m = d;
    for (int l = 2; l * l <= m; ++l)
        if (m % l == 0) {
            prime_div.push_back(l);
            while (m % l == 0) m /= l;
        }
    if (m > 1) prime_div.push_back(m);
    std::vector<FqPoly> powers(d + 1, poly_zero(F));  // x^(q^i) mod f
    powers[0] = poly_mod(x, f);
    for (int i = 1; i <= d; ++i) powers[i] = poly_pow_mod(powers[i - 1], F->q, f);
    if (!poly_eq(powers[d], poly_mod(x, f))) return false;
    for (int l : prime_div) {
        FqPoly g = poly_gcd(poly_sub(powers[d / l], x), f);
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

bool modulus_irreducible(long p, const std::vector<long>& mod) {
    FqF Fp = make_field(p, 1);
    std::vector<Int> c(mod.begin(), mod.end());
    return modulus_irreducible_impl(poly_from_ints(Fp, c));
}

}  // namespace

bool poly_irreducible(const FqPoly& f) { return modulus_irreducible_impl(f); }

std::vector<Fq> poly_roots(const FqPoly& f, uint64_t seed) {
    const FqF& F = f.F;
    if (poly_deg(f) < 1) return {};
    // linear-factor part
    FqPoly xq = poly_pow_mod(poly_x(F), F->q, f);
    FqPoly lin = poly_gcd(poly_sub(xq, poly_x(F)), f);
    std::vector<Fq> roots;
    if (poly_deg(lin) >= 1) {
        Rng rng(splitmix64(seed ^ 0x9e1u) ^ poly_hash(f));
        std::vector<FqPoly> parts;
        equal_degree_split(lin, 1, rng, parts);
        for (auto& lp : parts) roots.push_back(fq_neg(lp.c[0]));
    }
    std::sort(roots.begin(), roots.end(), [](const Fq& a, const Fq& b) { return fq_cmp(a, b) < 0; });
    return roots;
}

std::vector<std::vector<int>> frobenius_orbits(const std::vector<Fq>& elems, int s) {
    std::vector<std::vector<int>> orbits;
    std::vector<char> seen(elems.size(), 0);
    auto find = [&](const Fq& x) -> int {
        for (size_t i = 0; i < elems.size(); ++i)
            if (fq_eq(elems[i], x)) return (int)i;
        return -1;
    };
    for (size_t i = 0; i < elems.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> orb;
        int j = (int)i;
        while (j >= 0 && !seen[j]) {
            seen[j] = 1;
            orb.push_back(j);
            j = find(fq_frobenius(elems[j], s));
        }
        if (j >= 0 && j != (int)i && !orb.empty()) {
            // landed inside another orbit: the input was not frobenius-stable
            throw domain_error("frobenius_orbits: set not stable under frobenius");
        }
        if (j < 0) throw domain_error("frobenius_orbits: set not stable under frobenius");
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

}  // namespace ktl
