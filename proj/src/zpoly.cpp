#include "ktl/zpoly.hpp"

#include <algorithm>
#include <sstream>

namespace ktl {

ZPoly zp_trim(ZPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int zp_deg(const ZPoly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Int zp_lc(const ZPoly& f) {
    int d = zp_deg(f);
    return d < 0 ? Int(0) : f[d];
}

bool zp_eq(const ZPoly& a, const ZPoly& b) {
    int da = zp_deg(a), db = zp_deg(b);
    if (da != db) return false;
    for (int i = 0; i <= da; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return zp_trim(std::move(c));
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) { return zp_add(a, zp_neg(b)); }

ZPoly zp_neg(const ZPoly& a) {
    ZPoly c = a;
    for (auto& v : c) v = -v;
    return zp_trim(std::move(c));
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (zp_deg(a) < 0 || zp_deg(b) < 0) return {};
    ZPoly c(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return zp_trim(std::move(c));
}

ZPoly zp_scale(const Int& s, const ZPoly& a) {
    ZPoly c = a;
    for (auto& v : c) v *= s;
    return zp_trim(std::move(c));
}

ZPoly zp_derivative(const ZPoly& a) {
    ZPoly c;
    for (size_t i = 1; i < a.size(); ++i) c.push_back(Int((long)i) * a[i]);
    return zp_trim(std::move(c));
}

Int zp_eval(const ZPoly& a, const Int& x) {
    Int r = 0;
    for (int i = (int)a.size() - 1; i >= 0; --i) r = r * x + a[i];
    return r;
}

mpq_class zp_eval_q(const ZPoly& a, const mpq_class& x) {
    mpq_class r = 0;
    for (int i = (int)a.size() - 1; i >= 0; --i) r = r * x + mpq_class(a[i]);
    return r;
}

ZPoly zp_compose_affine(const ZPoly& f, const Int& a, const Int& b) {
    ZPoly lin = zp_trim({b, a});
    ZPoly r;
    for (int i = (int)f.size() - 1; i >= 0; --i) r = zp_add(zp_mul(r, lin), ZPoly{f[i]});
    return r;
}

Int zp_content(const ZPoly& a) {
    Int g = 0;
    for (const Int& v : a) {
        Int av = abs(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), av.get_mpz_t());
    }
    return g;
}

ZPoly zp_primitive(const ZPoly& a) {
    Int c = zp_content(a);
    if (c == 0) return {};
    ZPoly r = a;
    for (auto& v : r) v /= c;
    return zp_trim(std::move(r));
}

std::string zp_str(const ZPoly& a) {
    std::ostringstream os;
    os << "[";
    int d = zp_deg(a);
    for (int i = 0; i <= d; ++i) os << (i ? "," : "") << a[i].get_str();
    os << "]";
    return os.str();
}

Int zp_resultant(const ZPoly& a, const ZPoly& b) {
    int m = zp_deg(a), n = zp_deg(b);
    if (m < 0 || n < 0) return 0;
    if (m + n == 0) return 1;
    MatZ S = MatZ::Zero(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) S(i, i + j) = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) S(n + i, i + j) = b[n - j];
    return det(S);
}

Int zp_disc(const ZPoly& f) {
    int d = zp_deg(f);
    if (d < 1) throw domain_error("zp_disc: degree < 1");
    Int r = zp_resultant(f, zp_derivative(f));
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.get_mpz_t(), f[d].get_mpz_t());
    if (rem != 0) throw check_error("zp_disc: leading coefficient does not divide resultant");
    if ((d % 4) == 2 || (d % 4) == 3) q = -q;  // (-1)^(d(d-1)/2)
    return q;
}

FqPoly zp_reduce(const ZPoly& f, const FqF& F) { return poly_from_ints(F, f); }

// ------------------------------------------------------------------- Sturm

namespace {

using QP = std::vector<mpq_class>;

int qp_deg(const QP& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

QP qp_rem(QP a, const QP& b) {
    int db = qp_deg(b);
    for (int da = qp_deg(a); da >= db; da = qp_deg(a)) {
        mpq_class fac = a[da] / b[db];
        for (int i = 0; i <= db; ++i) a[da - db + i] -= fac * b[i];
        a[da] = 0;
    }
    a.resize(std::max(qp_deg(a) + 1, 0));
    return a;
}

// positive rescale so the leading coefficient has absolute value 1; sign data
// in the chain is unchanged
void qp_normalize(QP& f) {
    int d = qp_deg(f);
    if (d < 0) return;
    mpq_class s = abs(f[d]);
    for (auto& v : f) v /= s;
}

std::vector<QP> sturm_chain(const ZPoly& f) {
    QP p0;
    for (const Int& v : f) p0.emplace_back(v);
    p0.resize(std::max(qp_deg(p0) + 1, 0));
    std::vector<QP> chain;
    chain.push_back(p0);
    QP p1;
    for (size_t i = 1; i < p0.size(); ++i) p1.push_back(mpq_class((long)i) * p0[i]);
    if (qp_deg(p1) < 0) return chain;
    qp_normalize(p1);
    chain.push_back(p1);
    for (;;) {
        QP r = qp_rem(chain[chain.size() - 2], chain.back());
        if (qp_deg(r) < 0) break;
        for (auto& v : r) v = -v;
        qp_normalize(r);
        chain.push_back(std::move(r));
    }
    return chain;
}

int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int var_at_pos_inf(const std::vector<QP>& chain) {
    std::vector<int> s;
    for (const QP& p : chain) s.push_back(sgn(p[qp_deg(p)]));
    return variations(s);
}

int var_at_neg_inf(const std::vector<QP>& chain) {
    std::vector<int> s;
    for (const QP& p : chain) {
        int d = qp_deg(p);
        int v = sgn(p[d]);
        if (d % 2) v = -v;
        s.push_back(v);
    }
    return variations(s);
}

int var_at(const std::vector<QP>& chain, const mpq_class& t) {
    std::vector<int> s;
    for (const QP& p : chain) {
        mpq_class r = 0;
        for (int i = qp_deg(p); i >= 0; --i) r = r * t + p[i];
        s.push_back(sgn(r));
    }
    return s.empty() ? 0 : variations(s);
}

}  // namespace

int zp_real_roots(const ZPoly& f) {
    int d = zp_deg(f);
    if (d < 0) throw domain_error("zp_real_roots: zero polynomial");
    if (d == 0) return 0;
    auto chain = sturm_chain(f);
    return var_at_neg_inf(chain) - var_at_pos_inf(chain);
}

int zp_real_roots_between(const ZPoly& f, const mpq_class& a, const mpq_class& b) {
    int d = zp_deg(f);
    if (d < 0) throw domain_error("zp_real_roots_between: zero polynomial");
    if (a >= b) throw domain_error("zp_real_roots_between: empty interval");
    if (zp_eval_q(f, a) == 0 || zp_eval_q(f, b) == 0)
        throw domain_error("zp_real_roots_between: root at an endpoint");
    if (d == 0) return 0;
    auto chain = sturm_chain(f);
    return var_at(chain, a) - var_at(chain, b);
}

// ------------------------------------------------------- integer helpers

int v_p(const Int& a, const Int& p) {
    if (a == 0) throw domain_error("v_p: zero");
    if (p < 2) throw domain_error("v_p: bad modulus");
    Int r;
    return (int)mpz_remove(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
}

Int unit_part(const Int& a, const Int& p) {
    if (a == 0) throw domain_error("unit_part: zero");
    Int r;
    mpz_remove(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

bool is_square_int(const Int& a) {
    if (a < 0) return false;
    return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

Int squarefree_part(const Int& a) {
    if (a == 0) throw domain_error("squarefree_part: zero");
    std::vector<std::pair<Int, int>> fs;
    if (!factor_int(a, fs))
        throw check_error("squarefree_part: could not factor");
    Int s = a < 0 ? -1 : 1;
    for (auto& [p, e] : fs)
        if (e % 2) s *= p;
    return s;
}

bool factor_int(const Int& a, std::vector<std::pair<Int, int>>& out, long bound) {
    out.clear();
    if (a == 0) throw domain_error("factor_int: zero");
    Int rem = abs(a);
    auto strip = [&](const Int& d) {
        if (mpz_divisible_p(rem.get_mpz_t(), d.get_mpz_t())) {
            int e = v_p(rem, d);
            rem = unit_part(rem, d);
            out.emplace_back(d, e);
        }
    };
    strip(2);
    for (long d = 3; d <= bound; d += 2) {
        if (rem == 1) break;
        // once d^2 exceeds the cofactor, the cofactor is prime
        if (mpz_cmp_ui(rem.get_mpz_t(), (unsigned long)d * (unsigned long)d) < 0) break;
        if (mpz_divisible_ui_p(rem.get_mpz_t(), (unsigned long)d)) strip(Int(d));
    }
    if (rem == 1) return true;
    if (mpz_probab_prime_p(rem.get_mpz_t(), 40)) {
        out.emplace_back(rem, 1);
        return true;
    }
    return false;
}

}  // namespace ktl
