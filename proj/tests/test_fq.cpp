#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <vector>

#include "ktl/fq.hpp"
#include "ktl/rng.hpp"

using namespace ktl;

namespace {

Fq rand_elem(Rng& rng, const FqF& F) {
    Fq e;
    e.F = F;
    e.c.resize(F->n);
    for (int j = 0; j < F->n; ++j) e.c[j] = (long)rng.below((uint64_t)F->p);
    return e;
}

FqPoly rand_poly(Rng& rng, const FqF& F, int deg) {
    std::vector<Fq> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rand_elem(rng, F));
    while ((int)c.size() > 1 && fq_is_zero(c.back())) c.pop_back();
    return poly_from_coeffs(F, std::move(c));
}

FqPoly rand_monic(Rng& rng, const FqF& F, int deg) {
    std::vector<Fq> c;
    for (int i = 0; i < deg; ++i) c.push_back(rand_elem(rng, F));
    c.push_back(fq_one(F));
    return poly_from_coeffs(F, std::move(c));
}

// all field elements, in fq_cmp order
std::vector<Fq> all_elems(const FqF& F) {
    std::vector<Fq> out;
    std::vector<long> c(F->n, 0);
    for (;;) {
        Fq e;
        e.F = F;
        e.c = c;
        out.push_back(e);
        int i = F->n - 1;
        while (i >= 0) {
            if (++c[i] < F->p) break;
            c[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    std::sort(out.begin(), out.end(), [](const Fq& a, const Fq& b) { return fq_cmp(a, b) < 0; });
    return out;
}

// all monic polynomials of exact degree deg
std::vector<FqPoly> all_monic(const FqF& F, int deg) {
    std::vector<FqPoly> out;
    std::vector<Fq> elems = all_elems(F);
    std::vector<int> idx(deg, 0);
    for (;;) {
        std::vector<Fq> c;
        for (int i = 0; i < deg; ++i) c.push_back(elems[idx[i]]);
        c.push_back(fq_one(F));
        out.push_back(poly_from_coeffs(F, std::move(c)));
        int i = deg - 1;
        while (i >= 0) {
            if (++idx[i] < (int)elems.size()) break;
            idx[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

// trial-division irreducibility for small degrees
bool irreducible_bruteforce(const FqPoly& f) {
    int d = poly_deg(f);
    if (d < 1) return false;
    for (int e = 1; 2 * e <= d; ++e)
        for (const FqPoly& g : all_monic(f.F, e)) {
            FqPoly q, r;
            poly_divmod(f, g, q, r);
            if (poly_deg(r) < 0) return false;
        }
    return true;
}

// independent resultant oracle: determinant of the Sylvester matrix by
// gaussian elimination over the field
Fq sylvester_resultant(const FqPoly& a, const FqPoly& b) {
    const FqF& F = a.F;
    int m = poly_deg(a), n = poly_deg(b);
    if (m < 0 || n < 0) return fq_zero(F);
    int N = m + n;
    if (N == 0) return fq_one(F);
    std::vector<std::vector<Fq>> M(N, std::vector<Fq>(N, fq_zero(F)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = a.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = b.c[n - j];
    Fq det = fq_one(F);
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (!fq_is_zero(M[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) return fq_zero(F);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = fq_neg(det);
        }
        det = fq_mul(det, M[col][col]);
        Fq inv = fq_inv(M[col][col]);
        for (int r = col + 1; r < N; ++r) {
            if (fq_is_zero(M[r][col])) continue;
            Fq fac = fq_mul(M[r][col], inv);
            for (int c2 = col; c2 < N; ++c2) M[r][c2] = fq_sub(M[r][c2], fq_mul(fac, M[col][c2]));
        }
    }
    return det;
}

FqPoly refactor_product(const std::vector<FqFactor>& fs, const Fq& lead) {
    FqPoly prod = poly_from_coeffs(lead.F, {lead});
    for (const auto& fa : fs)
        for (int i = 0; i < fa.mult; ++i) prod = poly_mul(prod, fa.poly);
    return prod;
}

}  // namespace

TEST_CASE("make_field produces frozen canonical moduli") {
    CHECK(make_field(2, 1)->mod == std::vector<long>{0, 1});
    CHECK(make_field(7, 1)->mod == std::vector<long>{0, 1});
    CHECK(make_field(3, 2)->mod == std::vector<long>{1, 0, 1});        // x^2+1
    CHECK(make_field(2, 2)->mod == std::vector<long>{1, 1, 1});        // x^2+x+1
    CHECK(make_field(2, 3)->mod == std::vector<long>{1, 0, 1, 1});     // x^3+x^2+1
    CHECK(make_field(3, 3)->mod == std::vector<long>{1, 0, 2, 1});     // x^3+2x^2+1
    CHECK(make_field(5, 2)->q == 25);
    CHECK(make_field(3, 4)->q == 81);
    CHECK_THROWS_AS(make_field(4, 2), domain_error);
    CHECK_THROWS_AS(make_field(3, 0), domain_error);
}

TEST_CASE("make_field modulus is the lex-minimal irreducible (exhaustive)") {
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 4}, {3, 2}, {5, 2}, {7, 2}, {2, 5}}) {
        FqF F = make_field(p, n);
        FqF Fp = make_field(p, 1);
        bool found = false;
        for (const FqPoly& cand : all_monic(Fp, n)) {
            if (fq_is_zero(cand.c[0])) continue;  // divisible by x
            if (irreducible_bruteforce(cand)) {
                std::vector<long> mod;
                for (const Fq& co : cand.c) mod.push_back(co.c[0]);
                CHECK(mod == F->mod);
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("field arithmetic axioms on random elements") {
    Rng rng(101);
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 1}, {2, 4}, {3, 2}, {5, 1}, {7, 3}, {13, 2}}) {
        FqF F = make_field(p, n);
        for (int it = 0; it < 60; ++it) {
            Fq a = rand_elem(rng, F), b = rand_elem(rng, F), c = rand_elem(rng, F);
            CHECK(fq_eq(fq_add(a, b), fq_add(b, a)));
            CHECK(fq_eq(fq_mul(a, b), fq_mul(b, a)));
            CHECK(fq_eq(fq_mul(a, fq_add(b, c)), fq_add(fq_mul(a, b), fq_mul(a, c))));
            CHECK(fq_eq(fq_sub(fq_add(a, b), b), a));
            if (!fq_is_zero(a)) {
                CHECK(fq_eq(fq_mul(a, fq_inv(a)), fq_one(F)));
                CHECK(fq_eq(fq_pow(a, F->q - 1), fq_one(F)));
            }
            CHECK(fq_eq(fq_pow(a, F->q), a));  // q-power map is identity
        }
    }
}

TEST_CASE("frobenius is a field homomorphism with the right fixed field") {
    Rng rng(102);
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 4}, {3, 2}, {5, 3}}) {
        FqF F = make_field(p, n);
        for (int it = 0; it < 50; ++it) {
            Fq a = rand_elem(rng, F), b = rand_elem(rng, F);
            CHECK(fq_eq(fq_frobenius(fq_add(a, b)), fq_add(fq_frobenius(a), fq_frobenius(b))));
            CHECK(fq_eq(fq_frobenius(fq_mul(a, b)), fq_mul(fq_frobenius(a), fq_frobenius(b))));
            CHECK(fq_eq(fq_frobenius(a, n), a));
        }
        int fixed = 0;
        for (const Fq& a : all_elems(F))
            if (fq_eq(fq_frobenius(a), a)) ++fixed;
        CHECK(fixed == p);  // prime subfield
    }
}

TEST_CASE("quadratic character: counts, multiplicativity, square-set oracle") {
    for (auto [p, n] : std::vector<std::pair<long, int>>{{3, 1}, {3, 2}, {7, 1}, {5, 2}, {11, 1}}) {
        FqF F = make_field(p, n);
        std::vector<Fq> elems = all_elems(F);
        // explicit square set
        std::vector<Fq> squares;
        for (const Fq& a : elems) squares.push_back(fq_mul(a, a));
        auto in_squares = [&](const Fq& a) {
            for (const Fq& s : squares)
                if (fq_eq(s, a)) return true;
            return false;
        };
        long nsq = 0;
        for (const Fq& a : elems) {
            CHECK(fq_is_square(a) == in_squares(a));
            if (!fq_is_zero(a)) {
                CHECK((fq_chi(a) == 1) == in_squares(a));
                if (fq_is_square(a)) ++nsq;
            }
        }
        CHECK(Int(2 * nsq) == F->q - 1);  // half the units are squares
        Rng rng(103);
        for (int it = 0; it < 40; ++it) {
            Fq a = rand_elem(rng, F), b = rand_elem(rng, F);
            if (fq_is_zero(a) || fq_is_zero(b)) continue;
            CHECK(fq_chi(fq_mul(a, b)) == fq_chi(a) * fq_chi(b));
        }
    }
    FqF F2 = make_field(2, 1);
    CHECK_THROWS_AS(fq_chi(fq_one(F2)), domain_error);
    CHECK(fq_is_square(fq_one(F2)));  // every element of F_{2^n} is a square
}

TEST_CASE("embedding into an extension is an injective homomorphism") {
    Rng rng(104);
    for (auto [pn, big] : std::vector<std::pair<std::pair<long, int>, int>>{
             {{3, 1}, 2}, {{2, 2}, 4}, {{3, 2}, 4}, {{5, 1}, 3}, {{2, 3}, 6}}) {
        FqF S = make_field(pn.first, pn.second);
        FqF B = make_field(pn.first, big);
        std::vector<Fq> elems = all_elems(S);
        for (const Fq& a : elems)
            for (const Fq& b : elems) {
                CHECK(fq_eq(fq_embed(fq_add(a, b), B), fq_add(fq_embed(a, B), fq_embed(b, B))));
                CHECK(fq_eq(fq_embed(fq_mul(a, b), B), fq_mul(fq_embed(a, B), fq_embed(b, B))));
                if (!fq_eq(a, b)) CHECK(!fq_eq(fq_embed(a, B), fq_embed(b, B)));
            }
        // embedded image lies in the fixed field of frobenius^s
        for (const Fq& a : elems) CHECK(fq_eq(fq_frobenius(fq_embed(a, B), S->n), fq_embed(a, B)));
        (void)rng;
    }
    CHECK_THROWS_AS(fq_embed(fq_one(make_field(3, 2)), make_field(3, 3)), domain_error);
}

TEST_CASE("polynomial division: a = qb + r with deg r < deg b") {
    Rng rng(105);
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        FqF F = make_field(p, n);
        for (int it = 0; it < 80; ++it) {
            FqPoly a = rand_poly(rng, F, (int)rng.range(0, 9));
            FqPoly b = rand_poly(rng, F, (int)rng.range(0, 6));
            if (poly_deg(b) < 0) continue;
            FqPoly q, r;
            poly_divmod(a, b, q, r);
            CHECK(poly_deg(r) < poly_deg(b));
            CHECK(poly_eq(a, poly_add(poly_mul(q, b), r)));
        }
    }
}

TEST_CASE("gcd divides both inputs and is attained") {
    Rng rng(106);
    FqF F = make_field(3, 1);
    for (int it = 0; it < 60; ++it) {
        FqPoly f = rand_monic(rng, F, (int)rng.range(1, 4));
        FqPoly g = rand_poly(rng, F, (int)rng.range(0, 4));
        FqPoly h = rand_poly(rng, F, (int)rng.range(0, 4));
        if (poly_deg(g) < 0 || poly_deg(h) < 0) continue;
        FqPoly d = poly_gcd(poly_mul(f, g), poly_mul(f, h));
        // f divides the gcd
        FqPoly q, r;
        poly_divmod(d, f, q, r);
        CHECK(poly_deg(r) < 0);
        // the gcd divides both products
        poly_divmod(poly_mul(f, g), d, q, r);
        CHECK(poly_deg(r) < 0);
        poly_divmod(poly_mul(f, h), d, q, r);
        CHECK(poly_deg(r) < 0);
    }
}

TEST_CASE("pow_mod matches naive modular exponentiation") {
    Rng rng(107);
    FqF F = make_field(5, 1);
    for (int it = 0; it < 40; ++it) {
        FqPoly m = rand_monic(rng, F, (int)rng.range(1, 5));
        FqPoly a = rand_poly(rng, F, (int)rng.range(0, 6));
        long e = (long)rng.range(0, 12);
        FqPoly naive = poly_from_ints(F, {Int(1)});
        for (long i = 0; i < e; ++i) naive = poly_mod(poly_mul(naive, a), m);
        CHECK(poly_eq(poly_pow_mod(a, Int(e), m), naive));
    }
}

TEST_CASE("resultant agrees with the Sylvester determinant oracle") {
    Rng rng(108);
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}, {7, 1}, {5, 2}}) {
        FqF F = make_field(p, n);
        for (int it = 0; it < 60; ++it) {
            FqPoly a = rand_poly(rng, F, (int)rng.range(0, 7));
            FqPoly b = rand_poly(rng, F, (int)rng.range(0, 7));
            if (poly_deg(a) < 0 || poly_deg(b) < 0) continue;
            CHECK(fq_eq(poly_resultant(a, b), sylvester_resultant(a, b)));
        }
    }
}

TEST_CASE("resultant of split polynomials is the product over root pairs") {
    FqF F = make_field(7, 1);
    Rng rng(109);
    for (int it = 0; it < 30; ++it) {
        // a = la * prod (x - ai), b = lb * prod (x - bj)
        int da = (int)rng.range(1, 4), db = (int)rng.range(1, 4);
        std::vector<Fq> ra, rb;
        Fq la = rand_elem(rng, F), lb = rand_elem(rng, F);
        while (fq_is_zero(la)) la = rand_elem(rng, F);
        while (fq_is_zero(lb)) lb = rand_elem(rng, F);
        FqPoly a = poly_from_coeffs(F, {la});
        FqPoly b = poly_from_coeffs(F, {lb});
        for (int i = 0; i < da; ++i) {
            Fq r = rand_elem(rng, F);
            ra.push_back(r);
            a = poly_mul(a, poly_from_coeffs(F, {fq_neg(r), fq_one(F)}));
        }
        for (int j = 0; j < db; ++j) {
            Fq r = rand_elem(rng, F);
            rb.push_back(r);
            b = poly_mul(b, poly_from_coeffs(F, {fq_neg(r), fq_one(F)}));
        }
        Fq expect = fq_mul(fq_pow(la, Int(db)), fq_pow(lb, Int(da)));
        for (const Fq& x : ra)
            for (const Fq& y : rb) expect = fq_mul(expect, fq_sub(x, y));
        CHECK(fq_eq(poly_resultant(a, b), expect));
    }
}

TEST_CASE("discriminant closed forms for quadratics and depressed cubics") {
    Rng rng(110);
    for (long p : {7L, 13L}) {
        FqF F = make_field(p, 1);
        for (int it = 0; it < 30; ++it) {
            Fq b = rand_elem(rng, F), c = rand_elem(rng, F);
            FqPoly f = poly_from_coeffs(F, {c, b, fq_one(F)});
            Fq expect = fq_sub(fq_mul(b, b), fq_mul(fq_from_int(F, 4), c));
            CHECK(fq_eq(poly_discriminant(f), expect));
            Fq pp = rand_elem(rng, F), qq = rand_elem(rng, F);
            FqPoly g = poly_from_coeffs(F, {qq, pp, fq_zero(F), fq_one(F)});
            Fq e3 = fq_neg(fq_add(fq_mul(fq_from_int(F, 4), fq_mul(pp, fq_mul(pp, pp))),
                                  fq_mul(fq_from_int(F, 27), fq_mul(qq, qq))));
            CHECK(fq_eq(poly_discriminant(g), e3));
        }
    }
    // repeated root => zero discriminant
    FqF F5 = make_field(5, 1);
    FqPoly sq = poly_mul(poly_from_ints(F5, {Int(1), Int(1)}), poly_from_ints(F5, {Int(1), Int(1)}));
    CHECK(fq_is_zero(poly_discriminant(sq)));
}

TEST_CASE("irreducibility test agrees with trial division (exhaustive small cases)") {
    for (auto [p, n, dmax] : std::vector<std::tuple<long, int, int>>{{2, 1, 6}, {3, 1, 4}, {5, 1, 3}, {2, 2, 3}}) {
        FqF F = make_field(p, n);
        for (int d = 1; d <= dmax; ++d)
            for (const FqPoly& f : all_monic(F, d))
                CHECK(poly_irreducible(f) == irreducible_bruteforce(f));
    }
}

TEST_CASE("factorization round-trips and yields sorted irreducible factors") {
    Rng rng(111);
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 3}, {3, 3}, {5, 2}}) {
        FqF F = make_field(p, n);
        for (int deg = 1; deg <= 10; ++deg) {
            for (int rep = 0; rep < 6; ++rep) {
                FqPoly f = rand_poly(rng, F, deg);
                if (poly_deg(f) < 1) continue;
                auto fs = factor_poly(f, 7);
                int total = 0;
                for (size_t i = 0; i < fs.size(); ++i) {
                    CHECK(poly_irreducible(fs[i].poly));
                    CHECK(fq_eq(fs[i].poly.c.back(), fq_one(F)));
                    CHECK(fs[i].mult >= 1);
                    if (i + 1 < fs.size()) CHECK(poly_cmp(fs[i].poly, fs[i + 1].poly) < 0);
                    total += fs[i].mult * poly_deg(fs[i].poly);
                }
                CHECK(total == poly_deg(f));
                CHECK(poly_eq(refactor_product(fs, f.c.back()), f));
            }
        }
    }
}

TEST_CASE("factorization handles inseparable shapes (p-th powers)") {
    Rng rng(112);
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        FqF F = make_field(p, n);
        for (int it = 0; it < 20; ++it) {
            FqPoly g = rand_monic(rng, F, (int)rng.range(1, 3));
            // f = g^p * h with h separable-ish random
            FqPoly f = poly_from_ints(F, {Int(1)});
            for (long i = 0; i < p; ++i) f = poly_mul(f, g);
            FqPoly h = rand_monic(rng, F, (int)rng.range(1, 3));
            f = poly_mul(f, h);
            auto fs = factor_poly(f, 9);
            CHECK(poly_eq(refactor_product(fs, fq_one(F)), f));
            int total = 0;
            for (auto& fa : fs) total += fa.mult * poly_deg(fa.poly);
            CHECK(total == poly_deg(f));
        }
    }
}

TEST_CASE("frozen factorizations") {
    FqF F2 = make_field(2, 1);
    auto fs = factor_poly(poly_from_ints(F2, {Int(1), Int(0), Int(1)}), 0);  // x^2+1 = (x+1)^2
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].mult == 2);
    CHECK(poly_eq(fs[0].poly, poly_from_ints(F2, {Int(1), Int(1)})));

    // x^4+x^2+1 = (x^2+x+1)^2 over F2
    fs = factor_poly(poly_from_ints(F2, {Int(1), Int(0), Int(1), Int(0), Int(1)}), 0);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].mult == 2);
    CHECK(poly_eq(fs[0].poly, poly_from_ints(F2, {Int(1), Int(1), Int(1)})));

    // x^9 - x over F3: the three linear and three quadratic monic irreducibles
    FqF F3 = make_field(3, 1);
    std::vector<Int> c(10, Int(0));
    c[1] = -1;
    c[9] = 1;
    fs = factor_poly(poly_from_ints(F3, c), 0);
    REQUIRE(fs.size() == 6);
    int nlin = 0, nquad = 0;
    for (auto& fa : fs) {
        CHECK(fa.mult == 1);
        if (poly_deg(fa.poly) == 1) ++nlin;
        if (poly_deg(fa.poly) == 2) ++nquad;
    }
    CHECK(nlin == 3);
    CHECK(nquad == 3);
}

TEST_CASE("factorization and roots are deterministic for a fixed seed") {
    Rng rng(113);
    FqF F = make_field(5, 2);
    for (int it = 0; it < 10; ++it) {
        FqPoly f = rand_poly(rng, F, 8);
        if (poly_deg(f) < 1) continue;
        auto a = factor_poly(f, 42), b = factor_poly(f, 42);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(poly_eq(a[i].poly, b[i].poly));
            CHECK(a[i].mult == b[i].mult);
        }
        auto r1 = poly_roots(f, 42), r2 = poly_roots(f, 42);
        REQUIRE(r1.size() == r2.size());
        for (size_t i = 0; i < r1.size(); ++i) CHECK(fq_eq(r1[i], r2[i]));
    }
}

TEST_CASE("roots: exactly the evaluation zeros, sorted") {
    Rng rng(114);
    for (auto [p, n] : std::vector<std::pair<long, int>>{{3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
        FqF F = make_field(p, n);
        for (int it = 0; it < 25; ++it) {
            FqPoly f = rand_poly(rng, F, (int)rng.range(1, 7));
            if (poly_deg(f) < 1) continue;
            auto roots = poly_roots(f, 3);
            std::vector<Fq> expect;
            for (const Fq& a : all_elems(F))
                if (fq_is_zero(poly_eval(f, a))) expect.push_back(a);
            REQUIRE(roots.size() == expect.size());
            for (size_t i = 0; i < roots.size(); ++i) CHECK(fq_eq(roots[i], expect[i]));
            for (size_t i = 0; i + 1 < roots.size(); ++i) CHECK(fq_cmp(roots[i], roots[i + 1]) < 0);
        }
    }
}

TEST_CASE("frobenius orbits of the roots of an irreducible polynomial") {
    // roots of a degree-4 irreducible over F2 inside F16: one orbit of size 4
    FqF F16 = make_field(2, 4);
    FqPoly m = poly_from_ints(F16, {Int(1), Int(1), Int(0), Int(0), Int(1)});  // x^4+x+1
    auto roots = poly_roots(m, 5);
    REQUIRE(roots.size() == 4);
    auto orb1 = frobenius_orbits(roots, 1);
    REQUIRE(orb1.size() == 1);
    CHECK(orb1[0].size() == 4);
    // under frobenius^2 the 4-cycle splits into two 2-cycles
    auto orb2 = frobenius_orbits(roots, 2);
    REQUIRE(orb2.size() == 2);
    CHECK(orb2[0].size() == 2);
    CHECK(orb2[1].size() == 2);
    // a non-stable set is rejected
    FqPoly quad = poly_from_ints(F16, {Int(1), Int(1), Int(1)});
    auto qroots = poly_roots(quad, 5);  // roots of x^2+x+1 in F16
    REQUIRE(qroots.size() == 2);
    std::vector<Fq> bad = {qroots[0]};
    bool threw = false;
    try {
        frobenius_orbits(bad, 1);
    } catch (const domain_error&) {
        threw = true;
    }
    CHECK(threw);
}
