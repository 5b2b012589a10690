#include "ktl/twist.hpp"

namespace ktl {

TwistFibreData classify_twist_orbits(const CubeFreeData& d, ExtType ext) {
    if (ext == ExtType::unram)
        throw inapplicable_error("classify_twist_orbits: ramified extension required");
    FqF k = make_field(d.p, d.resdeg);
    Fq uns = fq_embed(least_nonsquare(k), d.big);
    TwistFibreData t;
    t.g = d.g;
    t.W_orbit_count = (int)cf_w_orbit_sizes(d).size();
    for (auto& orb : d.double_orbits) {
        const DoubleRoot& rep = d.doubles[orb[0]];
        Int q_sub = cf_subfield_order(d, orb);
        Fq v = rep.vbar;
        if (ext == ExtType::ram_upi && rep.n % 2 == 1) v = fq_mul(v, uns);
        Fq probe = rep.n % 2 == 1 ? fq_neg(fq_mul(v, rep.tprime)) : v;
        TwistOrbit o;
        o.size = (int)orb.size();
        o.n = rep.n;
        o.large = fq_chi_sub(probe, q_sub) == -1;
        t.S_orbits.push_back(o);
    }
    return t;
}

TwistFibreData classify_twist_orbits(const HyperCurve& c, ExtType ext) {
    return classify_twist_orbits(extract_cube_free(c), ext);
}

int composite_B(const TwistFibreData& t) {
    int parity = t.W_orbit_count;
    for (auto& o : t.S_orbits) parity += o.large ? 1 : 0;
    return parity % 2 == 0 ? 1 : -1;
}

Int phi_bar_twist_order(int g, int l, int k_singles) {
    if (g < 2 || l < 0 || k_singles < 0 || l + k_singles != g + 1)
        throw domain_error("phi_bar_twist_order: inconsistent census");
    // spine, chains of length 1 per double root with two leaves each, and
    // 2k single-root leaves; d(Gamma)^(s(Gamma)-2) per component
    struct Comp {
        int d, s;
    };
    std::vector<Comp> census;
    census.push_back({2, 2 * k_singles + l});
    for (int i = 0; i < l; ++i) {
        census.push_back({2, 3});
        census.push_back({1, 1});
        census.push_back({1, 1});
    }
    for (int j = 0; j < 2 * k_singles; ++j) census.push_back({1, 1});
    Int prod = 1;
    Int denom = 1;
    for (auto& c : census) {
        int e = c.s - 2;
        for (int i = 0; i < (e > 0 ? e : -e); ++i) (e > 0 ? prod : denom) *= c.d;
    }
    if (prod % denom != 0) throw check_error("phi_bar_twist_order: census product not integral");
    return prod / denom;
}

TwistFibre build_twist_fibre(const std::vector<TwistOrbit>& s_orbits,
                             const std::vector<int>& w_sizes, int g) {
    int l = 0;
    for (auto& o : s_orbits) l += o.size;
    int nw = 0;
    for (int s : w_sizes) nw += s;
    if (nw % 2 != 0) throw domain_error("build_twist_fibre: odd single-root count");
    if (l + nw / 2 != g + 1) throw domain_error("build_twist_fibre: census does not match genus");

    std::vector<int> mult{2};
    std::vector<std::pair<int, int>> edges;
    std::vector<int> perm{0};
    auto add_vertex = [&](int m) {
        mult.push_back(m);
        perm.push_back((int)perm.size());
        return (int)mult.size() - 1;
    };
    for (auto& o : s_orbits) {
        // chain vertex (member m, position t) and the two leaves per member
        std::vector<std::vector<int>> chain(o.size);
        std::vector<int> r1(o.size), r2(o.size);
        for (int m = 0; m < o.size; ++m) {
            for (int t = 0; t < o.n; ++t) {
                chain[m].push_back(add_vertex(2));
                edges.push_back({t == 0 ? 0 : chain[m][t - 1], chain[m][t]});
            }
            r1[m] = add_vertex(1);
            r2[m] = add_vertex(1);
            edges.push_back({chain[m].back(), r1[m]});
            edges.push_back({chain[m].back(), r2[m]});
        }
        for (int m = 0; m < o.size; ++m) {
            int next = (m + 1) % o.size;
            for (int t = 0; t < o.n; ++t) perm[chain[m][t]] = chain[next][t];
            if (o.large) {
                perm[r1[m]] = m + 1 < o.size ? r1[m + 1] : r2[0];
                perm[r2[m]] = m + 1 < o.size ? r2[m + 1] : r1[0];
            } else {
                perm[r1[m]] = r1[next];
                perm[r2[m]] = r2[next];
            }
        }
    }
    for (int s : w_sizes) {
        std::vector<int> leaf(s);
        for (int j = 0; j < s; ++j) {
            leaf[j] = add_vertex(1);
            edges.push_back({0, leaf[j]});
        }
        for (int j = 0; j < s; ++j) perm[leaf[j]] = leaf[(j + 1) % s];
    }

    int nv = (int)mult.size();
    TwistFibre tf;
    tf.X.inter = MatZ::Zero(nv, nv);
    for (auto& e : edges) {
        tf.X.inter(e.first, e.second) += 1;
        tf.X.inter(e.second, e.first) += 1;
    }
    for (int i = 0; i < nv; ++i) {
        Int row = 0;
        for (int j = 0; j < nv; ++j)
            if (j != i) row += tf.X.inter(i, j) * mult[j];
        if (row % mult[i] != 0) throw check_error("build_twist_fibre: fibre relation not integral");
        tf.X.inter(i, i) = -row / mult[i];
    }
    tf.X.mult = mult;
    tf.X.genus = g;
    check_fibre(tf.X);
    tf.frob = Perm(perm);
    if (!commutes_with_fibre(tf.X, tf.frob))
        throw check_error("build_twist_fibre: Frobenius does not preserve the fibre");
    return tf;
}

TwistFibre build_twist_fibre(const CubeFreeData& d, ExtType ext) {
    TwistFibreData t = classify_twist_orbits(d, ext);
    return build_twist_fibre(t.S_orbits, cf_w_orbit_sizes(d), d.g);
}

}  // namespace ktl
