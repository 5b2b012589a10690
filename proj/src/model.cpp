#include "ktl/model.hpp"

#include <algorithm>
#include <sstream>

namespace ktl {

namespace {

constexpr uint64_t kSeed = 0x6d6f64656cull;

Int pow_int(long p, long e) {
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return q;
}

FqPoly embed_poly(const FqPoly& h, const FqF& big) {
    std::vector<Fq> c;
    c.reserve(h.c.size());
    for (auto& a : h.c) c.push_back(fq_embed(a, big));
    return poly_from_coeffs(big, c);
}

}  // namespace

HyperCurve make_curve(const BaseField& base, const ZPoly& f) {
    HyperCurve c;
    c.base = base;
    c.f = zp_trim(f);
    int deg = zp_deg(c.f);
    if (deg < 5) throw domain_error("make_curve: deg f >= 5 required (genus >= 2)");
    c.g = (deg - 1) / 2;
    c.disc = zp_disc(c.f);
    if (c.disc == 0) throw domain_error("make_curve: f is not separable");
    if (base.kind == BaseField::Kind::Qp) {
        if (base.p < 2) throw domain_error("make_curve: bad residue characteristic");
        if (base.resdeg < 1) throw domain_error("make_curve: bad residue degree");
    }
    return c;
}

int cf_num_singles(const CubeFreeData& d) {
    return (int)d.singles.size() + (d.infty_single ? 1 : 0);
}

bool cf_all_double(const CubeFreeData& d) { return cf_num_singles(d) == 0; }

std::vector<int> cf_chain_lengths(const CubeFreeData& d) {
    std::vector<int> out;
    out.reserve(d.doubles.size());
    for (auto& r : d.doubles) out.push_back(r.n);
    return out;
}

std::vector<int> cf_w_orbit_sizes(const CubeFreeData& d) {
    std::vector<int> out;
    for (auto& o : d.single_orbits) out.push_back((int)o.size());
    if (d.infty_single) out.push_back(1);
    return out;
}

Int cf_subfield_order(const CubeFreeData& d, const std::vector<int>& orbit) {
    return pow_int(d.p, (long)d.resdeg * (long)orbit.size());
}

int cf_tangent_chi(const CubeFreeData& d, int orbit_index) {
    const auto& orb = d.double_orbits.at(orbit_index);
    return fq_chi_sub(d.doubles[orb[0]].tprime, cf_subfield_order(d, orb));
}

CubeFreeData extract_cube_free(const HyperCurve& c) {
    if (c.base.kind != BaseField::Kind::Qp)
        throw domain_error("extract_cube_free: p-adic base required");
    long p = c.base.p;
    int rdeg = c.base.resdeg;
    if (p == 2) throw domain_error("extract_cube_free: residue characteristic 2");
    if (v_p(zp_lc(c.f), p) != 0)
        throw domain_error("extract_cube_free: leading coefficient is not a unit");

    FqF k = make_field(p, rdeg);
    FqPoly fbar = zp_reduce(c.f, k);
    auto facs = factor_poly(fbar, kSeed);
    long M = 1;
    for (auto& fa : facs) {
        if (fa.mult > 2) throw inapplicable_error("extract_cube_free: reduction is not cube-free");
        M = lcm_long(M, poly_deg(fa.poly));
    }
    FqF big = make_field(p, rdeg * (int)M);

    CubeFreeData d;
    d.p = p;
    d.resdeg = rdeg;
    d.g = c.g;
    d.big = big;
    d.infty_single = (zp_deg(c.f) % 2) == 1;
    d.u = fq_embed(fq_from_int(k, zp_lc(c.f)), big);

    for (auto& fa : facs) {
        if (fa.mult != 1) continue;
        for (auto& root : poly_roots(embed_poly(fa.poly, big), kSeed)) d.singles.push_back(root);
    }

    // depths and unit classes of the double blocks; the sum of the depths
    // equals v(disc f) exactly (unit leading coefficient), which certifies
    // that every depth was read at sufficient precision
    int target = v_p(c.disc, p);
    struct RawDouble {
        Fq ubar, vbar;
        int n;
    };
    std::vector<RawDouble> raw;
    bool have_doubles = false;
    for (auto& fa : facs) have_doubles = have_doubles || fa.mult == 2;
    if (have_doubles) {
        bool certified = false;
        std::string diag;
        for (int attempt = 0; attempt < 3 && !certified; ++attempt) {
            int N = attempt == 0 ? 4 : (attempt == 1 ? target + 2 : 2 * target + 4);
            raw.clear();
            bool short_read = false;
            for (auto& fa : facs) {
                if (fa.mult != 2) continue;
                int dh = poly_deg(fa.poly);
                LRing Rd = make_ring(p, rdeg * dh, N);
                FqPoly hd = embed_poly(fa.poly, Rd->k);
                RElem half = r_inv(r_from_int(Rd, 2));
                int found = 0;
                for (auto& b : hensel_blocks(Rd, c.f, kSeed)) {
                    if (b.e != 2 || poly_deg(b.h) != 1) continue;
                    Fq root = fq_neg(b.h.c[0]);
                    if (!fq_is_zero(poly_eval(hd, root))) continue;
                    RElem uc = r_neg(r_mul(b.B[1], half));
                    RElem cc = r_sub(r_mul(uc, uc), b.B[0]);
                    int n = r_val(cc);
                    if (n >= N) {
                        short_read = true;
                        break;
                    }
                    RawDouble rd;
                    rd.ubar = r_residue(uc);
                    rd.vbar = r_residue(r_div_p(cc, n));
                    rd.n = n;
                    if (!fq_eq(rd.ubar, root))
                        throw check_error("extract_cube_free: block centre drifted from its residue root");
                    raw.push_back(std::move(rd));
                    ++found;
                }
                if (short_read) break;
                if (found != dh)
                    throw check_error("extract_cube_free: double block count mismatch");
            }
            if (!short_read) {
                int sum = 0;
                for (auto& rd : raw) sum += rd.n;
                if (sum == target) certified = true;
                else {
                    std::ostringstream os;
                    os << "depth sum " << sum << " != v(disc) " << target << " at precision " << N;
                    diag = os.str();
                }
            } else {
                diag = "a depth reached the precision cap";
            }
        }
        if (!certified)
            throw precision_error("extract_cube_free: escalation exhausted (" + diag + ")");
    }

    for (auto& rd : raw) {
        DoubleRoot dr;
        dr.ubar = fq_embed(rd.ubar, big);
        dr.vbar = fq_embed(rd.vbar, big);
        dr.n = rd.n;
        d.doubles.push_back(std::move(dr));
    }
    std::sort(d.doubles.begin(), d.doubles.end(),
              [](const DoubleRoot& a, const DoubleRoot& b) { return fq_cmp(a.ubar, b.ubar) < 0; });
    std::sort(d.singles.begin(), d.singles.end(),
              [](const Fq& a, const Fq& b) { return fq_cmp(a, b) < 0; });

    if (2 * (int)d.doubles.size() + cf_num_singles(d) != 2 * c.g + 2)
        throw check_error("extract_cube_free: root count mismatch");
    std::vector<Fq> all;
    for (auto& r : d.doubles) all.push_back(r.ubar);
    for (auto& w : d.singles) all.push_back(w);
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            if (fq_eq(all[i], all[j]))
                throw check_error("extract_cube_free: residue roots collide");

    // tangent squares from the reduction: divide out (x - ubar)^2 and evaluate
    FqPoly fbig = zp_reduce(c.f, big);
    for (auto& r : d.doubles) {
        FqPoly lin = poly_from_coeffs(big, {fq_neg(r.ubar), fq_one(big)});
        FqPoly q1, rem;
        poly_divmod(fbig, lin, q1, rem);
        if (poly_deg(rem) >= 0) throw check_error("extract_cube_free: ubar is not a root");
        FqPoly q2;
        poly_divmod(q1, lin, q2, rem);
        if (poly_deg(rem) >= 0) throw check_error("extract_cube_free: ubar is not a double root");
        r.tprime = poly_eval(q2, r.ubar);
        if (fq_is_zero(r.tprime)) throw check_error("extract_cube_free: vanishing tangent square");
    }

    std::vector<Fq> ubars;
    for (auto& r : d.doubles) ubars.push_back(r.ubar);
    d.double_orbits = frobenius_orbits(ubars, rdeg);
    d.single_orbits = frobenius_orbits(d.singles, rdeg);

    // orbit coherence: constant depth, Frobenius-equivariant unit classes and
    // tangent squares, data inside the right subfield
    for (auto& orb : d.double_orbits) {
        long sub = (long)rdeg * (long)orb.size();
        for (size_t j = 0; j < orb.size(); ++j) {
            const DoubleRoot& a = d.doubles[orb[j]];
            const DoubleRoot& b = d.doubles[orb[(j + 1) % orb.size()]];
            if (a.n != b.n) throw check_error("extract_cube_free: depth varies along an orbit");
            if (!fq_eq(fq_frobenius(a.vbar, rdeg), b.vbar))
                throw check_error("extract_cube_free: unit class not Frobenius-equivariant");
            if (!fq_eq(fq_frobenius(a.tprime, rdeg), b.tprime))
                throw check_error("extract_cube_free: tangent square not Frobenius-equivariant");
            if (!fq_eq(fq_frobenius(a.tprime, (int)sub), a.tprime))
                throw check_error("extract_cube_free: tangent square outside k(ubar)");
        }
    }
    return d;
}

namespace {

struct ChainLayout {
    std::vector<std::vector<int>> vs;  // intermediate vertices per chain
    std::vector<std::vector<int>> es;  // edge ids per chain, walk order
};

// maps chain src onto chain dst, reversing the walk when rev is set; loops
// (length-1 chains in the single-root shape) record their sign explicitly
void map_chain(const CubeFreeData& d, const ChainLayout& lay, const DualGraph& g, int src, int dst,
               bool rev, Perm& pv, Perm& pe, std::vector<std::pair<int, int>>& loop_sign) {
    int n = d.doubles[src].n;
    const auto& vs = lay.vs[src];
    const auto& vd = lay.vs[dst];
    const auto& es = lay.es[src];
    const auto& ed = lay.es[dst];
    for (int t = 0; t < n - 1; ++t) pv.img[vs[t]] = rev ? vd[n - 2 - t] : vd[t];
    for (int t = 0; t < n; ++t) pe.img[es[t]] = rev ? ed[n - 1 - t] : ed[t];
    if (n == 1 && g.edges[es[0]].first == g.edges[es[0]].second)
        loop_sign.push_back({es[0], rev ? -1 : 1});
}

SignedAut assemble(const DualGraph& g, Perm pv, Perm pe,
                   std::vector<std::pair<int, int>> loop_sign) {
    std::sort(loop_sign.begin(), loop_sign.end());
    std::vector<int> bits;
    for (auto& s : loop_sign) bits.push_back(s.second);
    return sa_from_perms(g, pv, pe, bits);
}

}  // namespace

DualGraph build_dual_graph(const CubeFreeData& d) {
    int l = (int)d.doubles.size();
    bool all_double = cf_all_double(d);
    if (all_double && l != d.g + 1)
        throw check_error("build_dual_graph: all-double shape needs g+1 doubles");

    DualGraph g;
    ChainLayout lay;
    lay.vs.resize(l);
    lay.es.resize(l);
    g.nv = all_double ? 2 : 1;
    int head = all_double ? 1 : 0;
    auto add_edge = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        g.edges.push_back({a, b});
        return (int)g.edges.size() - 1;
    };
    for (int i = 0; i < l; ++i) {
        int n = d.doubles[i].n;
        for (int t = 0; t < n - 1; ++t) lay.vs[i].push_back(g.nv++);
        if (n == 1) {
            lay.es[i].push_back(add_edge(0, head));
        } else {
            lay.es[i].push_back(add_edge(0, lay.vs[i][0]));
            for (int t = 1; t < n - 1; ++t) lay.es[i].push_back(add_edge(lay.vs[i][t - 1], lay.vs[i][t]));
            lay.es[i].push_back(add_edge(lay.vs[i][n - 2], head));
        }
    }
    g.mult.assign(g.nv, 1);

    int ne = (int)g.edges.size();
    Perm fv(g.nv), fe(ne), iv(g.nv), ie(ne);
    std::vector<std::pair<int, int>> f_loops, i_loops;

    bool swap_gamma = false;
    if (all_double) swap_gamma = fq_chi_sub(d.u, pow_int(d.p, d.resdeg)) == -1;
    if (swap_gamma) {
        fv.img[0] = 1;
        fv.img[1] = 0;
    }
    for (size_t oi = 0; oi < d.double_orbits.size(); ++oi) {
        const auto& orb = d.double_orbits[oi];
        bool wrap_rev = all_double ? false : cf_tangent_chi(d, (int)oi) == -1;
        for (size_t j = 0; j < orb.size(); ++j) {
            bool rev = all_double ? swap_gamma : (j + 1 == orb.size() && wrap_rev);
            map_chain(d, lay, g, orb[j], orb[(j + 1) % orb.size()], rev, fv, fe, f_loops);
        }
    }
    if (all_double) {
        iv.img[0] = 1;
        iv.img[1] = 0;
    }
    for (int i = 0; i < l; ++i) map_chain(d, lay, g, i, i, true, iv, ie, i_loops);

    g.frob = assemble(g, fv, fe, f_loops);
    g.invol = assemble(g, iv, ie, i_loops);
    check_graph(g);
    return g;
}

int composite_A(const CubeFreeData& d) {
    int r = 0;
    for (size_t oi = 0; oi < d.double_orbits.size(); ++oi) {
        const auto& orb = d.double_orbits[oi];
        if (d.doubles[orb[0]].n % 2 == 1 && cf_tangent_chi(d, (int)oi) == -1) ++r;
    }
    return r % 2 == 0 ? 1 : -1;
}

int composite_A(const HyperCurve& c, ExtType ext) {
    if (ext == ExtType::unram)
        throw inapplicable_error("composite_A: ramified extension required");
    return composite_A(extract_cube_free(c));
}

ComponentGroups component_groups(const DualGraph& graph, int e) {
    IntLattice L = homology_lattice(graph);
    ComponentGroups out;
    out.phi_bar = quotient_with_action(L, e);
    out.phi_fixed = fixed_order(out.phi_bar);
    out.phi_fixed_sq = fixed_order_power(out.phi_bar, 2);
    MatZ neg = out.phi_bar.act;
    for (int i = 0; i < neg.rows(); ++i)
        for (int j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
    out.phi_fixed_neg = fixed_order(out.phi_bar, neg);
    out.dim2 = out.phi_bar.dim2();
    Int num = out.phi_fixed_neg * out.phi_fixed;
    if (num % out.phi_fixed_sq != 0)
        throw check_error("component_groups: fixed-point formula not integral");
    out.h1_order = num / out.phi_fixed_sq;
    Int h = out.h1_order;
    while (h % 2 == 0) {
        h /= 2;
        ++out.h1_dim;
    }
    if (h != 1) throw check_error("component_groups: H^1 order is not a power of 2");
    return out;
}

std::vector<std::pair<int, int>> component_orbits(const DualGraph& graph, bool twisted) {
    Perm v = graph.frob.v;
    if (twisted) {
        if (!graph.invol) throw domain_error("component_orbits: no involution on this graph");
        v = compose(graph.invol->v, v);
    }
    std::vector<std::pair<int, int>> out;
    for (auto& c : cycles(v)) {
        int m = graph.mult.empty() ? 1 : graph.mult[c[0]];
        for (int x : c)
            if ((graph.mult.empty() ? 1 : graph.mult[x]) != m)
                throw check_error("component_orbits: multiplicity varies along an orbit");
        out.push_back({m, (int)c.size()});
    }
    return out;
}

NormCongruence unramified_norm_congruence(const HyperCurve& c) {
    CubeFreeData d = extract_cube_free(c);
    DualGraph graph = build_dual_graph(d);
    ComponentGroups cg = component_groups(graph, 1);
    NormCongruence out;
    out.dim_h1 = cg.h1_dim;
    out.eps_K = deficient_from_model(component_orbits(graph, false), c.g).epsilon;
    out.eps_twist = deficient_from_model(component_orbits(graph, true), c.g).epsilon;
    out.dim2 = cg.dim2;
    out.eps_geom = epsilon_geometric(c.g, cf_num_singles(d), cf_chain_lengths(d));
    return out;
}

}  // namespace ktl
