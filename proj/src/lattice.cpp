#include "ktl/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "ktl/zpoly.hpp"

namespace ktl {
namespace {

bool mats_equal(const MatZ& a, const MatZ& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

bool is_identity(const MatZ& a) {
    if (a.rows() != a.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != Int(i == j ? 1 : 0)) return false;
    return true;
}

int mult_of(const DualGraph& g, int i) { return g.mult.empty() ? 1 : g.mult[i]; }

void check_aut(const DualGraph& g, const SignedAut& a) {
    int n = g.nv, m = (int)g.edges.size();
    if (a.v.size() != n || a.e.size() != m || (int)a.esign.size() != m)
        throw domain_error("signed automorphism has wrong sizes");
    a.v.validate();
    a.e.validate();
    for (int x = 0; x < m; ++x) {
        if (a.esign[x] != 1 && a.esign[x] != -1)
            throw domain_error("edge signs must be +1 or -1");
        auto [p, q] = g.edges[x];
        auto [c, d] = g.edges[a.e(x)];
        int ip = a.v(p), iq = a.v(q);
        if (p == q) {
            if (c != d || c != ip) throw domain_error("loop image is not the matching loop");
        } else {
            if (c == d) throw domain_error("non-loop edge maps to a loop");
            bool fwd = (ip == c && iq == d), rev = (ip == d && iq == c);
            if (!(fwd || rev)) throw domain_error("edge image does not follow the vertex map");
            if (a.esign[x] != (fwd ? 1 : -1))
                throw domain_error("edge sign contradicts the orientations");
        }
    }
}

MatZ scaled(const MatZ& a, const Int& c) {
    MatZ b = a;
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) *= c;
    return b;
}

FinAb trivial_group() { return FinAb{{}, MatZ::Zero(0, 0)}; }

}  // namespace

void check_graph(const DualGraph& g) {
    if (g.nv < 1) throw domain_error("graph needs at least one vertex");
    if (!g.mult.empty()) {
        if ((int)g.mult.size() != g.nv) throw domain_error("multiplicity list has wrong length");
        for (int d : g.mult)
            if (d < 1) throw domain_error("multiplicities must be positive");
    }
    for (auto [a, b] : g.edges) {
        if (a < 0 || b < 0 || a >= g.nv || b >= g.nv) throw domain_error("edge endpoint out of range");
        if (a > b) throw domain_error("edges must be oriented tail <= head");
    }
    check_aut(g, g.frob);
    if (g.invol) check_aut(g, *g.invol);
}

bool graph_connected(const DualGraph& g) {
    if (g.nv == 0) return false;
    std::vector<char> vis(g.nv, 0);
    std::queue<int> bfs;
    bfs.push(0);
    vis[0] = 1;
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (auto [a, b] : g.edges) {
            int w = -1;
            if (a == u && !vis[b]) w = b;
            if (b == u && !vis[a]) w = a;
            if (w >= 0) {
                vis[w] = 1;
                bfs.push(w);
            }
        }
    }
    return std::all_of(vis.begin(), vis.end(), [](char c) { return c != 0; });
}

SignedAut sa_identity(int nv, int ne) {
    return SignedAut{Perm(nv), Perm(ne), std::vector<int>(ne, 1)};
}

SignedAut sa_compose(const SignedAut& a, const SignedAut& b) {
    if (a.v.size() != b.v.size() || a.e.size() != b.e.size())
        throw domain_error("sa_compose: size mismatch");
    SignedAut c;
    c.v = compose(a.v, b.v);
    c.e = compose(a.e, b.e);
    c.esign.resize(b.esign.size());
    for (int x = 0; x < (int)b.esign.size(); ++x) c.esign[x] = a.esign[b.e(x)] * b.esign[x];
    return c;
}

int sa_order(const SignedAut& a) {
    SignedAut cur = a;
    for (int k = 1; k <= 10000; ++k) {
        bool id = true;
        for (int i = 0; id && i < cur.v.size(); ++i) id = cur.v(i) == i;
        for (int x = 0; id && x < cur.e.size(); ++x) id = cur.e(x) == x && cur.esign[x] == 1;
        if (id) return k;
        cur = sa_compose(a, cur);
    }
    throw check_error("signed automorphism order exceeds bound");
}

SignedAut sa_from_perms(const DualGraph& g, const Perm& v, const Perm& e,
                        const std::vector<int>& loop_bits) {
    SignedAut a{v, e, std::vector<int>(g.edges.size(), 1)};
    int loop_idx = 0;
    for (int x = 0; x < (int)g.edges.size(); ++x) {
        auto [p, q] = g.edges[x];
        if (p == q) {
            a.esign[x] = loop_idx < (int)loop_bits.size() ? loop_bits[loop_idx] : 1;
            ++loop_idx;
        } else {
            a.esign[x] = v(p) < v(q) ? 1 : -1;
        }
    }
    check_aut(g, a);
    return a;
}

void check_lattice(const IntLattice& L) {
    int r = L.rank;
    if (r < 0 || L.gram.rows() != r || L.gram.cols() != r || L.F.rows() != r || L.F.cols() != r)
        throw domain_error("lattice dimensions are inconsistent");
    if (L.F_order < 1) throw domain_error("F_order must be positive");
    if (!mats_equal(L.gram, MatZ(L.gram.transpose()))) throw domain_error("gram must be symmetric");
    MatZ conj = L.F.transpose() * L.gram * L.F;
    if (!mats_equal(conj, L.gram)) throw domain_error("F does not preserve the pairing");
    if (!is_identity(mat_pow(L.F, L.F_order))) throw domain_error("F^F_order is not the identity");
}

IntLattice make_lattice(const MatZ& gram, const MatZ& F, int F_order) {
    IntLattice L{(int)gram.rows(), gram, F, F_order};
    check_lattice(L);
    return L;
}

IntLattice homology_lattice(const DualGraph& g) {
    check_graph(g);
    if (!graph_connected(g)) throw domain_error("graph must be connected");
    int n = g.nv, m = (int)g.edges.size();

    std::vector<int> parent_edge(n, -1);
    std::vector<char> vis(n, 0), intree(m, 0);
    std::queue<int> bfs;
    bfs.push(0);
    vis[0] = 1;
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int x = 0; x < m; ++x) {
            auto [a, b] = g.edges[x];
            if (a == b) continue;
            int w = -1;
            if (a == u && !vis[b]) w = b;
            else if (b == u && !vis[a]) w = a;
            if (w >= 0) {
                vis[w] = 1;
                intree[x] = 1;
                parent_edge[w] = x;
                bfs.push(w);
            }
        }
    }

    // chain from the root to w along the spanning tree
    auto pvec = [&](int w) {
        VecZ p = VecZ::Zero(m);
        int cur = w;
        while (cur != 0) {
            int y = parent_edge[cur];
            auto [a, b] = g.edges[y];
            if (b == cur) {
                p(y) += 1;
                cur = a;
            } else {
                p(y) -= 1;
                cur = b;
            }
        }
        return p;
    };

    std::vector<int> nt;
    for (int x = 0; x < m; ++x)
        if (!intree[x]) nt.push_back(x);
    int r = (int)nt.size();
    if (r != m - n + 1) throw check_error("spanning tree has the wrong size");

    MatZ C = MatZ::Zero(m, r);
    for (int j = 0; j < r; ++j) {
        int x = nt[j];
        auto [a, b] = g.edges[x];
        VecZ c = VecZ::Zero(m);
        c(x) += 1;
        if (a != b) c += pvec(a) - pvec(b);
        for (int y = 0; y < m; ++y) C(y, j) = c(y);
    }
    for (int j = 0; j < r; ++j) {  // each basis vector is a cycle
        std::vector<Int> del(n, 0);
        for (int y = 0; y < m; ++y) {
            del[g.edges[y].second] += C(y, j);
            del[g.edges[y].first] -= C(y, j);
        }
        for (auto& d : del)
            if (d != 0) throw check_error("fundamental cycle has non-zero boundary");
    }

    MatZ gram = C.transpose() * C;

    MatZ F = MatZ::Zero(r, r);
    for (int l = 0; l < r; ++l) {
        VecZ img = VecZ::Zero(m);
        for (int x = 0; x < m; ++x)
            if (C(x, l) != 0) img(g.frob.e(x)) += C(x, l) * Int(g.frob.esign[x]);
        for (int j = 0; j < r; ++j) F(j, l) = img(nt[j]);
        VecZ back = VecZ::Zero(m);
        for (int j = 0; j < r; ++j)
            for (int y = 0; y < m; ++y) back(y) += C(y, j) * F(j, l);
        for (int y = 0; y < m; ++y)
            if (back(y) != img(y)) throw check_error("action does not preserve the cycle space");
    }

    int order = 0;
    MatZ P = F;
    for (int k = 1; k <= 512; ++k) {
        if (is_identity(P)) {
            order = k;
            break;
        }
        P = P * F;
    }
    if (order == 0) throw check_error("lattice automorphism order exceeds bound");

    IntLattice L{r, gram, F, order};
    check_lattice(L);
    return L;
}

IntLattice homology_lattice_twisted(const DualGraph& g) {
    if (!g.invol) throw domain_error("graph has no involution");
    DualGraph t = g;
    t.frob = sa_compose(*g.invol, g.frob);
    t.invol.reset();
    return homology_lattice(t);
}

FinAb quotient_with_action(const IntLattice& L, int e) {
    check_lattice(L);
    if (e < 1) throw domain_error("quotient level must be >= 1");
    if (L.rank == 0) return trivial_group();
    if (det(L.gram) == 0) throw domain_error("gram is singular");
    MatZ M = scaled(L.gram, Int(e));
    MatZ Atil = inverse_unimodular(L.F).transpose();
    return cokernel_with_action(M, Atil);
}

FinAb h1_cyclic(const IntLattice& L) {
    check_lattice(L);
    int r = L.rank;
    if (r == 0) return trivial_group();
    MatZ N = MatZ::Zero(r, r), cur = MatZ::Identity(r, r);
    for (int i = 0; i < L.F_order; ++i) {
        N += cur;
        cur = cur * L.F;
    }
    MatZ W = kernel(N);
    int s = (int)W.cols();
    if (s == 0) return trivial_group();
    MatZ D = L.F - MatZ::Identity(r, r), X;
    if (!solve(W, D, X)) throw check_error("im(F-1) escapes ker(norm)");
    return cokernel_with_action(X, MatZ::Identity(s, s));
}

BettsResult betts_group(const IntLattice& L) {
    check_lattice(L);
    int r = L.rank;
    if (r == 0) return BettsResult{trivial_group(), 0, 0};
    MatZ I = MatZ::Identity(r, r);
    int r_fixed = r - rank(MatZ(L.F - I));
    MatZ Atil = inverse_unimodular(L.F).transpose();

    MatZ NA = MatZ::Zero(r, r), NAt = MatZ::Zero(r, r), ca = I, ct = I;
    for (int i = 0; i < L.F_order; ++i) {
        NA += ca;
        NAt += ct;
        ca = ca * L.F;
        ct = ct * Atil;
    }

    MatZ W = kernel(NAt);
    int s = (int)W.cols();
    if (s == 0) return BettsResult{trivial_group(), 0, r_fixed};

    MatZ X;
    if (!solve(W, MatZ(Atil - I), X)) throw check_error("im(F-1) escapes ker(norm)");
    MatZ KA = kernel(NA);
    MatZ Y;
    if (!solve(W, MatZ(L.gram * KA), Y)) throw check_error("embedded lattice escapes ker(norm)");

    MatZ XY(s, X.cols() + Y.cols());
    XY << X, Y;
    Smith sm = smith_normal_form(XY);
    MatZ B1 = MatZ::Zero(s, s);
    MatZ Uinv = inverse_unimodular(sm.U);
    for (int j = 0; j < s; ++j) {
        if (sm.D(j, j) == 0) throw check_error("H1 of the dual lattice is not finite");
        for (int i = 0; i < s; ++i) B1(i, j) = Uinv(i, j) * sm.D(j, j);
    }
    MatZ Z;
    if (!solve(B1, X, Z)) throw check_error("H1 image lattice is not contained in its span");
    FinAb B = cokernel_with_action(Z, MatZ::Identity(s, s));
    return BettsResult{B, B.dim2(), r_fixed};
}

bool verify_lattice_behaviour(const IntLattice& L, int e) {
    if (e < 1) throw domain_error("quotient level must be >= 1");
    Int lhs = fixed_order(quotient_with_action(L, e));
    Int base = fixed_order(quotient_with_action(L, 1));
    BettsResult br = betts_group(L);
    Int rhs = base * br.B.torsion(Int(e));
    for (int i = 0; i < br.r_fixed; ++i) rhs *= e;
    return lhs == rhs;
}

void check_fibre(const FibreData& X) {
    int n = (int)X.inter.rows();
    if (n < 1 || X.inter.cols() != n) throw domain_error("intersection matrix must be square");
    if ((int)X.mult.size() != n) throw domain_error("multiplicity list has wrong length");
    for (int d : X.mult)
        if (d < 1) throw domain_error("multiplicities must be positive");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (X.inter(i, j) != X.inter(j, i)) throw domain_error("intersection matrix must be symmetric");
            if (i != j && X.inter(i, j) < 0) throw domain_error("off-diagonal intersections must be >= 0");
        }
    for (int i = 0; i < n; ++i) {
        Int s = 0;
        for (int j = 0; j < n; ++j) s += X.inter(i, j) * Int(X.mult[j]);
        if (s != 0) throw domain_error("fibre relation inter * mult = 0 fails");
    }
    if (rank(X.inter) != n - 1) throw domain_error("intersection matrix must have corank 1");
}

FibreData fibre_of_graph(const DualGraph& g, int genus) {
    check_graph(g);
    int n = g.nv;
    MatZ A = MatZ::Zero(n, n);
    for (auto [a, b] : g.edges)
        if (a != b) {
            A(a, b) += 1;
            A(b, a) += 1;
        }
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) d[i] = mult_of(g, i);
    for (int i = 0; i < n; ++i) {
        Int s = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) s += A(i, j) * Int(d[j]);
        if (s % Int(d[i]) != 0) throw check_error("multiplicities do not divide the fibre relation");
        A(i, i) = -s / Int(d[i]);
    }
    FibreData X{A, d, genus};
    check_fibre(X);
    return X;
}

bool commutes_with_fibre(const FibreData& X, const Perm& rho) {
    int n = (int)X.inter.rows();
    if (rho.size() != n) return false;
    for (int i = 0; i < n; ++i)
        if (X.mult[rho(i)] != X.mult[i]) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (X.inter(rho(i), rho(j)) != X.inter(i, j)) return false;
    return true;
}

FinAb comp_group(const FibreData& X, const Perm& rho) {
    check_fibre(X);
    if (!commutes_with_fibre(X, rho))
        throw domain_error("permutation does not commute with the fibre data");
    int n = (int)X.inter.rows();
    MatZ drow(1, n);
    for (int j = 0; j < n; ++j) drow(0, j) = X.mult[j];
    MatZ Kb = kernel(drow);  // n x (n-1), saturated
    MatZ Xrel;
    if (!solve(Kb, X.inter, Xrel)) throw check_error("intersection columns escape ker(beta)");
    MatZ P = MatZ::Zero(n, n);
    for (int i = 0; i < n; ++i) P(rho(i), i) = 1;
    MatZ R;
    if (!solve(Kb, MatZ(P * Kb), R)) throw check_error("permutation does not preserve ker(beta)");
    return cokernel_with_action(Xrel, R);
}

int q_factor(const FibreData& X, const Perm& rho) {
    check_fibre(X);
    if (!commutes_with_fibre(X, rho))
        throw domain_error("permutation does not commute with the fibre data");
    long g = 0;
    for (auto& c : cycles(rho)) g = std::gcd(g, (long)X.mult[c[0]] * (long)c.size());
    return ((long)X.genus - 1) % g == 0 ? 1 : 2;
}

Int D_map(const FibreData& X, const Perm& rho) {
    FinAb Phi = comp_group(X, rho);
    Int o = Phi.order(), f = fixed_order(Phi);
    if (o % f != 0) throw check_error("fixed subgroup order does not divide the group order");
    return squarefree_part(o / f * Int(q_factor(X, rho)));
}

Int tam_parity_det(const FibreData& X, const Perm& rho) {
    check_fibre(X);
    if (!commutes_with_fibre(X, rho))
        throw domain_error("permutation does not commute with the fibre data");
    int n = (int)X.inter.rows();
    std::vector<VecZ> eps;
    std::vector<long> sizes;
    for (auto& c : cycles(rho)) {
        if (c.size() % 2 != 0) continue;
        VecZ v = VecZ::Zero(n);
        int cur = c[0], s = 1;
        for (size_t t = 0; t < c.size(); ++t) {
            v(cur) += s;
            s = -s;
            cur = rho(cur);
        }
        eps.push_back(v);
        sizes.push_back((long)c.size());
    }
    int k = (int)eps.size();
    if (k == 0) return 1;
    MatZ B(k, k);
    for (int i = 0; i < k; ++i) {
        VecZ Ai = X.inter * eps[i];
        for (int j = 0; j < k; ++j) {
            Int pair = 0;
            for (int t = 0; t < n; ++t) pair += Ai(t) * eps[j](t);
            if (pair % Int(sizes[j]) != 0) throw check_error("pairing block is not integral");
            B(i, j) = pair / Int(sizes[j]);
        }
    }
    Int dt = det(B);
    if (dt == 0) throw check_error("singular parity block");
    return dt;
}

bool tam_parity_check(const FibreData& X, const Perm& rho) {
    Int dt = tam_parity_det(X, rho);
    FinAb Phi = comp_group(X, rho);
    Int o = Phi.order(), f = fixed_order(Phi);
    if (o % f != 0) throw check_error("fixed subgroup order does not divide the group order");
    Int rhs = o / f * Int(q_factor(X, rho));
    return squarefree_part(abs(dt)) == squarefree_part(rhs);
}

}  // namespace ktl
