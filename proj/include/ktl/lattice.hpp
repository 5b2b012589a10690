#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "ktl/intmat.hpp"
#include "ktl/perm.hpp"

namespace ktl {

// signed automorphism of an oriented multigraph: vertex permutation v, edge
// permutation e, and esign[x] = -1 when edge x lands on its image with the
// orientation reversed.  For a loop mapped to a loop the sign is free data
// (the tangent choice at the node) and is not determined by v.
struct SignedAut {
    Perm v;
    Perm e;
    std::vector<int> esign;
};

// dual graph of a special fibre: one vertex per component (with multiplicity),
// one edge per intersection point.  Non-loop edges are stored tail < head.
struct DualGraph {
    int nv = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> mult;  // component multiplicities; empty means all 1
    SignedAut frob;
    std::optional<SignedAut> invol;
};

void check_graph(const DualGraph& g);
bool graph_connected(const DualGraph& g);

SignedAut sa_identity(int nv, int ne);
SignedAut sa_compose(const SignedAut& a, const SignedAut& b);  // a after b
int sa_order(const SignedAut& a);
// build a signed automorphism from a vertex and edge permutation; non-loop
// signs follow from the orientations, loop signs are taken from loop_bits
// (indexed by loop, in increasing edge order; missing entries default to +1)
SignedAut sa_from_perms(const DualGraph& g, const Perm& v, const Perm& e,
                        const std::vector<int>& loop_bits = {});

// lattice with a finite-order isometry: gram is the pairing on the lattice,
// F its automorphism, and F^F_order = 1
struct IntLattice {
    int rank = 0;
    MatZ gram;
    MatZ F;
    int F_order = 1;
};

void check_lattice(const IntLattice& L);
IntLattice make_lattice(const MatZ& gram, const MatZ& F, int F_order);

// first homology of the graph with the edge-counting pairing and the signed
// Frobenius action; basis = fundamental cycles of the breadth-first spanning
// tree rooted at vertex 0, ordered by their non-tree edge
IntLattice homology_lattice(const DualGraph& g);
// same, with the Frobenius composed with the involution
IntLattice homology_lattice_twisted(const DualGraph& g);

// L / e L^vee where L is the dual of the given lattice under its pairing,
// together with the induced action of F
FinAb quotient_with_action(const IntLattice& L, int e);

// ker(1 + F + ... + F^(order-1)) / im(F - 1) on the lattice itself
FinAb h1_cyclic(const IntLattice& L);

struct BettsResult {
    FinAb B;        // image of H^1(G, lattice) -> H^1(G, dual lattice)
    int dim_B2 = 0;
    int r_fixed = 0;
};
BettsResult betts_group(const IntLattice& L);

// |(L/eL^vee)^F| == |(L/L^vee)^F| * |B[e]| * e^r_fixed, checked exactly
bool verify_lattice_behaviour(const IntLattice& L, int e);

// components of a special fibre: symmetric intersection matrix with
// inter * mult = 0 and corank 1, plus the genus of the generic fibre
struct FibreData {
    MatZ inter;
    std::vector<int> mult;
    int genus = 0;
};

void check_fibre(const FibreData& X);
// intersection data read off a dual graph: off-diagonal entries count edges,
// diagonal entries come from the fibre relation inter * mult = 0
FibreData fibre_of_graph(const DualGraph& g, int genus);

bool commutes_with_fibre(const FibreData& X, const Perm& rho);
// component group ker(beta)/im(alpha) with the action of rho
FinAb comp_group(const FibreData& X, const Perm& rho);
// 2 when gcd_i(mult_i * |orbit of i|) does not divide genus - 1, else 1
int q_factor(const FibreData& X, const Perm& rho);
// squarefree class of (|Phi| / |Phi^rho|) * q(rho); a homomorphism in rho
Int D_map(const FibreData& X, const Perm& rho);
// det((1/r_j) <eps_i, eps_j>) over the alternating sums eps_i of the
// even-sized rho-orbits; empty basis gives 1
Int tam_parity_det(const FibreData& X, const Perm& rho);
// squarefree class of |tam_parity_det| == squarefree class of q |Phi| / |Phi^rho|
bool tam_parity_check(const FibreData& X, const Perm& rho);

}  // namespace ktl
