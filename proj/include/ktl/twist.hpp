#pragma once
#include <vector>

#include "ktl/lattice.hpp"
#include "ktl/model.hpp"

namespace ktl {

// Galois orbit on the distinguished multiplicity-2 components of the
// ramified-twist fibre; small orbits keep the two leaf chains apart, large
// orbits fuse them into a single orbit of twice the size
struct TwistOrbit {
    int size = 1;
    int n = 1;
    bool large = false;
};

struct TwistFibreData {
    int W_orbit_count = 0;  // Frobenius orbits on the single roots
    std::vector<TwistOrbit> S_orbits;
    int g = 0;
};

// orbit classification for the twist by K(sqrt(pi)): the orbit of ubar_i is
// large iff -vbar_i t'_i is a non-square in k(ubar_i) for odd depth, and iff
// vbar_i is a non-square for even depth.  For K(sqrt(u pi)) the uniformiser
// is re-chosen, replacing vbar by vbar * u^{-n} for the canonical non-square
// unit u of k.
TwistFibreData classify_twist_orbits(const CubeFreeData& d, ExtType ext = ExtType::ram_pi);
TwistFibreData classify_twist_orbits(const HyperCurve& c, ExtType ext);

// (-1)^{#W-orbits + #large orbits}; equals (-1)^{ord_2 c(J^L/K)} i_d(C^L)
int composite_B(const TwistFibreData& t);

// |Phi(k-bar)| of the twist fibre from the multiplicity census of the
// special fibre: a multiplicity-2 spine carrying one multiplicity-2 chain
// per double root, each ending in two leaves, plus one leaf per single
// root; the product of d(Gamma)^(s(Gamma)-2) collapses to 2^(2g)
Int phi_bar_twist_order(int g, int l, int k_singles);

// the twist fibre made explicit, with the Frobenius permutation realizing
// the given orbit data; w_sizes are the Galois orbit sizes on the single
// roots (their total count must be even)
struct TwistFibre {
    FibreData X;
    Perm frob;
};
TwistFibre build_twist_fibre(const std::vector<TwistOrbit>& s_orbits,
                             const std::vector<int>& w_sizes, int g);
TwistFibre build_twist_fibre(const CubeFreeData& d, ExtType ext = ExtType::ram_pi);

}  // namespace ktl
