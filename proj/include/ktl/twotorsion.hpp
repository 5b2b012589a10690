#pragma once
#include <cstdint>
#include <vector>

#include "ktl/perm.hpp"

namespace ktl {

// Galois action on the 2g+2 branch points of a hyperelliptic curve
// (roots of a squarefree model plus, for odd degree, the point at
// infinity), described by generators of the acting group.
struct RootAction {
    int npoints = 0;  // even, equal to 2g+2
    std::vector<Perm> gens;
};

int genus_of(const RootAction& a);

// number of orbits of <gens> on the points
int action_orbit_count(const RootAction& a);
std::vector<int> action_orbit_sizes(const RootAction& a);

// dim_{F2} of the fixed points of ker(sum)/<all-ones> inside F2^points,
// solved directly as a linear system over F2 in the vector and one parity
// unknown per generator (generator equations propagate to the whole group)
int two_torsion_dim_bruteforce(const RootAction& a);

// orbit-shape formula: with n orbits, the dimension is n-2 when an odd
// orbit exists, n-1 for even genus, and n-1+m for odd genus where m is the
// F2-dimension of the group of index-2 characters phi of <gens> for which
// (s-1)x = phi(s)*ones is solvable in F2^points
int two_torsion_dim(const RootAction& a, size_t group_cap = 65536);

// the cyclic case depends only on the orbit sizes
int two_torsion_dim_cyclic(const std::vector<int>& orbit_sizes);

// generator-parity assignments (bit j = value on gens[j]) that extend to
// characters <gens> -> F2; computed by closing the group (error beyond cap)
std::vector<uint32_t> index2_characters(const std::vector<Perm>& gens, size_t group_cap = 65536);

}  // namespace ktl
