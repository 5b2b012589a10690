#pragma once
#include <utility>
#include <vector>

#include "ktl/localfield.hpp"

namespace ktl {

enum class DefPath { trivial_odd_genus, odd_factor, norm_criterion, model, archimedean };

struct DeficiencyVerdict {
    bool deficient = false;
    int epsilon = 0;  // (1 - i_d)/2
    int i_d = 1;
    DefPath path = DefPath::model;
};

// monic irreducible factor of a cube-free polynomial over the base field,
// described by the residue degree fdeg of its root field M, the
// ramification index e (1 or 2), and, when e = 2, chi_{k_fdeg} of the unit
// class c for which M = K_fdeg(sqrt(c * pi))
struct LocalFactor {
    int fdeg = 1;
    int e = 1;
    int w_chi = 1;
};

// does the root field contain the given quadratic extension of the base?
bool factor_field_contains(const LocalFactor& mf, ExtType F);

// f splits into two conjugate odd-degree halves over F exactly when every
// factor's root field contains F (all factor degrees even)
bool odd_factorization_exists(const std::vector<LocalFactor>& fs, ExtType F);

// norm criterion for C: y^2 = d*f with f monic with the given K-factors
// and d = pi^vd * unit with residue ud; deficient iff d is a non-norm from
// the quadratic extension splitting f into conjugate odd halves
DeficiencyVerdict deficient_odd_factorization(const LRing& R, const std::vector<LocalFactor>& fs,
                                              int vd, const Fq& ud, int g);

// specialization when the splitting field is cyclic over the base: the
// unique quadratic subextension is read off the factor data (mixed factor
// shapes mean the splitting field is not cyclic: typed error)
DeficiencyVerdict deficient_cyclic(const LRing& R, const std::vector<LocalFactor>& fs, int vd,
                                   const Fq& ud, int g);

// archimedean case: degrees of the real irreducible factors of f and the
// sign of d; the unique quadratic extension is C/R
DeficiencyVerdict deficient_real(const std::vector<int>& factor_degrees, int sign_d, int g);

// minimal-regular-model criterion: components as (multiplicity, Frobenius
// orbit size); deficient iff gcd of the products does not divide g-1
DeficiencyVerdict deficient_from_model(const std::vector<std::pair<int, int>>& components, int g);

// epsilon(f): 1 iff the genus is even and every irreducible factor over
// the maximal unramified extension has even degree; for cube-free data
// this means no simple residue roots and every chain length odd
int epsilon_geometric(int g, int num_single_roots, const std::vector<int>& chain_lengths);

}  // namespace ktl
