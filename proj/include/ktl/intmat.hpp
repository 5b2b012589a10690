#pragma once
#include <Eigen/Core>
#include <gmpxx.h>

#include <vector>

#include "ktl/errors.hpp"

namespace Eigen {
template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    typedef mpz_class Real;
    typedef mpz_class NonInteger;
    typedef mpz_class Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};
}  // namespace Eigen

namespace ktl {

using Int = mpz_class;
using MatZ = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw domain_error("integer does not fit in long");
    return x.get_si();
}

// U*A*V = D with U,V unimodular, D diagonal, d_i >= 0 and d_i | d_{i+1}
struct Smith {
    MatZ U, D, V;
};

Smith smith_normal_form(const MatZ& A);

// nonnegative diagonal of the Smith form, length min(m,n)
std::vector<Int> elementary_divisors(const MatZ& A);

Int det(MatZ A);        // exact, Bareiss
int rank(MatZ A);       // rank over Q, fraction-free elimination
MatZ kernel(const MatZ& A);  // columns: basis of the saturated kernel lattice
// solve A X = B over Z; returns false when no integral solution exists
bool solve(const MatZ& A, const MatZ& B, MatZ& X);
MatZ inverse_unimodular(const MatZ& U);
// index of the column span of G in Z^rows; 0 when the span has infinite index
Int lattice_index(const MatZ& G);

// finite abelian group  +_i Z/cyc[i]  with an endomorphism given by an integer
// matrix acting on coordinates (columns = images of generators)
struct FinAb {
    std::vector<Int> cyc;  // invariant factors, d_1 | d_2 | ..., all >= 1
    MatZ act;

    Int order() const;
    int dim2() const;              // F_2-dimension of the 2-torsion
    Int torsion(const Int& e) const;  // order of the e-torsion subgroup
};

// Z^ambient / col-span(M) together with the action induced by A; requires the
// quotient to be finite and A * col-span(M) inside col-span(M)
FinAb cokernel_with_action(const MatZ& M, const MatZ& A);

// number of solutions of T x = x in the group (T an integer matrix on coords)
Int fixed_order(const FinAb& G, const MatZ& T);
inline Int fixed_order(const FinAb& G) { return fixed_order(G, G.act); }

// order of the fixed subgroup of act^power (power >= 0); enumeration-free
Int fixed_order_power(const FinAb& G, int power);

MatZ mat_pow(MatZ A, long e);

}  // namespace ktl
