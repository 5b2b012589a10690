#include "ktl/intmat.hpp"

#include <numeric>

namespace ktl {

namespace {

// reduce D(i,*) by pivot row t using floored division so remainders shrink
Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

Smith smith_normal_form(const MatZ& A) {
    const Eigen::Index m = A.rows(), n = A.cols();
    Smith s;
    s.U = MatZ::Identity(m, m);
    s.V = MatZ::Identity(n, n);
    s.D = A;
    MatZ& D = s.D;

    Eigen::Index t = 0;
    while (t < m && t < n) {
        // locate a nonzero entry of minimal absolute value in the submatrix
        Eigen::Index pi = -1, pj = -1;
        Int best = 0;
        for (Eigen::Index i = t; i < m; ++i)
            for (Eigen::Index j = t; j < n; ++j)
                if (D(i, j) != 0) {
                    Int a = abs(D(i, j));
                    if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
                }
        if (pi < 0) break;
        if (pi != t) { D.row(pi).swap(D.row(t)); s.U.row(pi).swap(s.U.row(t)); }
        if (pj != t) { D.col(pj).swap(D.col(t)); s.V.col(pj).swap(s.V.col(t)); }

        bool clean = true;
        for (Eigen::Index i = t + 1; i < m; ++i)
            if (D(i, t) != 0) {
                Int q = fdiv_q(D(i, t), D(t, t));
                if (q != 0) { D.row(i) -= q * D.row(t); s.U.row(i) -= q * s.U.row(t); }
                if (D(i, t) != 0) clean = false;
            }
        for (Eigen::Index j = t + 1; j < n; ++j)
            if (D(t, j) != 0) {
                Int q = fdiv_q(D(t, j), D(t, t));
                if (q != 0) { D.col(j) -= q * D.col(t); s.V.col(j) -= q * s.V.col(t); }
                if (D(t, j) != 0) clean = false;
            }
        if (!clean) continue;  // smaller pivot now exists

        // pivot must divide the rest of the submatrix
        bool divides = true;
        for (Eigen::Index i = t + 1; i < m && divides; ++i)
            for (Eigen::Index j = t + 1; j < n && divides; ++j)
                if (D(i, j) % D(t, t) != 0) {
                    D.row(t) += D.row(i);
                    s.U.row(t) += s.U.row(i);
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }

    for (Eigen::Index i = 0; i < m && i < n; ++i)
        if (D(i, i) < 0) { D.row(i) = -D.row(i); s.U.row(i) = -s.U.row(i); }
    return s;
}

std::vector<Int> elementary_divisors(const MatZ& A) {
    Smith s = smith_normal_form(A);
    std::vector<Int> d;
    for (Eigen::Index i = 0; i < A.rows() && i < A.cols(); ++i) d.push_back(s.D(i, i));
    return d;
}

Int det(MatZ A) {
    const Eigen::Index n = A.rows();
    if (n != A.cols()) throw domain_error("det: square matrix required");
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            Eigen::Index r = -1;
            for (Eigen::Index i = k + 1; i < n; ++i)
                if (A(i, k) != 0) { r = i; break; }
            if (r < 0) return 0;
            A.row(k).swap(A.row(r));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) {
                Int v = A(k, k) * A(i, j) - A(i, k) * A(k, j);
                A(i, j) = v / prev;  // exact (Bareiss)
            }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

int rank(MatZ A) {
    const Eigen::Index m = A.rows(), n = A.cols();
    int r = 0;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < n && row < m; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = row; i < m; ++i)
            if (A(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        A.row(piv).swap(A.row(row));
        for (Eigen::Index i = row + 1; i < m; ++i)
            if (A(i, col) != 0) {
                Int g = gcd(A(row, col), A(i, col));
                Int a = A(row, col) / g, b = A(i, col) / g;
                A.row(i) = a * A.row(i) - b * A.row(row);
            }
        ++row;
        ++r;
    }
    return r;
}

MatZ kernel(const MatZ& A) {
    Smith s = smith_normal_form(A);
    Eigen::Index r = 0;
    while (r < A.rows() && r < A.cols() && s.D(r, r) != 0) ++r;
    return s.V.rightCols(A.cols() - r);
}

bool solve(const MatZ& A, const MatZ& B, MatZ& X) {
    Smith s = smith_normal_form(A);
    MatZ C = s.U * B;  // D * (V^-1 X) = U B
    Eigen::Index r = 0;
    while (r < A.rows() && r < A.cols() && s.D(r, r) != 0) ++r;
    MatZ Y = MatZ::Zero(A.cols(), B.cols());
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
        for (Eigen::Index i = 0; i < r; ++i) {
            if (C(i, j) % s.D(i, i) != 0) return false;
            Y(i, j) = C(i, j) / s.D(i, i);
        }
        for (Eigen::Index i = r; i < A.rows(); ++i)
            if (C(i, j) != 0) return false;
    }
    X = s.V * Y;
    return true;
}

MatZ inverse_unimodular(const MatZ& U) {
    MatZ X;
    if (!solve(U, MatZ::Identity(U.rows(), U.rows()), X))
        throw domain_error("inverse_unimodular: matrix is not unimodular");
    return X;
}

Int lattice_index(const MatZ& G) {
    std::vector<Int> d = elementary_divisors(G);
    if ((Eigen::Index)d.size() < G.rows()) return 0;
    Int idx = 1;
    for (const Int& x : d) {
        if (x == 0) return 0;
        idx *= x;
    }
    return idx;
}

Int FinAb::order() const {
    Int o = 1;
    for (const Int& d : cyc) o *= d;
    return o;
}

int FinAb::dim2() const {
    int k = 0;
    for (const Int& d : cyc)
        if (d % 2 == 0) ++k;
    return k;
}

Int FinAb::torsion(const Int& e) const {
    Int o = 1;
    for (const Int& d : cyc) o *= gcd(d, e);
    return o;
}

FinAb cokernel_with_action(const MatZ& M, const MatZ& A) {
    const Eigen::Index m = M.rows();
    if (A.rows() != m || A.cols() != m)
        throw domain_error("cokernel_with_action: action size mismatch");
    Smith s = smith_normal_form(M);
    for (Eigen::Index i = 0; i < m; ++i)
        if (i >= M.cols() || s.D(i, i) == 0)
            throw domain_error("cokernel_with_action: quotient not finite");
    // sanity: A maps the column span into itself
    {
        MatZ X;
        if (!solve(M, A * M, X))
            throw check_error("cokernel_with_action: action does not preserve the lattice");
    }
    FinAb G;
    for (Eigen::Index i = 0; i < m; ++i) G.cyc.push_back(s.D(i, i));
    G.act = s.U * A * inverse_unimodular(s.U);
    return G;
}

Int fixed_order(const FinAb& G, const MatZ& T) {
    const Eigen::Index r = (Eigen::Index)G.cyc.size();
    if (r == 0) return 1;
    if (T.rows() != r || T.cols() != r) throw domain_error("fixed_order: size mismatch");
    MatZ B(r, 2 * r);
    B.leftCols(r) = T - MatZ::Identity(r, r);
    B.rightCols(r) = MatZ::Zero(r, r);
    for (Eigen::Index i = 0; i < r; ++i) B(i, r + i) = G.cyc[i];
    // #fixed = [Z^r : (T-1)Z^r + diag(cyc)Z^r]
    Int idx = lattice_index(B);
    if (idx == 0) throw check_error("fixed_order: degenerate relation lattice");
    return idx;
}

Int fixed_order_power(const FinAb& G, int power) {
    return fixed_order(G, mat_pow(G.act, power));
}

MatZ mat_pow(MatZ A, long e) {
    if (e < 0) throw domain_error("mat_pow: negative power");
    MatZ R = MatZ::Identity(A.rows(), A.cols());
    while (e > 0) {
        if (e & 1) R = R * A;
        A = A * A;
        e >>= 1;
    }
    return R;
}

}  // namespace ktl
