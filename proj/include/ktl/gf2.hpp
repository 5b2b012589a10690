#pragma once
#include <cstdint>
#include <vector>

#include "ktl/errors.hpp"

namespace ktl {

// dense F_2 rows as 64-bit masks; enough for modules of dimension <= 64
namespace gf2 {

inline int rank(std::vector<uint64_t> rows) {
    int r = 0;
    for (int bit = 0; bit < 64; ++bit) {
        uint64_t m = uint64_t(1) << bit;
        size_t piv = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (rows[i] & m) { piv = i; break; }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != (size_t)r && (rows[i] & m)) rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

// solvability of A x = b where rows hold the columns-as-bits of each equation
inline bool solvable(std::vector<uint64_t> rows, std::vector<int> rhs, int ncols) {
    if (ncols > 63) throw domain_error("gf2::solvable: too many columns");
    for (size_t i = 0; i < rows.size(); ++i)
        rows[i] |= (uint64_t(rhs[i] & 1) << ncols);
    int full = rank(rows);
    for (size_t i = 0; i < rows.size(); ++i) rows[i] &= ~(uint64_t(1) << ncols);
    return full == rank(rows);
}

// basis of {x : A x = 0}, x over ncols bits
inline std::vector<uint64_t> kernel(std::vector<uint64_t> rows, int ncols) {
    int nr = (int)rows.size();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < ncols; ++c) {
        uint64_t m = uint64_t(1) << c;
        int piv = -1;
        for (int i = r; i < nr; ++i)
            if (rows[i] & m) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        for (int i = 0; i < nr; ++i)
            if (i != r && (rows[i] & m)) rows[i] ^= rows[r];
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<uint64_t> basis;
    std::vector<char> is_piv(ncols, 0);
    for (int c : pivot_col) is_piv[c] = 1;
    for (int c = 0; c < ncols; ++c) {
        if (is_piv[c]) continue;
        uint64_t v = uint64_t(1) << c;
        for (int i = 0; i < r; ++i)
            if (rows[i] & (uint64_t(1) << c)) v |= uint64_t(1) << pivot_col[i];
        basis.push_back(v);
    }
    return basis;
}

}  // namespace gf2
}  // namespace ktl
