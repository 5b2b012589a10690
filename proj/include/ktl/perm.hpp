#pragma once
#include <vector>

#include "ktl/errors.hpp"

namespace ktl {

// permutation of {0..n-1}; img[i] = image of i
struct Perm {
    std::vector<int> img;

    Perm() = default;
    explicit Perm(int n) : img(n) {
        for (int i = 0; i < n; ++i) img[i] = i;
    }
    explicit Perm(std::vector<int> v) : img(std::move(v)) { validate(); }

    int size() const { return (int)img.size(); }
    int operator()(int i) const { return img[i]; }

    void validate() const {
        std::vector<char> seen(img.size(), 0);
        for (int v : img) {
            if (v < 0 || v >= (int)img.size() || seen[v])
                throw domain_error("Perm: not a permutation");
            seen[v] = 1;
        }
    }
};

inline Perm compose(const Perm& a, const Perm& b) {  // (a*b)(i) = a(b(i))
    if (a.size() != b.size()) throw domain_error("compose: size mismatch");
    Perm c(a.size());
    for (int i = 0; i < a.size(); ++i) c.img[i] = a(b(i));
    return c;
}

inline Perm inverse(const Perm& a) {
    Perm c(a.size());
    for (int i = 0; i < a.size(); ++i) c.img[a(i)] = i;
    return c;
}

inline std::vector<std::vector<int>> cycles(const Perm& a) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(a.size(), 0);
    for (int i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        int j = i;
        while (!seen[j]) {
            seen[j] = 1;
            c.push_back(j);
            j = a(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<int> orbit_sizes(const Perm& a) {
    std::vector<int> out;
    for (auto& c : cycles(a)) out.push_back((int)c.size());
    return out;
}

// sign as (-1)^(n - #cycles)
inline int permutation_sign(const Perm& a) {
    int n = a.size(), c = (int)cycles(a).size();
    return ((n - c) % 2 == 0) ? 1 : -1;
}

inline long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    long g = a;
    long x = b;
    while (x) { long t = g % x; g = x; x = t; }
    return a / g * b;
}

inline int perm_order(const Perm& a) {
    long o = 1;
    for (auto& c : cycles(a)) o = lcm_long(o, (long)c.size());
    return (int)o;
}

}  // namespace ktl
