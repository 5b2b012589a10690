#include "ktl/twotorsion.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "ktl/errors.hpp"
#include "ktl/gf2.hpp"

namespace ktl {

namespace {

void check_action(const RootAction& a) {
    if (a.npoints < 2 || a.npoints % 2 != 0)
        throw domain_error("RootAction: point count must be even and positive");
    for (const Perm& g : a.gens)
        if (g.size() != a.npoints) throw domain_error("RootAction: generator size mismatch");
}

std::string perm_key(const Perm& g) {
    std::string s;
    s.reserve(g.size());
    for (int i = 0; i < g.size(); ++i) s.push_back((char)g(i));
    return s;
}

// rows of the homogeneous part of (s-1)x = phi(s)*ones over the generators
std::vector<std::vector<uint64_t>> generator_rows(const RootAction& a) {
    std::vector<std::vector<uint64_t>> out;
    for (const Perm& g : a.gens) {
        std::vector<uint64_t> rows;
        for (int w = 0; w < a.npoints; ++w)
            rows.push_back((uint64_t(1) << w) ^ (uint64_t(1) << g(w)));
        out.push_back(std::move(rows));
    }
    return out;
}

}  // namespace

int genus_of(const RootAction& a) {
    check_action(a);
    return a.npoints / 2 - 1;
}

std::vector<int> action_orbit_sizes(const RootAction& a) {
    check_action(a);
    std::vector<int> comp(a.npoints, -1);
    int nc = 0;
    for (int s = 0; s < a.npoints; ++s) {
        if (comp[s] >= 0) continue;
        std::deque<int> q = {s};
        comp[s] = nc;
        while (!q.empty()) {
            int w = q.front();
            q.pop_front();
            for (const Perm& g : a.gens) {
                for (int v : {g(w), inverse(g)(w)}) {
                    if (comp[v] < 0) {
                        comp[v] = nc;
                        q.push_back(v);
                    }
                }
            }
        }
        ++nc;
    }
    std::vector<int> sizes(nc, 0);
    for (int c : comp) ++sizes[c];
    return sizes;
}

int action_orbit_count(const RootAction& a) { return (int)action_orbit_sizes(a).size(); }

int two_torsion_dim_bruteforce(const RootAction& a) {
    check_action(a);
    int np = a.npoints, t = (int)a.gens.size();
    if (np + t > 63) throw domain_error("two_torsion_dim_bruteforce: too many unknowns");
    std::vector<uint64_t> rows;
    for (int j = 0; j < t; ++j)
        for (int w = 0; w < np; ++w)
            rows.push_back((uint64_t(1) << w) ^ (uint64_t(1) << a.gens[j](w)) ^
                           (uint64_t(1) << (np + j)));
    uint64_t sum_row = (uint64_t(1) << np) - 1;
    rows.push_back(sum_row);
    int dim = (int)gf2::kernel(rows, np + t).size();
    return dim - 1;  // quotient by the all-ones line
}

std::vector<uint32_t> index2_characters(const std::vector<Perm>& gens, size_t group_cap) {
    int t = (int)gens.size();
    if (t == 0) return {0};
    if (t > 32) throw domain_error("index2_characters: too many generators");
    int np = gens[0].size();
    // close the group, labelling each element with the parity signature of
    // its defining word; every revisit yields a linear relation among the
    // generator parities
    std::unordered_map<std::string, uint32_t> sig;
    std::deque<Perm> q;
    Perm id(np);
    sig[perm_key(id)] = 0;
    q.push_back(id);
    std::vector<uint64_t> relations;
    while (!q.empty()) {
        Perm cur = q.front();
        q.pop_front();
        uint32_t s = sig[perm_key(cur)];
        for (int j = 0; j < t; ++j) {
            Perm nxt = compose(cur, gens[j]);
            uint32_t ns = s ^ (uint32_t(1) << j);
            auto it = sig.find(perm_key(nxt));
            if (it == sig.end()) {
                if (sig.size() >= group_cap)
                    throw domain_error("index2_characters: group too large");
                sig[perm_key(nxt)] = ns;
                q.push_back(nxt);
            } else if (it->second != ns) {
                relations.push_back(it->second ^ ns);
            }
        }
    }
    std::vector<uint32_t> out;
    for (uint64_t v : gf2::kernel(relations, t)) out.push_back((uint32_t)v);
    // include zero and all subgroup sums
    std::vector<uint32_t> all = {0};
    for (uint32_t b : out) {
        size_t limit = all.size();
        for (size_t i = 0; i < limit; ++i) all.push_back(all[i] ^ b);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

int two_torsion_dim(const RootAction& a, size_t group_cap) {
    check_action(a);
    std::vector<int> sizes = action_orbit_sizes(a);
    int n = (int)sizes.size();
    bool has_odd = std::any_of(sizes.begin(), sizes.end(), [](int s) { return s % 2 != 0; });
    if (has_odd) return n - 2;
    int g = genus_of(a);
    if (g % 2 == 0) return n - 1;
    // odd genus, all orbits even: count solvable index-2 characters
    auto chars = index2_characters(a.gens, group_cap);
    auto hom = generator_rows(a);
    int np = a.npoints, t = (int)a.gens.size();
    int solvable = 0;
    for (uint32_t phi : chars) {
        std::vector<uint64_t> rows;
        std::vector<int> rhs;
        for (int j = 0; j < t; ++j)
            for (int w = 0; w < np; ++w) {
                rows.push_back(hom[j][w]);
                rhs.push_back((phi >> j) & 1);
            }
        if (gf2::solvable(rows, rhs, np)) ++solvable;
    }
    int m = 0;
    while ((1 << (m + 1)) <= solvable) ++m;
    if ((1 << m) != solvable)
        throw check_error("two_torsion_dim: solvable characters are not a subgroup");
    return n - 1 + m;
}

int two_torsion_dim_cyclic(const std::vector<int>& orbit_sizes) {
    int total = 0;
    for (int s : orbit_sizes) {
        if (s <= 0) throw domain_error("two_torsion_dim_cyclic: bad orbit size");
        total += s;
    }
    if (total % 2 != 0) throw domain_error("two_torsion_dim_cyclic: odd point count");
    int n = (int)orbit_sizes.size();
    for (int s : orbit_sizes)
        if (s % 2 != 0) return n - 2;
    int g = total / 2 - 1;
    return (g % 2 == 0) ? n - 1 : n;  // the unique nontrivial character is solvable
}

}  // namespace ktl
