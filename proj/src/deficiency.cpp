#include "ktl/deficiency.hpp"

#include <numeric>

#include "ktl/errors.hpp"

namespace ktl {

namespace {

void check_factor(const LocalFactor& mf) {
    if (mf.fdeg < 1 || (mf.e != 1 && mf.e != 2) || (mf.w_chi != 1 && mf.w_chi != -1))
        throw domain_error("LocalFactor: bad field data");
}

DeficiencyVerdict verdict(bool deficient, DefPath path) {
    DeficiencyVerdict v;
    v.deficient = deficient;
    v.epsilon = deficient ? 1 : 0;
    v.i_d = deficient ? -1 : 1;
    v.path = path;
    return v;
}

int total_degree(const std::vector<LocalFactor>& fs) {
    int t = 0;
    for (const LocalFactor& mf : fs) {
        check_factor(mf);
        t += mf.e * mf.fdeg;
    }
    return t;
}

}  // namespace

bool factor_field_contains(const LocalFactor& mf, ExtType F) {
    check_factor(mf);
    switch (F) {
        case ExtType::unram:
            return mf.fdeg % 2 == 0;
        case ExtType::ram_pi:
            return mf.e == 2 && mf.w_chi == 1;
        case ExtType::ram_upi: {
            // chi_{k_fdeg} of the base nonsquare is (-1)^fdeg
            int chi_u = (mf.fdeg % 2 == 0) ? 1 : -1;
            return mf.e == 2 && chi_u * mf.w_chi == 1;
        }
    }
    throw domain_error("factor_field_contains: bad extension type");
}

bool odd_factorization_exists(const std::vector<LocalFactor>& fs, ExtType F) {
    if (fs.empty()) throw domain_error("odd_factorization_exists: no factors");
    for (const LocalFactor& mf : fs)
        if (!factor_field_contains(mf, F)) return false;
    return true;
}

DeficiencyVerdict deficient_odd_factorization(const LRing& R, const std::vector<LocalFactor>& fs,
                                              int vd, const Fq& ud, int g) {
    if (g < 1) throw domain_error("deficient_odd_factorization: bad genus");
    int tot = total_degree(fs);
    if (tot != 2 * g + 1 && tot != 2 * g + 2)
        throw domain_error("deficient_odd_factorization: factor degrees do not match genus");
    if (g % 2 != 0) return verdict(false, DefPath::trivial_odd_genus);
    for (const LocalFactor& mf : fs)
        if (mf.e * mf.fdeg % 2 != 0) return verdict(false, DefPath::odd_factor);
    // all factor degrees even; the quadratic splitting all root fields is
    // unique for even genus since deg f = 2g+2 is 2 mod 4
    int found = 0;
    ExtType F = ExtType::unram;
    for (ExtType cand : {ExtType::unram, ExtType::ram_pi, ExtType::ram_upi}) {
        if (odd_factorization_exists(fs, cand)) {
            ++found;
            F = cand;
        }
    }
    if (found > 1)
        throw check_error("deficient_odd_factorization: splitting quadratic not unique");
    if (found == 0)
        throw inapplicable_error("deficient_odd_factorization: no odd factorization over a quadratic");
    return verdict(artin_symbol(R, F, vd, ud) == -1, DefPath::norm_criterion);
}

DeficiencyVerdict deficient_cyclic(const LRing& R, const std::vector<LocalFactor>& fs, int vd,
                                   const Fq& ud, int g) {
    if (g % 2 != 0 || g < 1) {
        if (g < 1) throw domain_error("deficient_cyclic: bad genus");
        return verdict(false, DefPath::trivial_odd_genus);
    }
    bool all_even = true;
    for (const LocalFactor& mf : fs) {
        check_factor(mf);
        if (mf.e * mf.fdeg % 2 != 0) all_even = false;
    }
    if (!all_even) return verdict(false, DefPath::odd_factor);
    // cyclic splitting field: every factor is either unramified of even
    // residue degree (quadratic subextension unramified) or ramified with
    // odd residue degree (quadratic subextension K(sqrt(c pi)) with the
    // same c for every factor); anything else is not cyclic
    bool any_unram = false, any_ram = false;
    int ram_w = 0;
    for (const LocalFactor& mf : fs) {
        if (mf.e == 1) {
            any_unram = true;
        } else if (mf.fdeg % 2 == 0) {
            throw inapplicable_error("deficient_cyclic: splitting field not cyclic");
        } else {
            any_ram = true;
            if (ram_w == 0) ram_w = mf.w_chi;
            if (ram_w != mf.w_chi)
                throw inapplicable_error("deficient_cyclic: splitting field not cyclic");
        }
    }
    if (any_unram && any_ram)
        throw inapplicable_error("deficient_cyclic: splitting field not cyclic");
    ExtType F;
    if (any_unram)
        F = ExtType::unram;
    else
        F = (ram_w == 1) ? ExtType::ram_pi : ExtType::ram_upi;
    return verdict(artin_symbol(R, F, vd, ud) == -1, DefPath::norm_criterion);
}

DeficiencyVerdict deficient_real(const std::vector<int>& factor_degrees, int sign_d, int g) {
    if (g < 1) throw domain_error("deficient_real: bad genus");
    if (sign_d != 1 && sign_d != -1) throw domain_error("deficient_real: bad sign");
    int tot = 0;
    for (int d : factor_degrees) {
        if (d < 1 || d > 2) throw domain_error("deficient_real: factors over R have degree 1 or 2");
        tot += d;
    }
    if (tot != 2 * g + 1 && tot != 2 * g + 2)
        throw domain_error("deficient_real: factor degrees do not match genus");
    if (g % 2 != 0) return verdict(false, DefPath::trivial_odd_genus);
    for (int d : factor_degrees)
        if (d % 2 != 0) return verdict(false, DefPath::odd_factor);
    return verdict(sign_d == -1, DefPath::archimedean);
}

DeficiencyVerdict deficient_from_model(const std::vector<std::pair<int, int>>& components, int g) {
    if (g < 1) throw domain_error("deficient_from_model: bad genus");
    if (components.empty()) throw domain_error("deficient_from_model: empty fibre");
    int gg = 0;
    for (auto [mult, orb] : components) {
        if (mult < 1 || orb < 1) throw domain_error("deficient_from_model: bad component");
        gg = std::gcd(gg, mult * orb);
    }
    if (gg != 1 && gg != 2)
        throw check_error("deficient_from_model: component gcd outside {1,2}");
    bool deficient = (g - 1) % gg != 0;  // g=1 gives g-1=0, divisible by anything
    return verdict(deficient, DefPath::model);
}

int epsilon_geometric(int g, int num_single_roots, const std::vector<int>& chain_lengths) {
    if (g < 1 || num_single_roots < 0) throw domain_error("epsilon_geometric: bad input");
    for (int n : chain_lengths)
        if (n < 1) throw domain_error("epsilon_geometric: bad chain length");
    if (g % 2 != 0 || num_single_roots > 0) return 0;
    for (int n : chain_lengths)
        if (n % 2 == 0) return 0;
    return 1;
}

}  // namespace ktl
