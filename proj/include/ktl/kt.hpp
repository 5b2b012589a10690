#pragma once
#include <optional>
#include <string>
#include <vector>

#include "ktl/model.hpp"
#include "ktl/twist.hpp"

namespace ktl {

// verification case for one (curve, place, quadratic extension)
enum class CaseTag {
    real,
    split,
    good_odd_unram,
    good_odd_ram,
    unram_odd,
    ram_cubefree_odd,
    char2_good_unram,
    char2_ordinary_ram,
    unsupported,
};
const char* case_tag_name(CaseTag t);

// "violated" is reserved for a failing identity whose cross checks all
// pass; a failing cross check downgrades the run to "inconsistent" (an
// internal error, not a counterexample)
enum class KtVerdict { holds, violated, inconsistent, inapplicable };
const char* verdict_name(KtVerdict v);

struct CrossCheck {
    std::string name;
    bool pass = false;
};

// report for the local identity
//   w(J/K) w(J^L/K) = ((-1)^g D, L/K) i_d(C) i_d(C^L) (-1)^{dim J(K)/N J(L)}
// with every term computed along the most independent path available;
// root numbers and the norm cokernel enter only through their proven
// avatars (conductor parity, Tamagawa parities, |J(K)[2]|)
struct KtReport {
    std::string place;      // "infinity", "3", "5^2" (p^resdeg), "2"
    std::string extension;  // "C/R", "split", "unram", "ram-pi", "ram-upi", "Q2(sqrt d)"
    CaseTag case_tag = CaseTag::unsupported;
    KtVerdict verdict = KtVerdict::inapplicable;

    int artin_symbol_value = 1;  // ((-1)^g D, L/K) on the exact discriminant
    int disc_symbol = 1;         // (D, L/K)
    std::optional<int> i_d_C;
    std::optional<int> i_d_CL;
    std::optional<int> composite_A_term;
    std::optional<int> composite_B_term;
    std::optional<int> dim_two_torsion;   // dim_F2 J(K)[2]
    std::optional<int> conductor_parity;  // f(J/K) mod 2
    std::optional<int> eps_C_K;           // deficiency indicator of C over K
    std::optional<int> eps_C;             // geometric epsilon over the unramified closure
    std::optional<int> eps_CL_K;          // deficiency indicator of the twist over K

    std::vector<CrossCheck> cross_checks;
    std::string note;

    bool all_checks_pass() const;
};

// stable JSON encoding (keys sorted); used verbatim by the CLI and harness
std::string report_to_json(const KtReport& r);

std::string place_string(const BaseField& b);

// ---- case verifiers (throw inapplicable_error when preconditions fail) ----

// archimedean place, extension C/R
KtReport kt_verify_real(const HyperCurve& c);

// odd residue characteristic, good reduction (unit leading coefficient and
// unit discriminant); both unramified and ramified extensions
KtReport kt_verify_good_odd(const HyperCurve& c, ExtType ext);

// odd residue characteristic, cube-free reduction, unramified quadratic
// extension: conductor-parity side against the norm/deficiency side
KtReport kt_verify_unram_odd(const HyperCurve& c);

// odd residue characteristic, cube-free reduction, ramified quadratic
// extension: composite_A * composite_B against (D, L/K) computed twice
KtReport kt_verify_ram_cubefree(const HyperCurve& c, ExtType ext);

// the two independent discriminant paths of the ramified cube-free case
int disc_symbol_exact(const HyperCurve& c, ExtType ext);
int disc_symbol_rootsign(const CubeFreeData& d, ExtType ext);

// good ordinary reduction certificate at 2: the curve is y^2 = f (f + 4h)
// with f separable mod 2 into odd-degree factors and h coprime to f mod 2
struct OrdinaryCert {
    ZPoly f;
    ZPoly h;
};
bool ordinary_cert_valid(const ZPoly& curve_f, int g, const OrdinaryCert& cert);

// base Q_2; L = Q_2(sqrt d) for the exact integer d (any representative of
// the square class); without a valid certificate the case is inapplicable
KtReport kt_verify_char2(const HyperCurve& c, const Int& d, const std::optional<OrdinaryCert>& cert);

// trivial contribution of a place that splits in L/K
KtReport kt_report_split(const std::string& place);

// dispatcher for odd p: picks the most specific supported case, handling
// non-unit leading coefficients by an exact change of coordinates plus, when
// a quadratic twist remains, transport through the twist compatibility layer
KtReport kt_verify(const HyperCurve& c, ExtType ext);

// multiplicative consistency of the verifications over the three quadratic
// extensions of Q_p, together with the discriminant square-class assertion
// for quadratic twists; throws inapplicable_error if a leg is unsupported
bool twist_compat_check(const ZPoly& f, long p);

}  // namespace ktl
