#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ktl/kt.hpp"
#include "ktl/rng.hpp"

namespace ktl {

// ---- global curves over Q ----

// which local hypothesis holds at a place; entries are produced by running
// the local classification machinery, never taken on faith from the input
struct PlaceCondition {
    std::string place;      // "infinity", "2", or an odd prime
    std::string condition;  // "archimedean" | "good-ordinary" | "good" |
                            // "cube-free" | "unsupported" | "unfactored"
};

struct GlobalCurve {
    ZPoly f;  // integral, separable
    int g = 0;
    std::optional<OrdinaryCert> cert;  // y^2 = F (F + 4 H) shape at p = 2
    std::vector<PlaceCondition> certificate;
};

// examines infinity, 2, and every odd prime of disc f.  At 2 the certificate
// is validated; at odd p the local verifier is run over the unramified
// quadratic extension and its case tag is recorded.  An unfactored composite
// cofactor of the discriminant is reported as its own "unfactored" entry.
std::vector<PlaceCondition> classify_places(const ZPoly& f, int g,
                                            const std::optional<OrdinaryCert>& cert);

// random y^2 = F(x) (F(x) + 4 H(x)) with F of degree g+1 with odd leading
// coefficient whose mod-2 reduction is separable with all-odd-degree
// irreducible factors, and H of degree <= g coprime to F mod 2.  The output
// has disc != 0 re-verified exactly, a validated certificate at 2, and a
// fully factored discriminant whose odd prime factors all fit the local
// verifier's residue fields (rejection sampling on all of these).
GlobalCurve generate_ordinary_curve(int g, uint64_t seed);

// ---- global product check over Q ----

struct GlobalReport {
    Int d;  // L = Q(sqrt d), d squarefree, not 0 or 1
    std::vector<KtReport> local_reports;
    std::vector<std::string> places_processed;
    int global_symbol_product = 1;    // product of the supported artin terms
    bool product_formula_ok = false;  // all places supported and product = +1
    std::string verdict;              // "full" | "partial" | "failure"
    std::string note;
};

// runs the local verifier at every relevant non-split place: infinity, 2,
// and the odd primes of disc * d.  Odd places where d is a local square are
// skipped (their contributions are trivial).  Any unsupported place
// downgrades the verdict to "partial"; a violated or inconsistent local
// verdict gives "failure".
GlobalReport global_kt_check(const GlobalCurve& c, const Int& d);

// product of the local Hilbert symbols (a,b)_v over v in {infinity, 2, odd
// primes of a and b}; true iff the product is +1
bool product_formula_check(const mpq_class& a, const mpq_class& b);

// full factorization: trial division, then Brent-cycle splitting on the
// cofactor; false when a composite piece resists (out then holds the found
// prime factors only)
bool factor_full(const Int& a, std::vector<std::pair<Int, int>>& out);

// ---- random local instances (deterministic in the Rng state) ----

// unit leading coefficient and unit discriminant; degree in [2 gmin + 1, 2 gmax + 2]
HyperCurve random_good_curve(Rng& rng, long p, int resdeg, int gmin = 2, int gmax = 3);
// cube-free reduction from distinct irreducible residue pieces
HyperCurve random_cubefree_curve(Rng& rng, long p, int resdeg, int gmin = 2, int gmax = 4);
HyperCurve random_real_curve(Rng& rng, int gmin = 2, int gmax = 4);

// ---- serialization ----

std::string curve_to_json(const HyperCurve& c);
HyperCurve curve_from_json(const std::string& text);
std::string global_curve_to_json(const GlobalCurve& c);
GlobalCurve global_curve_from_json(const std::string& text);
std::string global_report_to_json(const GlobalReport& r);
// wraps a report in {"report": ..., "provenance": {seed, precision, versions}}
std::string with_provenance(const std::string& report_json, uint64_t seed);

// ---- sweep orchestration ----

struct SweepItem {
    std::string key;  // total order of the deterministic work queue
    HyperCurve curve;
    ExtType ext = ExtType::unram;
    bool archimedean = false;
};

struct SweepResult {
    SweepItem item;
    KtReport report;
    std::string error;  // non-empty when the verifier threw
};

// deterministic work queue; case_name in {"good", "unram", "ram-cubefree",
// "real"}.  Ramified cases enqueue both ramified extensions per curve, the
// good case all three.
std::vector<SweepItem> make_sweep(const std::string& case_name, const std::vector<long>& ps,
                                  int gmin, int gmax, int count, uint64_t seed);
// bounded worker pool over the queue; results are returned in key order
// regardless of the number of workers
std::vector<SweepResult> run_sweep(const std::vector<SweepItem>& items, int jobs);
std::string sweep_csv(const std::vector<SweepResult>& rs);
// curve + place + extension, ready to re-run a single failing instance
std::string reproducer_json(const SweepItem& item);

// 42 unless the environment variable KTLOCAL_SEED is set
uint64_t default_seed();

// fixture matrices of the Tamagawa-parity determinant: a chain of k
// multiplicity-2 orbit classes ending in two reduced leaf classes, and the
// variant with the leaves fused into one orbit of twice the size
MatZ parity_chain_block(int k);
MatZ parity_fused_block(int n);

}  // namespace ktl
