#include "ktl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace ktl {

namespace {

using nlohmann::json;

constexpr uint64_t kHarnessSeed = 0x6861726eull;

// residue fields use word-sized arithmetic; mirrors the make_field bound
constexpr long kMaxFieldP = 1L << 20;

const char* kModuleNames[] = {"algebra",    "localfield", "twotorsion", "deficiency",
                              "lattice",    "model",      "twist",      "kt",
                              "harness"};

Int ipow(long p, int e) {
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return q;
}

BaseField base_qp(long p, int resdeg = 1) {
    BaseField b;
    b.kind = BaseField::Kind::Qp;
    b.p = p;
    b.resdeg = resdeg;
    return b;
}

BaseField base_r() {
    BaseField b;
    b.kind = BaseField::Kind::R;
    return b;
}

BaseField base_q() {
    BaseField b;
    b.kind = BaseField::Kind::Q;
    return b;
}

// Brent cycle detection with batched gcds; deterministic, bounded effort
Int brent_rho(const Int& n, long c0) {
    const long kBatch = 128;
    const long kCap = 1 << 21;
    Int y = 2, x, q = 1, g = 1, ys;
    Int c(c0);
    long r = 1;
    auto step = [&](Int& v) { v = (v * v + c) % n; };
    while (g == 1 && r < kCap) {
        x = y;
        for (long i = 0; i < r; ++i) step(y);
        long k = 0;
        while (k < r && g == 1) {
            ys = y;
            long lim = std::min(kBatch, r - k);
            for (long i = 0; i < lim; ++i) {
                step(y);
                q = q * abs(x - y) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
        }
        r *= 2;
    }
    if (g == n) {
        // batched gcd overshot the divisor: backtrack one step at a time
        g = 1;
        while (g == 1) {
            step(ys);
            Int t = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g > 1 && g < n) return g;
    return Int(0);
}

bool split_composite(const Int& n, std::vector<Int>& primes) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        primes.push_back(n);
        return true;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Int r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        return split_composite(r, primes) && split_composite(r, primes);
    }
    for (long c : {1, 3, 5, 7, 11, 13, 17, 19}) {
        Int g = brent_rho(n, c);
        if (g != 0) return split_composite(g, primes) && split_composite(n / g, primes);
    }
    return false;
}

std::string int_str(const Int& a) { return a.get_str(); }

json zpoly_json(const ZPoly& f) {
    json a = json::array();
    for (const Int& c : f) a.push_back(int_str(c));
    return a;
}

ZPoly zpoly_from_json(const json& a, const char* what) {
    if (!a.is_array()) throw domain_error(std::string(what) + ": coefficient array expected");
    ZPoly f;
    for (const auto& c : a) {
        if (c.is_string())
            f.push_back(Int(c.get<std::string>()));
        else if (c.is_number_integer())
            f.push_back(Int(c.get<long>()));
        else
            throw domain_error(std::string(what) + ": integer or decimal string expected");
    }
    return zp_trim(f);
}

json base_json(const BaseField& b) {
    json j;
    switch (b.kind) {
        case BaseField::Kind::Qp: j["kind"] = "Qp"; break;
        case BaseField::Kind::R: j["kind"] = "R"; break;
        case BaseField::Kind::Q: j["kind"] = "Q"; break;
    }
    j["p"] = b.p;
    j["resdeg"] = b.resdeg;
    return j;
}

BaseField base_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw domain_error("curve_from_json: base.kind required");
    std::string kind = j.at("kind").get<std::string>();
    BaseField b;
    if (kind == "Qp") {
        b.kind = BaseField::Kind::Qp;
        if (!j.contains("p")) throw domain_error("curve_from_json: base.p required for Qp");
        b.p = j.at("p").is_string() ? std::stol(j.at("p").get<std::string>())
                                    : j.at("p").get<long>();
        b.resdeg = j.value("resdeg", 1);
    } else if (kind == "R") {
        b.kind = BaseField::Kind::R;
    } else if (kind == "Q") {
        b.kind = BaseField::Kind::Q;
    } else {
        throw domain_error("curve_from_json: unknown base kind " + kind);
    }
    return b;
}

std::string ext_name(ExtType e) {
    switch (e) {
        case ExtType::unram: return "unram";
        case ExtType::ram_pi: return "ram-pi";
        case ExtType::ram_upi: return "ram-upi";
    }
    return "?";
}

// odd primes with nontrivial entries, ascending; false if a cofactor resists
bool odd_primes_of(const Int& a, std::vector<Int>& out, Int& cofactor) {
    cofactor = 1;
    std::vector<std::pair<Int, int>> fs;
    bool full = factor_full(a, fs);
    for (auto& [p, e] : fs)
        if (p != 2) out.push_back(p);
    if (!full) {
        Int rem = abs(a);
        for (auto& [p, e] : fs)
            for (int i = 0; i < e; ++i) rem /= p;
        cofactor = rem;
    }
    return full;
}

}  // namespace

bool factor_full(const Int& a, std::vector<std::pair<Int, int>>& out) {
    out.clear();
    if (a == 0) throw domain_error("factor_full: zero");
    if (!factor_int(a, out)) {
        Int rem = abs(a);
        for (auto& [p, e] : out)
            for (int i = 0; i < e; ++i) rem /= p;
        std::vector<Int> primes;
        if (!split_composite(rem, primes)) return false;
        std::sort(primes.begin(), primes.end());
        for (size_t i = 0; i < primes.size();) {
            size_t j = i;
            while (j < primes.size() && primes[j] == primes[i]) ++j;
            out.emplace_back(primes[i], (int)(j - i));
            i = j;
        }
        std::sort(out.begin(), out.end());
    }
    return true;
}

std::vector<PlaceCondition> classify_places(const ZPoly& f, int g,
                                            const std::optional<OrdinaryCert>& cert) {
    std::vector<PlaceCondition> out;
    Int disc = zp_disc(f);
    if (disc == 0) throw domain_error("classify_places: f is not separable");
    out.push_back({"infinity", "archimedean"});
    out.push_back({"2", cert && ordinary_cert_valid(f, g, *cert) ? "good-ordinary"
                                                                 : "unsupported"});
    std::vector<Int> ps;
    Int cofactor;
    bool full = odd_primes_of(disc, ps, cofactor);
    for (const Int& p : ps) {
        if (p >= kMaxFieldP) {
            out.push_back({int_str(p), "unsupported"});
            continue;
        }
        HyperCurve cp = make_curve(base_qp(p.get_si()), f);
        KtReport rep = kt_verify(cp, ExtType::unram);
        std::string cond = "unsupported";
        if (rep.verdict != KtVerdict::inapplicable) {
            if (rep.case_tag == CaseTag::good_odd_unram || rep.case_tag == CaseTag::good_odd_ram)
                cond = "good";
            else
                cond = "cube-free";
        }
        out.push_back({int_str(p), cond});
    }
    if (!full) out.push_back({int_str(cofactor), "unfactored"});
    return out;
}

GlobalCurve generate_ordinary_curve(int g, uint64_t seed) {
    if (g < 2) throw domain_error("generate_ordinary_curve: g >= 2 required");
    Rng rng(splitmix64(seed) ^ splitmix64(0x6f726421ull + (uint64_t)g));
    FqF F2 = make_field(2, 1);
    while (true) {
        ZPoly F(g + 2);
        for (int i = 0; i <= g; ++i) F[i] = Int(rng.range(-4, 4));
        F[g + 1] = Int(rng.coin() ? 1 : -1) * Int(rng.coin() ? 1 : 3);
        FqPoly Fbar = zp_reduce(F, F2);
        auto facs = factor_poly(Fbar, kHarnessSeed);
        bool shape_ok = poly_deg(Fbar) == g + 1;
        for (auto& fa : facs)
            shape_ok = shape_ok && fa.mult == 1 && poly_deg(fa.poly) % 2 == 1;
        if (!shape_ok) continue;
        ZPoly H(g + 1);
        for (int i = 0; i <= g; ++i) H[i] = Int(rng.range(-4, 4));
        H = zp_trim(H);
        OrdinaryCert cert{F, H};
        ZPoly f = zp_mul(F, zp_add(F, zp_scale(Int(4), H)));
        if (zp_disc(f) == 0) continue;
        if (!ordinary_cert_valid(f, g, cert)) continue;
        // every odd bad prime must fit the local verifier's residue fields
        std::vector<std::pair<Int, int>> fs;
        if (!factor_full(zp_disc(f), fs)) continue;
        bool smooth = true;
        for (auto& [q, e] : fs) smooth = smooth && (q == 2 || q < kMaxFieldP);
        if (!smooth) continue;
        GlobalCurve c;
        c.f = f;
        c.g = g;
        c.cert = cert;
        c.certificate = classify_places(f, g, cert);
        return c;
    }
}

GlobalReport global_kt_check(const GlobalCurve& c, const Int& d) {
    if (d == 0 || d == 1) throw domain_error("global_kt_check: d must not be 0 or 1");
    std::vector<std::pair<Int, int>> dfs;
    if (!factor_full(d, dfs)) throw domain_error("global_kt_check: cannot factor d");
    for (auto& [p, e] : dfs)
        if (e > 1) throw domain_error("global_kt_check: d must be squarefree");
    Int disc = zp_disc(c.f);
    if (disc == 0) throw domain_error("global_kt_check: f is not separable");

    GlobalReport R;
    R.d = d;

    // the real place: Q(sqrt d) splits there exactly when d > 0
    if (d > 0) {
        R.local_reports.push_back(kt_report_split("infinity"));
    } else {
        R.local_reports.push_back(kt_verify_real(make_curve(base_r(), c.f)));
    }
    R.places_processed.push_back("infinity");

    R.local_reports.push_back(kt_verify_char2(make_curve(base_qp(2), c.f), d, c.cert));
    R.places_processed.push_back("2");

    // odd places where the symbol or the curve can be nontrivial
    std::vector<Int> ps;
    Int cofactor;
    bool full = odd_primes_of(disc, ps, cofactor);
    for (auto& [p, e] : dfs)
        if (p != 2) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (const Int& p : ps) {
        Int u = unit_part(d, p);
        int chi = mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
        int v = v_p(d, p);
        if (v == 0 && chi == 1) continue;  // split: trivial contribution
        ExtType ext = v == 0 ? ExtType::unram : (chi == 1 ? ExtType::ram_pi : ExtType::ram_upi);
        if (p >= kMaxFieldP) {
            KtReport rep;
            rep.place = int_str(p);
            rep.extension = ext_name(ext);
            rep.note = "residue characteristic exceeds the supported field size";
            R.local_reports.push_back(rep);
        } else {
            HyperCurve cp = make_curve(base_qp(p.get_si()), c.f);
            R.local_reports.push_back(kt_verify(cp, ext));
        }
        R.places_processed.push_back(int_str(p));
    }
    if (!full) {
        R.note = "discriminant cofactor " + int_str(cofactor) +
                 " is composite and resisted factoring; places above it were not examined";
    }

    bool supported = full;
    bool failed = false;
    R.global_symbol_product = 1;
    for (const KtReport& rep : R.local_reports) {
        if (rep.verdict == KtVerdict::inapplicable) {
            supported = false;
        } else {
            R.global_symbol_product *= rep.artin_symbol_value;
            if (rep.verdict != KtVerdict::holds) failed = true;
        }
    }
    R.product_formula_ok = supported && !failed && R.global_symbol_product == 1;
    R.verdict = failed ? "failure" : (supported ? "full" : "partial");
    return R;
}

bool product_formula_check(const mpq_class& a, const mpq_class& b) {
    if (a == 0 || b == 0) throw domain_error("product_formula_check: nonzero rationals required");
    std::vector<Int> odd;
    Int cof;
    for (const Int& t : {Int(a.get_num()), Int(a.get_den()), Int(b.get_num()), Int(b.get_den())}) {
        if (t == 1 || t == -1) continue;
        if (!odd_primes_of(t, odd, cof))
            throw domain_error("product_formula_check: cannot factor an argument");
    }
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    int prod = hilbert_Q_at(a, b, Int(0)) * hilbert_Q_at(a, b, Int(2));
    for (const Int& p : odd) prod *= hilbert_Q_at(a, b, p);
    return prod == 1;
}

HyperCurve random_good_curve(Rng& rng, long p, int resdeg, int gmin, int gmax) {
    if (p < 3) throw domain_error("random_good_curve: odd p required");
    int lo = 2 * gmin + 1, hi = 2 * gmax + 2;
    while (true) {
        int deg = lo + (int)rng.below((uint64_t)(hi - lo + 1));
        ZPoly f(deg + 1);
        for (int i = 0; i < deg; ++i) f[i] = Int((long)rng.below((uint64_t)(3 * p))) - Int(p);
        f[deg] = Int(1 + (long)rng.below((uint64_t)(p - 1)));
        Int disc = zp_disc(f);
        if (disc == 0 || v_p(disc, Int(p)) != 0) continue;
        return make_curve(base_qp(p, resdeg), f);
    }
}

HyperCurve random_cubefree_curve(Rng& rng, long p, int resdeg, int gmin, int gmax) {
    if (p < 3) throw domain_error("random_cubefree_curve: odd p required");
    FqF k1 = make_field(p, 1);
    int g = gmin + (int)rng.below((uint64_t)(gmax - gmin + 1));
    int deg = 2 * g + 2 - (rng.coin() ? 1 : 0);
    long cap[4] = {0, p, (p * p - p) / 2, (p * p * p - p) / 3};
    while (true) {
        std::vector<FqPoly> used;
        long left[4] = {0, cap[1], cap[2], cap[3]};
        auto fresh = [&](int dd) {
            while (true) {
                ZPoly h(dd + 1);
                h[dd] = 1;
                for (int i = 0; i < dd; ++i) h[i] = Int((long)rng.below((uint64_t)p));
                FqPoly hb = zp_reduce(h, k1);
                if (poly_deg(hb) != dd || !poly_irreducible(hb)) continue;
                bool dup = false;
                for (auto& u : used) dup = dup || poly_eq(u, hb);
                if (dup) continue;
                used.push_back(hb);
                --left[dd];
                for (int i = 0; i < dd; ++i) h[i] += Int(p) * Int((long)rng.below(3));
                return h;
            }
        };
        std::vector<ZPoly> pieces;
        int rem = deg;
        bool stuck = false;
        while (rem > 0 && !stuck) {
            bool want_double = rng.below(4) < 2 && rem >= 2;
            std::vector<int> degs;
            for (int dd = 1; dd <= 3; ++dd)
                if (left[dd] > 0 && (want_double ? 2 * dd : dd) <= rem) degs.push_back(dd);
            if (degs.empty()) {
                want_double = !want_double;
                for (int dd = 1; dd <= 3; ++dd)
                    if (left[dd] > 0 && (want_double ? 2 * dd : dd) <= rem) degs.push_back(dd);
            }
            if (degs.empty()) {
                stuck = true;
                break;
            }
            int dd = degs[rng.below(degs.size())];
            if (want_double) {
                ZPoly h = fresh(dd);
                Int v = Int(1 + (long)rng.below((uint64_t)p - 1)) + Int(p) * Int((long)rng.below(3));
                int n = 1 + (int)rng.below(3);
                pieces.push_back(zp_sub(zp_mul(h, h), ZPoly{v * ipow(p, n)}));
                rem -= 2 * dd;
            } else {
                pieces.push_back(fresh(dd));
                rem -= dd;
            }
        }
        if (stuck) continue;
        ZPoly f{Int(1)};
        for (auto& piece : pieces) f = zp_mul(f, piece);
        Int u = Int(1 + (long)rng.below((uint64_t)p - 1)) + Int(p) * Int((long)rng.below(3));
        if (rng.coin()) u = -u;
        return make_curve(base_qp(p, resdeg), zp_scale(u, f));
    }
}

HyperCurve random_real_curve(Rng& rng, int gmin, int gmax) {
    int g = gmin + (int)rng.below((uint64_t)(gmax - gmin + 1));
    int deg = 2 * g + 2 - (rng.coin() ? 1 : 0);
    int pairs = (int)rng.below((uint64_t)(deg / 2 + 1));
    int reals = deg - 2 * pairs;
    ZPoly f{Int(rng.coin() ? 1 : -1)};
    for (int i = 0; i < reals; ++i) f = zp_mul(f, ZPoly{Int(-i), Int(1)});
    for (int i = 0; i < pairs; ++i) f = zp_mul(f, ZPoly{Int(i + 1), Int(0), Int(1)});
    return make_curve(base_r(), f);
}

std::string curve_to_json(const HyperCurve& c) {
    json j;
    j["f"] = zpoly_json(c.f);
    j["genus"] = c.g;
    j["base"] = base_json(c.base);
    j["leading_unit_required"] = false;
    return j.dump();
}

HyperCurve curve_from_json(const std::string& text) {
    json j = json::parse(text);
    ZPoly f = zpoly_from_json(j.at("f"), "curve_from_json");
    BaseField b = base_from_json(j.at("base"));
    HyperCurve c = make_curve(b, f);
    if (j.contains("genus") && j.at("genus").get<int>() != c.g)
        throw domain_error("curve_from_json: genus does not match deg f");
    if (j.value("leading_unit_required", false)) {
        if (b.kind != BaseField::Kind::Qp)
            throw domain_error("curve_from_json: leading_unit_required needs a p-adic base");
        if (v_p(zp_lc(f), Int(b.p)) != 0)
            throw domain_error("curve_from_json: leading coefficient is not a unit");
    }
    return c;
}

std::string global_curve_to_json(const GlobalCurve& c) {
    json j;
    j["f"] = zpoly_json(c.f);
    j["genus"] = c.g;
    j["base"] = base_json(base_q());
    j["leading_unit_required"] = false;
    if (c.cert) {
        j["cert_f"] = zpoly_json(c.cert->f);
        j["cert_h"] = zpoly_json(c.cert->h);
    }
    json cert = json::array();
    for (const PlaceCondition& pc : c.certificate)
        cert.push_back(json{{"place", pc.place}, {"condition", pc.condition}});
    j["certificate"] = cert;
    return j.dump();
}

GlobalCurve global_curve_from_json(const std::string& text) {
    json j = json::parse(text);
    GlobalCurve c;
    c.f = zpoly_from_json(j.at("f"), "global_curve_from_json");
    if (zp_deg(c.f) < 5) throw domain_error("global_curve_from_json: deg f >= 5 required");
    c.g = (zp_deg(c.f) - 1) / 2;
    if (j.contains("genus") && j.at("genus").get<int>() != c.g)
        throw domain_error("global_curve_from_json: genus does not match deg f");
    if (j.contains("cert_f")) {
        OrdinaryCert cert;
        cert.f = zpoly_from_json(j.at("cert_f"), "global_curve_from_json");
        cert.h = zpoly_from_json(j.value("cert_h", json::array()), "global_curve_from_json");
        c.cert = cert;
    }
    // stored certificates are advisory; re-derive from the curve itself
    c.certificate = classify_places(c.f, c.g, c.cert);
    return c;
}

std::string global_report_to_json(const GlobalReport& r) {
    json j;
    j["d"] = int_str(r.d);
    j["verdict"] = r.verdict;
    j["product_formula_ok"] = r.product_formula_ok;
    j["global_symbol_product"] = r.global_symbol_product;
    j["places_processed"] = r.places_processed;
    json reps = json::array();
    for (const KtReport& rep : r.local_reports) reps.push_back(json::parse(report_to_json(rep)));
    j["local_reports"] = reps;
    if (!r.note.empty()) j["note"] = r.note;
    return j.dump();
}

std::string with_provenance(const std::string& report_json, uint64_t seed) {
    json j;
    j["report"] = json::parse(report_json);
    json versions;
    for (const char* m : kModuleNames) versions[m] = "1.0.0";
    j["provenance"] = {
        {"seed", seed},
        {"precision", "exact integer/p-adic arithmetic; p-adic precision escalates "
                      "until depth data is certified by the discriminant valuation"},
        {"versions", versions},
    };
    return j.dump();
}

std::vector<SweepItem> make_sweep(const std::string& case_name, const std::vector<long>& ps,
                                  int gmin, int gmax, int count, uint64_t seed) {
    if (gmin < 2 || gmax < gmin) throw domain_error("make_sweep: need 2 <= gmin <= gmax");
    if (count < 1) throw domain_error("make_sweep: count >= 1 required");
    std::vector<SweepItem> items;
    char buf[64];
    auto key_of = [&](long p, int idx, const std::string& tag) {
        std::snprintf(buf, sizeof buf, "%s/p%03ld/i%05d/%s", case_name.c_str(), p, idx,
                      tag.c_str());
        return std::string(buf);
    };
    auto add = [&](long p, int idx, const HyperCurve& c, ExtType e, bool real) {
        SweepItem it;
        it.key = key_of(p, idx, real ? "real" : ext_name(e));
        it.curve = c;
        it.ext = e;
        it.archimedean = real;
        items.push_back(std::move(it));
    };
    if (case_name == "real") {
        for (int i = 0; i < count; ++i) {
            Rng rng(splitmix64(seed) ^ splitmix64(hash_string(case_name) + (uint64_t)i));
            add(0, i, random_real_curve(rng, gmin, gmax), ExtType::unram, true);
        }
        std::sort(items.begin(), items.end(),
                  [](const SweepItem& a, const SweepItem& b) { return a.key < b.key; });
        return items;
    }
    for (long p : ps) {
        if (p < 3 || p % 2 == 0) throw domain_error("make_sweep: odd primes required");
        for (int i = 0; i < count; ++i) {
            Rng rng(splitmix64(seed) ^
                    splitmix64(hash_string(case_name) + 0x70ull * (uint64_t)p + (uint64_t)i));
            if (case_name == "good") {
                HyperCurve c = random_good_curve(rng, p, 1, gmin, gmax);
                for (ExtType e : {ExtType::unram, ExtType::ram_pi, ExtType::ram_upi})
                    add(p, i, c, e, false);
            } else if (case_name == "unram") {
                add(p, i, random_cubefree_curve(rng, p, 1, gmin, gmax), ExtType::unram, false);
            } else if (case_name == "ram-cubefree") {
                HyperCurve c = random_cubefree_curve(rng, p, 1, gmin, gmax);
                for (ExtType e : {ExtType::ram_pi, ExtType::ram_upi}) add(p, i, c, e, false);
            } else {
                throw domain_error("make_sweep: unknown case " + case_name);
            }
        }
    }
    std::sort(items.begin(), items.end(),
              [](const SweepItem& a, const SweepItem& b) { return a.key < b.key; });
    return items;
}

std::vector<SweepResult> run_sweep(const std::vector<SweepItem>& items, int jobs) {
    if (items.empty()) return {};
    jobs = std::max(1, std::min({jobs, 16, (int)items.size()}));
    std::vector<SweepResult> out(items.size());
    std::atomic<size_t> next{0};
    auto work = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            SweepResult& r = out[i];
            r.item = items[i];
            try {
                if (items[i].archimedean)
                    r.report = kt_verify_real(items[i].curve);
                else
                    r.report = kt_verify(items[i].curve, items[i].ext);
            } catch (const std::exception& e) {
                r.error = e.what();
                r.report.note = r.error;
            }
        }
    };
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    // items arrive key-sorted; emission order is position, hence key order
    return out;
}

std::string sweep_csv(const std::vector<SweepResult>& rs) {
    std::ostringstream os;
    os << "key,place,extension,case,verdict,artin_symbol,disc_symbol,checks_passed,checks_total,error,f\n";
    for (const SweepResult& r : rs) {
        int passed = 0;
        for (const CrossCheck& c : r.report.cross_checks) passed += c.pass;
        os << r.item.key << ',' << r.report.place << ',' << r.report.extension << ','
           << case_tag_name(r.report.case_tag) << ',' << verdict_name(r.report.verdict) << ','
           << r.report.artin_symbol_value << ',' << r.report.disc_symbol << ',' << passed << ','
           << r.report.cross_checks.size() << ',' << (r.error.empty() ? "" : "error") << ",\""
           << zp_str(r.item.curve.f) << "\"\n";
    }
    return os.str();
}

std::string reproducer_json(const SweepItem& item) {
    json j;
    j["key"] = item.key;
    j["curve"] = json::parse(curve_to_json(item.curve));
    j["extension"] = item.archimedean ? "C/R" : ext_name(item.ext);
    return j.dump();
}

uint64_t default_seed() {
    const char* env = std::getenv("KTLOCAL_SEED");
    if (!env || !*env) return 42;
    return (uint64_t)std::strtoull(env, nullptr, 10);
}

MatZ parity_chain_block(int k) {
    MatZ M = MatZ::Zero(k + 2, k + 2);
    for (int i = 0; i < k; ++i) {
        M(i, i) = -2;
        if (i + 1 < k) {
            M(i, i + 1) = 1;
            M(i + 1, i) = 1;
        }
    }
    if (k > 0) {
        M(k - 1, k) = 1;
        M(k - 1, k + 1) = 1;
        M(k, k - 1) = 1;
        M(k + 1, k - 1) = 1;
    }
    M(k, k) = -2;
    M(k + 1, k + 1) = -2;
    return M;
}

MatZ parity_fused_block(int n) {
    MatZ M = MatZ::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) M(i, i) = -2;
    for (int i = 0; i + 1 < n; ++i) {
        M(i, i + 1) = 1;
        M(i + 1, i) = 1;
    }
    M(n - 1, n) = 1;
    M(n, n - 1) = 2;
    return M;
}

}  // namespace ktl
