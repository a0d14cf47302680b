#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "univalent/coeffs.hpp"
#include "univalent/errors.hpp"
#include "univalent/families.hpp"
#include "univalent/functionals.hpp"
#include "univalent/io.hpp"
#include "univalent/metrics.hpp"
#include "univalent/multipoly.hpp"
#include "univalent/schwarzian.hpp"
#include "univalent/series.hpp"

namespace univalent {

inline constexpr int kReportVersion = 1;

struct ScanConfig {
    std::string experiment = "zalcman";
    int n_lo = 3, n_hi = 8;
    int p_lo = 1, p_hi = 3;
    int samples = 0;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool exact = false;
    double tolerance = 1e-9;       // relative slack below which a float bound breach counts
    double witness_rel_tol = 1e-9; // float equality-witness tolerance
    int n_max_ratio = 40;
    int threads = 0; // 0: WORKBENCH_THREADS env, then hardware concurrency

    void validate() const {
        if (tolerance <= 0.0 || witness_rel_tol <= 0.0)
            throw ConfigError("tolerances must be positive");
        if (n_lo < 2 || n_hi < n_lo) throw ConfigError("bad n range");
        if (p_lo < 1 || p_hi < p_lo) throw ConfigError("bad p range");
        if (samples > 0 && !has_seed)
            throw ConfigError("random samples requested without a seed");
        if (samples < 0) throw ConfigError("negative sample count");
    }
};

inline json config_to_json(const ScanConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["n_lo"] = c.n_lo;
    j["n_hi"] = c.n_hi;
    j["p_lo"] = c.p_lo;
    j["p_hi"] = c.p_hi;
    j["samples"] = c.samples;
    if (c.has_seed)
        j["seed"] = c.seed;
    else
        j["seed"] = nullptr;
    j["mode"] = c.exact ? "exact" : "float";
    j["tolerance"] = c.tolerance;
    j["witness_rel_tol"] = c.witness_rel_tol;
    j["n_max_ratio"] = c.n_max_ratio;
    j["threads"] = c.threads;
    return j;
}

inline ScanConfig config_from_json(const json& j) {
    ScanConfig c;
    c.experiment = j.value("experiment", c.experiment);
    c.n_lo = j.value("n_lo", c.n_lo);
    c.n_hi = j.value("n_hi", c.n_hi);
    c.p_lo = j.value("p_lo", c.p_lo);
    c.p_hi = j.value("p_hi", c.p_hi);
    c.samples = j.value("samples", c.samples);
    if (j.contains("seed") && !j["seed"].is_null()) {
        c.seed = j["seed"].get<std::uint64_t>();
        c.has_seed = true;
    }
    if (j.contains("mode")) c.exact = j["mode"].get<std::string>() == "exact";
    c.tolerance = j.value("tolerance", c.tolerance);
    c.witness_rel_tol = j.value("witness_rel_tol", c.witness_rel_tol);
    c.n_max_ratio = j.value("n_max_ratio", c.n_max_ratio);
    c.threads = j.value("threads", c.threads);
    return c;
}

struct ScanRecord {
    std::string id;
    std::string family;
    std::string params;
    int n = 0, p = 0;
    double modulus = 0.0, bound = 0.0, slack = 0.0;
};

struct Extremum {
    std::string label;
    int n = 0, p = 0;
    double value = 0.0;
    std::string sample_id;
};

struct WitnessEntry {
    std::string id;
    int n = 0, p = 0;
    double modulus = 0.0, bound = 0.0;
    bool koebe_rotation = false;
};

struct ViolationEntry {
    std::string id;
    int n = 0, p = 0;
    double modulus = 0.0, bound = 0.0, slack = 0.0;
    std::string reason;
};

struct WarnEntry {
    std::string code;
    std::string message;
};

struct ScanReport {
    int version = kReportVersion;
    std::string experiment;
    ScanConfig config;
    std::vector<ScanRecord> records;
    std::vector<Extremum> extrema;
    std::vector<WitnessEntry> witnesses;
    std::vector<ViolationEntry> violations;
    std::vector<WarnEntry> warnings;
    double wall_clock_ms = 0.0;

    // 0: all assertions hold, 1: mathematical violation found.
    int exit_code() const { return violations.empty() ? 0 : 1; }
};

// Per-sample records go to CSV; the JSON report carries the aggregate view.
// With include_runtime = false the wall clock and worker count are zeroed,
// leaving only fields determined by (config, seed).
inline json report_to_json(const ScanReport& r, bool include_runtime = true) {
    json j;
    j["version"] = r.version;
    j["experiment"] = r.experiment;
    j["config"] = config_to_json(r.config);
    if (!include_runtime) j["config"]["threads"] = 0;
    json ex = json::array();
    for (const auto& e : r.extrema)
        ex.push_back(json{{"label", e.label},
                          {"n", e.n},
                          {"p", e.p},
                          {"value", e.value},
                          {"sample", e.sample_id}});
    j["extrema"] = ex;
    json wit = json::array();
    for (const auto& w : r.witnesses)
        wit.push_back(json{{"id", w.id},
                           {"n", w.n},
                           {"p", w.p},
                           {"modulus", w.modulus},
                           {"bound", w.bound},
                           {"koebe_rotation", w.koebe_rotation}});
    j["witnesses"] = wit;
    json vio = json::array();
    for (const auto& v : r.violations)
        vio.push_back(json{{"id", v.id},
                           {"n", v.n},
                           {"p", v.p},
                           {"modulus", v.modulus},
                           {"bound", v.bound},
                           {"slack", v.slack},
                           {"reason", v.reason}});
    j["violations"] = vio;
    json warn = json::array();
    for (const auto& w : r.warnings) warn.push_back(json{{"code", w.code}, {"message", w.message}});
    j["warnings"] = warn;
    j["wall_clock_ms"] = include_runtime ? r.wall_clock_ms : 0.0;
    return j;
}

inline std::string report_to_csv(const ScanReport& r) {
    std::string out = "id,family,params,n,p,modulus,bound,slack\n";
    for (const auto& rec : r.records) {
        out += rec.id + "," + rec.family + "," + rec.params + "," + std::to_string(rec.n) + "," +
               std::to_string(rec.p) + "," + fmt_param(rec.modulus) + "," + fmt_param(rec.bound) +
               "," + fmt_param(rec.slack) + "\n";
    }
    return out;
}

inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WORKBENCH_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Index-parallel map with deterministic output slots; the first worker
// exception is rethrown after join.
template <class F>
void parallel_for(std::size_t count, int threads, F&& fn) {
    if (threads < 1) threads = 1;
    if (static_cast<std::size_t>(threads) > count) threads = static_cast<int>(std::max<std::size_t>(count, 1));
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Catalog and batch construction
// ---------------------------------------------------------------------------

// Fixed catalog scanned alongside any random batch, so the equality cases are
// never missed by sampling chance: Koebe maps, root transforms m = 2..6 (m = 2
// is the odd function), and their homotopies at t in {1/4, 1/2, 3/4}. Exact
// mode uses theta in {0, pi}; float mode adds generic rotations.
template <class K>
std::vector<UnivalentSample<K>> standard_catalog(int order) {
    std::vector<double> thetas;
    if constexpr (scalar_traits<K>::is_exact)
        thetas = {0.0, 3.141592653589793};
    else
        thetas = {0.0, 1.5707963267948966, 3.141592653589793, 2.0};
    std::vector<UnivalentSample<K>> cat;
    for (double th : thetas) cat.push_back(koebe<K>(th, order));
    for (int m = 2; m <= 6 && 2 * m + 1 <= order; ++m)
        for (double th : thetas) cat.push_back(koebe_root<K>(m, th, order));
    std::size_t base_count = cat.size();
    const std::pair<long long, long long> ts[] = {{1, 4}, {1, 2}, {3, 4}};
    for (std::size_t i = 0; i < base_count; ++i)
        for (auto [tp, tq] : ts)
            cat.push_back(homotopy_s(cat[i], scalar_traits<K>::from_ratio(tp, tq)));
    return cat;
}

// Deterministic per-index batch sample; the factor count K is drawn uniformly
// from {1..6} off the derived sub-seed.
template <class K>
UnivalentSample<K> starlike_batch_sample(std::uint64_t seed, int index, int order) {
    std::uint64_t sub = detail::splitmix64(seed ^ detail::splitmix64(static_cast<std::uint64_t>(index) + 1));
    int factors = 1 + static_cast<int>(detail::splitmix64(sub) % 6);
    UnivalentSample<K> s = starlike_sample<K>(sub, factors, order);
    s.params["batch_index"] = static_cast<double>(index);
    s.id = detail::make_id(s.family, s.params, s.seed);
    return s;
}

namespace detail {

inline std::string params_string(const std::map<std::string, double>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ";";
        out += k + "=" + fmt_param(v);
    }
    return out;
}

template <class K>
struct EvalOutcome {
    ScanRecord rec;
    bool witness = false;
    bool violation = false;
    bool koebe_rot = false;
};

// One (sample, functional) evaluation with exactness-aware witness and
// violation detection.
template <class K>
EvalOutcome<K> evaluate_one(const UnivalentSample<K>& sample, const FunctionalSpec& spec,
                            const ScanConfig& cfg) {
    EvalOutcome<K> out;
    const SCoeffs<K>& coeffs = sample.s();
    K value = spec.evaluate(coeffs);
    Rational bound = spec.koebe_bound();
    double bound_d = bound.to_double();
    out.rec.id = sample.id;
    out.rec.family = sample.family;
    out.rec.params = params_string(sample.params);
    out.rec.n = spec.n;
    out.rec.p = (spec.name == FunctionalName::power_gap || spec.name == FunctionalName::adjacent_gap)
                    ? spec.p
                    : 0;
    out.rec.bound = bound_d;
    if constexpr (scalar_traits<K>::is_exact) {
        Rational n2 = scalar_traits<K>::norm2(value);
        Rational b2 = bound * bound;
        out.rec.modulus = std::sqrt(n2.to_double());
        out.rec.slack = bound_d - out.rec.modulus;
        out.violation = n2 > b2;
        out.witness = n2 == b2;
        out.koebe_rot = is_koebe_rotation(coeffs);
    } else {
        double modulus = scalar_traits<K>::abs(value);
        out.rec.modulus = modulus;
        out.rec.slack = bound_d - modulus;
        out.violation = modulus > bound_d * (1.0 + cfg.tolerance);
        out.witness = std::abs(modulus - bound_d) <= cfg.witness_rel_tol * bound_d;
        // strictly looser than the witness tolerance, so a sample sitting on
        // the detection boundary classifies as a rotation, not a violation
        out.koebe_rot = is_koebe_rotation(coeffs, std::max(1e-7, 10.0 * cfg.witness_rel_tol));
    }
    return out;
}

template <class K>
ScanReport functional_scan(const ScanConfig& cfg, const std::vector<FunctionalSpec>& specs,
                           const std::string& experiment) {
    auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    int order = 13; // koebe_root(6) needs 2m+1
    for (const auto& s : specs) order = std::max(order, s.required_order());

    std::vector<UnivalentSample<K>> samples = standard_catalog<K>(order);
    std::size_t catalog_count = samples.size();
    samples.resize(catalog_count + static_cast<std::size_t>(cfg.samples));
    parallel_for(static_cast<std::size_t>(cfg.samples), effective_threads(cfg.threads),
                 [&](std::size_t i) {
                     samples[catalog_count + i] =
                         starlike_batch_sample<K>(cfg.seed, static_cast<int>(i), order);
                 });

    std::vector<std::vector<EvalOutcome<K>>> slots(samples.size());
    parallel_for(samples.size(), effective_threads(cfg.threads), [&](std::size_t i) {
        auto& mine = slots[i];
        mine.reserve(specs.size());
        for (const auto& spec : specs) mine.push_back(evaluate_one(samples[i], spec, cfg));
    });

    ScanReport rep;
    rep.experiment = experiment;
    rep.config = cfg;
    std::map<std::string, Extremum> extrema;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        for (std::size_t k = 0; k < specs.size(); ++k) {
            const auto& out = slots[i][k];
            rep.records.push_back(out.rec);
            std::string label = specs[k].label();
            auto [it, fresh] = extrema.try_emplace(label);
            if (fresh || out.rec.modulus > it->second.value ||
                (out.rec.modulus == it->second.value && out.rec.id < it->second.sample_id)) {
                it->second = {label, out.rec.n, out.rec.p, out.rec.modulus, out.rec.id};
            }
            if (out.violation)
                rep.violations.push_back({out.rec.id, out.rec.n, out.rec.p, out.rec.modulus,
                                          out.rec.bound, out.rec.slack, "bound exceeded"});
            if (out.witness) {
                rep.witnesses.push_back(
                    {out.rec.id, out.rec.n, out.rec.p, out.rec.modulus, out.rec.bound, out.koebe_rot});
                if (!out.koebe_rot)
                    rep.violations.push_back({out.rec.id, out.rec.n, out.rec.p, out.rec.modulus,
                                              out.rec.bound, out.rec.slack,
                                              "equality witness is not a Koebe rotation"});
            }
        }
    }
    for (auto& [label, e] : extrema) rep.extrema.push_back(e);

    auto record_key = [](const ScanRecord& r) { return std::tie(r.id, r.n, r.p); };
    std::sort(rep.records.begin(), rep.records.end(),
              [&](const ScanRecord& a, const ScanRecord& b) { return record_key(a) < record_key(b); });
    std::sort(rep.witnesses.begin(), rep.witnesses.end(), [](const WitnessEntry& a, const WitnessEntry& b) {
        return std::tie(a.id, a.n, a.p) < std::tie(b.id, b.n, b.p);
    });
    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const ViolationEntry& a, const ViolationEntry& b) {
                  return std::tie(a.id, a.n, a.p, a.reason) < std::tie(b.id, b.n, b.p, b.reason);
              });
    rep.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

// |a_n^2 - a_{2n-1}| <= (n-1)^2 over catalog + batch; the only expected
// equality witnesses are Koebe rotations.
inline ScanReport run_zalcman_scan(const ScanConfig& cfg) {
    std::vector<FunctionalSpec> specs;
    for (int n = std::max(3, cfg.n_lo); n <= cfg.n_hi; ++n)
        specs.push_back(FunctionalSpec::make_zalcman(n));
    if (specs.empty()) throw ConfigError("zalcman scan needs n range meeting n >= 3");
    return cfg.exact ? detail::functional_scan<RatC>(cfg, specs, "zalcman")
                     : detail::functional_scan<Cplx>(cfg, specs, "zalcman");
}

// Higher-coefficient gap bounds: |a_n^p - a_2^{p(n-1)}| <= 2^{p(n-1)} - n^p
// (n > 3) and |a_{n+1}^p - a_2^p a_n^p| <= 2^p n^p - (n+1)^p  (n > 2).
inline ScanReport run_distortion_scan(const ScanConfig& cfg) {
    std::vector<FunctionalSpec> specs;
    for (int p = cfg.p_lo; p <= cfg.p_hi; ++p) {
        for (int n = std::max(4, cfg.n_lo); n <= cfg.n_hi; ++n)
            specs.push_back(FunctionalSpec::make_power_gap(n, p));
        for (int n = std::max(3, cfg.n_lo); n <= cfg.n_hi; ++n)
            specs.push_back(FunctionalSpec::make_adjacent_gap(n, p));
    }
    if (specs.empty()) throw ConfigError("distortion scan has an empty (n, p) grid");
    return cfg.exact ? detail::functional_scan<RatC>(cfg, specs, "distortion")
                     : detail::functional_scan<Cplx>(cfg, specs, "distortion");
}

// r_n = |a_n^2 - a_{2n-1}| / (n-1)^2 for 3 <= n <= n_max on fixed non-Koebe
// samples (sup must stay below 1), one Koebe boundary sample (excluded from
// the assertion), and the Koebe homotopy at t = 1/2 whose consecutive ratio
// decays by t^2.
inline ScanReport run_asymptotic_ratio(const ScanConfig& cfg) {
    if (cfg.exact) throw ConfigError("the asymptotic ratio scan runs in float mode");
    auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    if (cfg.n_max_ratio < 4) throw ConfigError("ratio scan needs n_max >= 4");
    int order = 2 * cfg.n_max_ratio - 1;

    std::vector<UnivalentSample<Cplx>> samples;
    int fixed = cfg.samples > 0 ? cfg.samples : 5;
    std::uint64_t seed = cfg.has_seed ? cfg.seed : 20240917ULL;
    for (int i = 0; i < fixed; ++i) {
        std::uint64_t sub = detail::splitmix64(seed ^ detail::splitmix64(static_cast<std::uint64_t>(i) + 101));
        int factors = 2 + static_cast<int>(detail::splitmix64(sub) % 5); // K >= 2: not a Koebe rotation
        samples.push_back(starlike_sample<Cplx>(sub, factors, order));
    }
    samples.push_back(koebe<Cplx>(0.0, order));
    samples.push_back(homotopy_s(koebe<Cplx>(0.0, order), Cplx(0.5, 0.0)));

    ScanReport rep;
    rep.experiment = "ratio";
    rep.config = cfg;
    std::vector<std::vector<ScanRecord>> slots(samples.size());
    std::vector<char> rotation(samples.size(), 0);
    parallel_for(samples.size(), effective_threads(cfg.threads), [&](std::size_t i) {
        const auto& smp = samples[i];
        rotation[i] = is_koebe_rotation(smp.s(), cfg.witness_rel_tol) ? 1 : 0;
        for (int n = 3; n <= cfg.n_max_ratio; ++n) {
            double bound = static_cast<double>(n - 1) * (n - 1);
            double modulus = std::abs(zalcman(smp.s(), n));
            slots[i].push_back({smp.id, smp.family, detail::params_string(smp.params), n, 0,
                                modulus, bound, bound - modulus});
        }
    });
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double sup_ratio = 0.0;
        int argmax_n = 3;
        for (const auto& rec : slots[i]) {
            rep.records.push_back(rec);
            double ratio = rec.modulus / rec.bound;
            if (ratio > sup_ratio) {
                sup_ratio = ratio;
                argmax_n = rec.n;
            }
        }
        rep.extrema.push_back({"max_ratio;" + samples[i].id, argmax_n, 0, sup_ratio, samples[i].id});
        // tail trend: mean consecutive ratio r_{n+1}/r_n over the last five
        // steps (1 for Koebe, ~|t|^2 for homotopies, -> decay rate otherwise)
        double trend = 0.0;
        int trend_terms = 0;
        for (std::size_t k = slots[i].size() >= 6 ? slots[i].size() - 6 : 0;
             k + 1 < slots[i].size(); ++k) {
            double prev = slots[i][k].modulus / slots[i][k].bound;
            double next = slots[i][k + 1].modulus / slots[i][k + 1].bound;
            if (prev > 0.0) {
                trend += next / prev;
                ++trend_terms;
            }
        }
        if (trend_terms > 0)
            rep.extrema.push_back({"tail_trend;" + samples[i].id, cfg.n_max_ratio, 0,
                                   trend / trend_terms, samples[i].id});
        if (!rotation[i] && sup_ratio >= 1.0)
            rep.violations.push_back({samples[i].id, argmax_n, 0, sup_ratio, 1.0, 1.0 - sup_ratio,
                                      "asymptotic ratio reached 1 on a non-Koebe sample"});
    }
    std::sort(rep.records.begin(), rep.records.end(), [](const ScanRecord& a, const ScanRecord& b) {
        return std::tie(a.id, a.n, a.p) < std::tie(b.id, b.n, b.p);
    });
    std::sort(rep.extrema.begin(), rep.extrema.end(),
              [](const Extremum& a, const Extremum& b) { return a.label < b.label; });
    rep.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Golden suite
// ---------------------------------------------------------------------------

// The displayed expansions of a_2..a_7 in b_0..b_5.
inline MultiPoly golden_a_in_b_expected(int n) {
    auto b = [](int i) { return MultiPoly::variable(i); };
    auto c = [](long long v) { return MultiPoly::constant(v); };
    switch (n) {
        case 2: return -b(0);
        case 3: return -b(1) + b(0) * b(0);
        case 4: return -b(2) + c(2) * b(1) * b(0) - b(0) * b(0) * b(0);
        case 5:
            return -b(3) + c(2) * b(2) * b(0) + b(1) * b(1) - c(3) * b(1) * b(0) * b(0) +
                   b(0) * b(0) * b(0) * b(0);
        case 6:
            return -b(4) + c(2) * b(3) * b(0) + c(2) * b(2) * b(1) - c(3) * b(2) * b(0) * b(0) -
                   c(3) * b(1) * b(1) * b(0) + c(4) * b(1) * b(0) * b(0) * b(0) -
                   b(0) * b(0) * b(0) * b(0) * b(0);
        case 7:
            return b(0) * b(0) * b(0) * b(0) * b(0) * b(0) - c(5) * b(1) * b(0) * b(0) * b(0) * b(0) -
                   b(1) * b(1) * b(1) + c(4) * b(2) * b(0) * b(0) * b(0) + b(2) * b(2) +
                   (c(6) * b(1) * b(1) - c(3) * b(3)) * b(0) * b(0) + c(2) * b(1) * b(3) +
                   (c(-6) * b(1) * b(2) + c(2) * b(4)) * b(0) - b(5);
        default: throw ParameterOutOfRange("golden a_in_b table covers 2 <= n <= 7");
    }
}

namespace detail {

struct GoldenContext {
    ScanReport* rep;

    void check(const std::string& name, bool ok, const std::string& detail) {
        ScanRecord rec;
        rec.id = name;
        rec.family = "golden";
        rec.params = std::string("status=") + (ok ? "PASS" : "FAIL") + ";" + detail;
        rec.modulus = ok ? 0.0 : 1.0;
        rec.bound = 0.0;
        rec.slack = ok ? 0.0 : -1.0;
        rep->records.push_back(rec);
        if (!ok) rep->violations.push_back({name, 0, 0, 1.0, 0.0, -1.0, detail});
    }

    void warn(const std::string& code, const std::string& message) {
        ScanRecord rec;
        rec.id = code;
        rec.family = "golden";
        rec.params = "status=WARN;" + message;
        rep->records.push_back(rec);
        rep->warnings.push_back({code, message});
    }
};

} // namespace detail

// Fixed-answer checks for every displayed identity, plus the two documented
// discrepancies between derived values and the printed formulas (reported as
// WARN, never FAIL).
inline ScanReport run_golden_suite() {
    auto t0 = std::chrono::steady_clock::now();
    ScanReport rep;
    rep.experiment = "golden";
    rep.config.experiment = "golden";
    rep.config.exact = true;
    detail::GoldenContext ctx{&rep};

    // symbolic expansions a_2..a_7
    {
        bool ok = true;
        std::string detail;
        for (int n = 2; n <= 7; ++n) {
            if (a_in_b(n) != golden_a_in_b_expected(n)) {
                ok = false;
                detail = "a_" + std::to_string(n) + " disagrees with the displayed expansion";
                break;
            }
        }
        ctx.check("symbolic_a2_a7", ok, ok ? "a_2..a_7 match the displayed expansions" : detail);
    }

    // leading structure (-1)^{n-1} (b_0^{n-1} - (n-2) b_1 b_0^{n-3})
    {
        bool ok = true;
        std::string detail = "leading b_0 structure holds for 3 <= n <= 12";
        for (int n = 3; n <= 12; ++n) {
            try {
                leading_structure(n);
            } catch (const StructureMismatch& e) {
                ok = false;
                detail = e.what();
                break;
            }
        }
        ctx.check("leading_structure", ok, detail);
    }

    // zalcman expansion at the Koebe point: (n-1)^2 for 3 <= n <= 8
    {
        bool ok = true;
        std::string detail = "zalcman_in_b at the Koebe b-vector equals (n-1)^2 for 3 <= n <= 8";
        for (int n = 3; n <= 8 && ok; ++n) {
            MultiPoly zp = zalcman_in_b(n);
            std::vector<RatC> bv(static_cast<std::size_t>(2 * n - 2), RatC(0));
            bv[0] = RatC(-2);
            bv[1] = RatC(1);
            RatC v = zp.evaluate<RatC>(bv);
            if (!(v == RatC(static_cast<long long>(n - 1) * (n - 1)))) {
                ok = false;
                detail = "zalcman_in_b(" + std::to_string(n) + ") misses (n-1)^2 at the Koebe point";
            }
        }
        ctx.check("zalcman_koebe_point", ok, detail);
    }

    // exact round trips s <-> sigma on seeded rational vectors
    {
        bool ok = true;
        std::mt19937_64 rng(7011);
        for (int rep_i = 0; rep_i < 25 && ok; ++rep_i) {
            std::vector<RatC> a;
            for (int i = 0; i < 12; ++i)
                a.emplace_back(Rational(static_cast<long long>(rng() % 17) - 8,
                                        1 + static_cast<long long>(rng() % 6)),
                               Rational(static_cast<long long>(rng() % 17) - 8,
                                        1 + static_cast<long long>(rng() % 6)));
            SCoeffs<RatC> sc(a);
            ok = sigma_to_s(s_to_sigma(sc)) == sc;
        }
        ctx.check("s_sigma_round_trip", ok, "sigma_to_s . s_to_sigma == id on rational vectors");
    }

    // Koebe inversion b-vector (-2, 1, 0, ...)
    {
        SigmaCoeffs<RatC> b = s_to_sigma(koebe<RatC>(0.0, 12).s());
        bool ok = b.b_j(0) == RatC(-2) && b.b_j(1) == RatC(1);
        for (int j = 2; j <= b.max_index(); ++j) ok = ok && b.b_j(j).is_zero();
        ctx.check("koebe_inversion", ok, "1/koebe(1/z) = z - 2 + z^{-1}");
    }

    // b_m(F_{m,t}) = -2t/(m+1), bound 2/(m+1) attained exactly at |t| = 1
    {
        bool ok = true;
        std::string detail = "b_m(F_{m,t}) = -2t/(m+1) with |b_m| <= 2/(m+1), equality iff |t| = 1";
        const Rational ts[] = {Rational(1), Rational(-1), Rational(1, 2), Rational(-2, 5)};
        for (int m = 1; m <= 5 && ok; ++m) {
            for (const Rational& t : ts) {
                auto F = f_root_small<RatC>(m, RatC(t), m + 4);
                RatC expected = RatC(Rational(-2) * t / Rational(m + 1));
                if (!(F.sigma().b_j(m) == expected)) {
                    ok = false;
                    detail = "b_m mismatch at m=" + std::to_string(m);
                    break;
                }
                Rational n2 = F.sigma().b_j(m).norm2();
                Rational bound2 = Rational(4) / Rational(static_cast<long long>(m + 1) * (m + 1));
                bool at_boundary = t.abs() == Rational(1);
                if (n2 > bound2 || (n2 == bound2) != at_boundary) {
                    ok = false;
                    detail = "|b_m| bound/equality mismatch at m=" + std::to_string(m);
                    break;
                }
            }
        }
        ctx.check("f_root_small_bm", ok, detail);
    }

    // small-dilatation family: a_n(f_{n-1,t}) = 2kt/(n-1)
    {
        bool ok = true;
        std::string detail = "a_n(f_{n-1,t}) = 2kt/(n-1) at k = 1/(n^2+1); a_5 = t/52 at k = 1/26";
        for (int n = 3; n <= 6 && ok; ++n) {
            Rational k(1, static_cast<long long>(n) * n + 1);
            for (long long sgn : {1LL, -1LL}) {
                auto f = small_dilatation<RatC>(n, k, RatC(sgn), n + 2);
                RatC expected = RatC(Rational(2 * sgn) * k / Rational(n - 1));
                if (!(f.s().a_n(n) == expected)) {
                    ok = false;
                    detail = "a_n mismatch at n=" + std::to_string(n);
                    break;
                }
            }
        }
        if (ok) {
            auto f = small_dilatation<RatC>(5, Rational(1, 26), RatC(1), 7);
            ok = f.s().a_n(5) == RatC(Rational(1, 52));
            if (!ok) detail = "a_5(f_{4,1}; k=1/26) != 1/52";
        }
        ctx.check("small_dilatation_family", ok, detail);
    }

    // Golusin growth bound: the extremal map attains it, and bound <= r^m <= r
    {
        bool ok = true;
        std::string detail = "t^m (t+c)/(1+ct) attains the bound; bound <= r^m <= r";
        for (int m = 1; m <= 3 && ok; ++m) {
            for (double c : {0.0, 0.5, 1.0}) {
                double t = 0.3;
                double g = std::pow(t, m) * (t + c) / (1.0 + c * t);
                double bound = golusin_bound(m, c, t);
                if (std::abs(g - bound) > 1e-15 || bound > std::pow(t, m) + 1e-15 ||
                    std::pow(t, m) > t + 1e-15) {
                    ok = false;
                    detail = "golusin bound mismatch at m=" + std::to_string(m);
                    break;
                }
            }
        }
        ctx.check("golusin_equality", ok, detail);
    }

    // model metrics: curvature -4 within stencil tolerance, lemma bound sharp
    {
        bool ok = true;
        std::string detail = "hyperbolic and lambda_m metrics have curvature -4; bound metric has margin 0";
        const double r_lo = 0.046, r_hi = 0.904, h = 1e-3;
        auto hyp = RadialMetric::sample([](double r) { return hyperbolic_density(r); }, r_lo, r_hi, h);
        double worst = radial_curvature_check(hyp).max_violation;
        for (int m : {1, 2, 3, 5}) {
            auto lm = RadialMetric::sample([m](double r) { return root_hyperbolic_density(m, r); },
                                           r_lo, r_hi, h);
            auto repm = radial_curvature_check(lm);
            worst = std::max(worst, repm.max_violation);
            for (const auto& pt : repm.points) worst = std::max(worst, std::abs(pt.slack));
        }
        if (worst > 1e-6) {
            ok = false;
            detail = "curvature slack " + std::to_string(worst) + " exceeds 1e-6";
        }
        if (ok) {
            auto bound_metric = RadialMetric::sample(
                [](double r) { return lemma33_lower_bound(2, 0.8, r); }, r_lo, r_hi, h);
            auto [held, margin] = lemma33_check(bound_metric, 2, 0.8);
            if (!held || std::abs(margin) > 1e-12) {
                ok = false;
                detail = "lower-bound metric should meet the lemma with margin 0";
            }
        }
        ctx.check("lemma33_models", ok, detail);
    }

    // Schwarzian tail: leading coefficient -6 b_1
    {
        bool ok = true;
        std::mt19937_64 rng(4242);
        for (int rep_i = 0; rep_i < 100 && ok; ++rep_i) {
            std::vector<RatC> b;
            for (int i = 0; i < 6; ++i)
                b.emplace_back(Rational(static_cast<long long>(rng() % 11) - 5,
                                        1 + static_cast<long long>(rng() % 4)),
                               Rational(static_cast<long long>(rng() % 11) - 5,
                                        1 + static_cast<long long>(rng() % 4)));
            SigmaCoeffs<RatC> F(b);
            RatC lead = sigma_schwarzian_tail(F, 4).coeff(0);
            ok = lead == RatC(-6) * F.b_j(1);
        }
        if (ok) {
            auto tail = sigma_schwarzian_tail(s_to_sigma(koebe<RatC>(0.0, 10).s()), 6);
            ok = tail.coeff(0) == RatC(-6) && tail.coeff(1).is_zero() && tail.coeff(2) == RatC(-12);
        }
        ctx.check("schwarzian_tail", ok, "z^{-4} coefficient of S_F equals -6 b_1");
    }

    // dilatation identities on the two extremal families
    {
        auto F1 = two_coeff_sigma<RatC>(RatC(0), RatC(1));
        auto d1 = dilatation_identities(F1, Cplx(0.5, 0.0));
        auto F2 = two_coeff_sigma<RatC>(RatC(0), RatC(1, 2));
        auto d2 = dilatation_identities(F2, Cplx(0.5, 0.0));
        auto F3 = f_root_small<RatC>(2, RatC(1), 6);
        auto d3 = dilatation_identities(F3, Cplx(0.5, 0.0));
        bool ok = std::abs(d1.dilatation - 0.25) < 1e-15 && d1.sharp &&
                  std::abs(d2.dilatation - 0.125) < 1e-15 && !d2.sharp &&
                  std::abs(d3.asymptotic - std::pow(0.5, 3)) < 1e-15 &&
                  std::abs(d3.dilatation - d3.asymptotic) < 1e-15;
        ctx.check("dilatation_identities", ok,
                  "affine dilatation |b_1| t^2 and F_{m,t} asymptotic (m+1)/2 |b_m| |t|^{m+1}");
    }

    // documented discrepancy 1: z^{2m+1} coefficient of the root transform
    {
        auto k3 = koebe_root<RatC>(3, 0.0, 8);
        RatC derived = k3.s().a_n(7); // (m+2)/m^2 at m = 3
        bool derived_ok = derived == RatC(Rational(5, 9));
        ctx.check("root_transform_tail_value", derived_ok,
                  "a_{2m+1}(koebe_root(3)) equals the binomial value 5/9");
        ctx.warn("root_transform_tail_coefficient",
                 "z^{2m+1} coefficient of the root transform: derived (m+2)/m^2 = " +
                     derived.re.to_string() + " at m=3, printed formula gives (m-2)/m^2 = 1/9; "
                     "the generators use the derived value");
    }

    // documented discrepancy 2: sign of the Schwarzian limit relation
    {
        auto report = schwarzian_sign_report(s_to_sigma(koebe<RatC>(0.0, 10).s()));
        bool values_ok = report.limit_z4_schwarzian == RatC(-6) && report.sf0_bridge == RatC(-6) &&
                         report.equal_with_plus && !report.equal_with_minus;
        ctx.check("schwarzian_limit_values", values_ok,
                  "lim z^4 S_F = -6 b_1 and S_f(0) = 6(a_3 - a_2^2), both -6 for the Koebe map");
        ctx.warn("schwarzian_limit_sign",
                 "S_f(0) = " + report.sf0_bridge.re.to_string() + " and lim z^4 S_{F_f} = " +
                     report.limit_z4_schwarzian.re.to_string() +
                     " agree with a plus sign on every sample; the displayed relation "
                     "S_f(0) = -lim z^4 S_{F_f}(z) reverses it");
    }

    rep.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace univalent
