#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "univalent/scan.hpp"

using namespace univalent;

namespace {

ScanConfig small_zalcman_cfg() {
    ScanConfig cfg;
    cfg.experiment = "zalcman";
    cfg.n_lo = 3;
    cfg.n_hi = 5;
    cfg.samples = 120;
    cfg.seed = 42;
    cfg.has_seed = true;
    return cfg;
}

json normalized(const ScanReport& rep) { return report_to_json(rep, false); }

} // namespace

TEST_CASE("zalcman scan: no violations, Koebe extrema, witness classification") {
    auto rep = run_zalcman_scan(small_zalcman_cfg());
    CHECK(rep.exit_code() == 0);
    CHECK(rep.violations.empty());
    CHECK(!rep.records.empty());
    for (const auto& e : rep.extrema) {
        double bound = double(e.n - 1) * (e.n - 1);
        CHECK(e.value == doctest::Approx(bound).epsilon(1e-9));
    }
    CHECK(!rep.witnesses.empty());
    for (const auto& w : rep.witnesses) CHECK(w.koebe_rotation);
}

TEST_CASE("zalcman scan in exact mode: witnesses meet the bound exactly") {
    ScanConfig cfg = small_zalcman_cfg();
    cfg.exact = true;
    cfg.samples = 30;
    auto rep = run_zalcman_scan(cfg);
    CHECK(rep.exit_code() == 0);
    bool saw_koebe_witness = false;
    for (const auto& w : rep.witnesses) {
        CHECK(w.koebe_rotation);
        if (w.id.rfind("koebe;", 0) == 0) saw_koebe_witness = true;
    }
    CHECK(saw_koebe_witness);
}

TEST_CASE("determinism: identical config gives byte-identical reports minus wall clock") {
    auto cfg = small_zalcman_cfg();
    auto a = run_zalcman_scan(cfg);
    auto b = run_zalcman_scan(cfg);
    CHECK(normalized(a).dump() == normalized(b).dump());
    CHECK(report_to_csv(a) == report_to_csv(b));
}

TEST_CASE("parallel and serial execution produce identical reports") {
    auto cfg = small_zalcman_cfg();
    cfg.threads = 1;
    auto serial = run_zalcman_scan(cfg);
    cfg.threads = 8;
    auto parallel = run_zalcman_scan(cfg);
    CHECK(normalized(serial).dump() == normalized(parallel).dump());
    CHECK(report_to_csv(serial) == report_to_csv(parallel));

    ScanConfig rcfg;
    rcfg.experiment = "ratio";
    rcfg.seed = 5;
    rcfg.has_seed = true;
    rcfg.n_max_ratio = 16;
    rcfg.threads = 1;
    auto r_serial = run_asymptotic_ratio(rcfg);
    rcfg.threads = 6;
    auto r_parallel = run_asymptotic_ratio(rcfg);
    CHECK(normalized(r_serial).dump() == normalized(r_parallel).dump());
}

TEST_CASE("config validation errors") {
    ScanConfig cfg;
    cfg.samples = 10; // no seed
    CHECK_THROWS_AS(run_zalcman_scan(cfg), ConfigError);
    ScanConfig bad_tol = small_zalcman_cfg();
    bad_tol.tolerance = 0.0;
    CHECK_THROWS_AS(run_zalcman_scan(bad_tol), ConfigError);
    ScanConfig bad_n = small_zalcman_cfg();
    bad_n.n_lo = 9;
    bad_n.n_hi = 3;
    CHECK_THROWS_AS(run_zalcman_scan(bad_n), ConfigError);
    ScanConfig exact_ratio;
    exact_ratio.exact = true;
    CHECK_THROWS_AS(run_asymptotic_ratio(exact_ratio), ConfigError);
}

TEST_CASE("config JSON round trip") {
    ScanConfig cfg = small_zalcman_cfg();
    cfg.exact = true;
    cfg.threads = 3;
    cfg.tolerance = 1e-8;
    auto back = config_from_json(config_to_json(cfg));
    CHECK(config_to_json(back).dump() == config_to_json(cfg).dump());
}

TEST_CASE("distortion scan: zero violations, Koebe slack exactly zero in exact mode") {
    ScanConfig cfg;
    cfg.experiment = "distortion";
    cfg.n_lo = 3;
    cfg.n_hi = 6;
    cfg.p_lo = 1;
    cfg.p_hi = 3;
    cfg.samples = 60;
    cfg.seed = 7;
    cfg.has_seed = true;
    cfg.exact = true;
    auto rep = run_distortion_scan(cfg);
    CHECK(rep.exit_code() == 0);
    int koebe_rows = 0;
    for (const auto& rec : rep.records) {
        if (rec.id.rfind("koebe;", 0) == 0 && rec.id.find("homotopy") == std::string::npos) {
            CHECK(rec.slack == 0.0);
            ++koebe_rows;
        }
    }
    CHECK(koebe_rows > 0);
}

TEST_CASE("zalcman exact catalog at n=3: the bound is attained by exactly the two rotations") {
    ScanConfig cfg;
    cfg.experiment = "zalcman";
    cfg.n_lo = 3;
    cfg.n_hi = 3;
    cfg.exact = true;
    auto rep = run_zalcman_scan(cfg);
    CHECK(rep.exit_code() == 0);
    REQUIRE(rep.extrema.size() == 1);
    CHECK(rep.extrema[0].value == 4.0);
    REQUIRE(rep.witnesses.size() == 2); // koebe theta = 0 and theta = pi, nothing else
    for (const auto& w : rep.witnesses) {
        CHECK(w.id.rfind("koebe;theta=", 0) == 0);
        CHECK(w.koebe_rotation);
    }
}

TEST_CASE("ratio scan: non-Koebe samples stay below 1, homotopy decays by t^2") {
    ScanConfig cfg;
    cfg.experiment = "ratio";
    cfg.seed = 2024;
    cfg.has_seed = true;
    cfg.n_max_ratio = 24;
    auto rep = run_asymptotic_ratio(cfg);
    CHECK(rep.exit_code() == 0);
    bool saw_koebe_boundary = false;
    bool saw_homotopy_trend = false;
    for (const auto& e : rep.extrema) {
        bool is_homotopy = e.sample_id.find("homotopy") != std::string::npos;
        if (e.label.rfind("tail_trend;", 0) == 0) {
            if (e.sample_id.rfind("koebe", 0) == 0 && !is_homotopy)
                CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12)); // flat at the boundary
            if (is_homotopy) {
                CHECK(e.value == doctest::Approx(0.25).epsilon(1e-9)); // decays by t^2
                saw_homotopy_trend = true;
            }
            continue;
        }
        if (e.sample_id.rfind("koebe;theta=0", 0) == 0 && !is_homotopy) {
            CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
            saw_koebe_boundary = true;
        } else if (e.sample_id.rfind("starlike", 0) == 0) {
            CHECK(e.value < 1.0);
        }
    }
    CHECK(saw_koebe_boundary);
    CHECK(saw_homotopy_trend);

    // r_{n+1}/r_n = 1/4 for the Koebe homotopy at t = 1/2
    std::vector<double> homotopy_ratios(static_cast<std::size_t>(cfg.n_max_ratio) + 1, 0.0);
    for (const auto& rec : rep.records)
        if (rec.id.find("homotopy_t_re=0.5") != std::string::npos)
            homotopy_ratios[static_cast<std::size_t>(rec.n)] = rec.modulus / rec.bound;
    for (int n = 3; n < cfg.n_max_ratio; ++n) {
        double consecutive = homotopy_ratios[static_cast<std::size_t>(n + 1)] /
                             homotopy_ratios[static_cast<std::size_t>(n)];
        CHECK(consecutive == doctest::Approx(0.25).epsilon(0.05));
    }
}

TEST_CASE("golden suite: all checks pass with exactly the two documented warnings") {
    auto rep = run_golden_suite();
    CHECK(rep.exit_code() == 0);
    CHECK(rep.violations.empty());
    REQUIRE(rep.warnings.size() == 2);
    CHECK(rep.warnings[0].code == "root_transform_tail_coefficient");
    CHECK(rep.warnings[1].code == "schwarzian_limit_sign");
    // both values are printed in each warning
    CHECK(rep.warnings[0].message.find("5/9") != std::string::npos);
    CHECK(rep.warnings[0].message.find("1/9") != std::string::npos);
    CHECK(rep.warnings[1].message.find("-6") != std::string::npos);
}

TEST_CASE("report JSON carries the documented schema") {
    auto rep = run_zalcman_scan(small_zalcman_cfg());
    json j = report_to_json(rep);
    for (const char* key :
         {"version", "experiment", "config", "extrema", "witnesses", "violations", "warnings"})
        CHECK(j.contains(key));
    CHECK(j["version"] == kReportVersion);
    CHECK(j["experiment"] == "zalcman");
    CHECK(j["config"]["seed"] == 42);

    std::string csv = report_to_csv(rep);
    CHECK(csv.rfind("id,family,params,n,p,modulus,bound,slack\n", 0) == 0);
    // one row per (sample, n) evaluation plus the header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rep.records.size()) + 1);
}

TEST_CASE("parallel_for propagates worker exceptions") {
    CHECK_THROWS_AS(parallel_for(64, 4,
                                 [](std::size_t i) {
                                     if (i == 37) throw ConfigError("worker failure");
                                 }),
                    ConfigError);
    // serial path too
    CHECK_THROWS_AS(parallel_for(4, 1,
                                 [](std::size_t i) {
                                     if (i == 2) throw ConfigError("worker failure");
                                 }),
                    ConfigError);
}

TEST_CASE("exit codes: violations nonempty <=> exit code 1") {
    ScanReport rep;
    CHECK(rep.exit_code() == 0);
    rep.warnings.push_back({"some_warning", "warnings never fail a run"});
    CHECK(rep.exit_code() == 0);
    rep.violations.push_back({"id", 3, 0, 5.0, 4.0, -1.0, "bound exceeded"});
    CHECK(rep.exit_code() == 1);
}

TEST_CASE("WORKBENCH_THREADS caps parallelism") {
    setenv("WORKBENCH_THREADS", "2", 1);
    CHECK(effective_threads(0) == 2);
    unsetenv("WORKBENCH_THREADS");
    CHECK(effective_threads(5) == 5);
    CHECK(effective_threads(0) >= 1);
}
