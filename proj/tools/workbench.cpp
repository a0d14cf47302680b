// workbench: experiment driver for coefficient-functional scans on univalent
// function classes. Subcommands mirror the library modules: symbolic
// expansions, coefficient transforms, family generators, functional
// evaluation, metric checks, and the scan harness.
//
// Exit codes: 0 all assertions hold, 1 mathematical violation found,
// 2 configuration or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "univalent/io.hpp"
#include "univalent/multipoly.hpp"
#include "univalent/scan.hpp"

using namespace univalent;

namespace {

constexpr double kPi = 3.141592653589793;

Rational parse_rational_arg(const std::string& s) {
    try {
        return Rational::from_string(s);
    } catch (const Error&) {
        return Rational::from_double(std::stod(s));
    }
}

double parse_theta_arg(const std::string& s) {
    if (s == "pi") return kPi;
    if (s == "-pi") return -kPi;
    return std::stod(s);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
    if (out_path)
        write_text_file(*out_path, text);
    else
        std::cout << text << "\n";
}

struct ScanCli {
    std::string config_path;
    ScanConfig cfg;
    bool seed_given = false;
    std::string mode = "";
    std::string out_json, out_csv;
};

void add_scan_options(CLI::App* cmd, ScanCli& cli) {
    cmd->add_option("--config", cli.config_path, "scan config JSON; flags override its fields");
    cmd->add_option("--n-lo", cli.cfg.n_lo, "lowest coefficient index n");
    cmd->add_option("--n-hi", cli.cfg.n_hi, "highest coefficient index n");
    cmd->add_option("--p-lo", cli.cfg.p_lo, "lowest power p");
    cmd->add_option("--p-hi", cli.cfg.p_hi, "highest power p");
    cmd->add_option("--samples", cli.cfg.samples, "random starlike samples on top of the catalog");
    cmd->add_option("--seed", cli.cfg.seed, "RNG seed for the sample batch")
        ->each([&](const std::string&) { cli.seed_given = true; });
    cmd->add_option("--mode", cli.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--tolerance", cli.cfg.tolerance, "relative violation tolerance (float mode)");
    cmd->add_option("--witness-tol", cli.cfg.witness_rel_tol, "relative equality-witness tolerance");
    cmd->add_option("--n-max", cli.cfg.n_max_ratio, "largest n for the ratio scan");
    cmd->add_option("--threads", cli.cfg.threads, "worker cap (0 = WORKBENCH_THREADS or cores)");
    cmd->add_option("--out", cli.out_json, "write the JSON report here");
    cmd->add_option("--csv", cli.out_csv, "write per-sample CSV rows here");
}

ScanConfig resolve_scan_config(const ScanCli& cli, CLI::App* cmd, const std::string& experiment) {
    ScanConfig cfg;
    if (!cli.config_path.empty()) cfg = config_from_json(read_json_file(cli.config_path));
    cfg.experiment = experiment;
    auto take = [&](const char* flag, auto member, auto value) {
        if (cmd->count(flag)) member(cfg) = value;
    };
    take("--n-lo", [](ScanConfig& c) -> int& { return c.n_lo; }, cli.cfg.n_lo);
    take("--n-hi", [](ScanConfig& c) -> int& { return c.n_hi; }, cli.cfg.n_hi);
    take("--p-lo", [](ScanConfig& c) -> int& { return c.p_lo; }, cli.cfg.p_lo);
    take("--p-hi", [](ScanConfig& c) -> int& { return c.p_hi; }, cli.cfg.p_hi);
    take("--samples", [](ScanConfig& c) -> int& { return c.samples; }, cli.cfg.samples);
    take("--tolerance", [](ScanConfig& c) -> double& { return c.tolerance; }, cli.cfg.tolerance);
    take("--witness-tol", [](ScanConfig& c) -> double& { return c.witness_rel_tol; },
         cli.cfg.witness_rel_tol);
    take("--n-max", [](ScanConfig& c) -> int& { return c.n_max_ratio; }, cli.cfg.n_max_ratio);
    take("--threads", [](ScanConfig& c) -> int& { return c.threads; }, cli.cfg.threads);
    if (cli.seed_given) {
        cfg.seed = cli.cfg.seed;
        cfg.has_seed = true;
    }
    if (!cli.mode.empty()) cfg.exact = cli.mode == "exact";
    return cfg;
}

int finish_scan(const ScanReport& rep, const ScanCli& cli) {
    if (!cli.out_json.empty()) write_text_file(cli.out_json, report_to_json(rep).dump(2) + "\n");
    if (!cli.out_csv.empty()) write_text_file(cli.out_csv, report_to_csv(rep));
    std::cout << "experiment: " << rep.experiment << "\n";
    std::cout << "records: " << rep.records.size() << ", witnesses: " << rep.witnesses.size()
              << ", violations: " << rep.violations.size() << ", warnings: " << rep.warnings.size()
              << "\n";
    for (const auto& e : rep.extrema)
        std::cout << "  max " << e.label << " = " << fmt_param(e.value) << " at " << e.sample_id
                  << "\n";
    for (const auto& w : rep.warnings) std::cout << "  WARN [" << w.code << "] " << w.message << "\n";
    for (const auto& v : rep.violations)
        std::cout << "  VIOLATION " << v.id << " n=" << v.n << " p=" << v.p << ": " << v.reason
                  << " (modulus " << fmt_param(v.modulus) << " vs bound " << fmt_param(v.bound)
                  << ")\n";
    std::cout << "wall clock: " << fmt_param(rep.wall_clock_ms) << " ms\n";
    std::cout << (rep.exit_code() == 0 ? "OK" : "VIOLATIONS FOUND") << "\n";
    return rep.exit_code();
}

int run_golden_cli(const ScanCli& cli) {
    auto rep = run_golden_suite();
    for (const auto& rec : rep.records) {
        auto pos = rec.params.find(';');
        std::string status = rec.params.substr(0, pos);
        std::string detail = pos == std::string::npos ? "" : rec.params.substr(pos + 1);
        std::cout << "  " << status.substr(7) << "  " << rec.id << ": " << detail << "\n";
    }
    return finish_scan(rep, cli);
}

template <class K>
int eval_functional(const json& sample_json, const std::string& name, int n, int p,
                    const std::optional<std::string>& out_path) {
    auto sample = sample_from_json<K>(sample_json);
    SCoeffs<K> converted;
    const SCoeffs<K>* coeffs = nullptr;
    if (sample.klass() == FunctionClass::S) {
        coeffs = &sample.s();
    } else {
        converted = sigma_to_s(sample.sigma());
        coeffs = &converted;
    }
    FunctionalSpec spec;
    if (name == "zalcman")
        spec = FunctionalSpec::make_zalcman(n);
    else if (name == "power-gap")
        spec = FunctionalSpec::make_power_gap(n, p);
    else if (name == "adjacent-gap")
        spec = FunctionalSpec::make_adjacent_gap(n, p);
    else
        throw ConfigError("unknown functional " + name);
    K value = spec.evaluate(*coeffs);
    double modulus = scalar_traits<K>::abs(value);
    double bound = spec.koebe_bound().to_double();
    json out;
    out["functional"] = spec.label();
    out["value"] = scalar_to_json(value);
    out["modulus"] = modulus;
    out["bound"] = bound;
    out["slack"] = bound - modulus;
    emit(out_path, out.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"univalent-function coefficient workbench"};
    app.require_subcommand(1);

    // symbolic ---------------------------------------------------------------
    auto* symbolic = app.add_subcommand("symbolic", "integer polynomial expansions in b_0..b_k");
    symbolic->require_subcommand(1);
    int sym_n = 4;
    std::optional<std::string> sym_out;
    auto* a_in_b_cmd = symbolic->add_subcommand("a-in-b", "print a_n as a polynomial in b_0..b_{n-2}");
    a_in_b_cmd->add_option("--n", sym_n, "coefficient index n >= 2")->required();
    a_in_b_cmd->add_option("--out", sym_out, "output file (default stdout)");
    auto* zal_cmd = symbolic->add_subcommand("zalcman-in-b", "print a_n^2 - a_{2n-1} in b_0..b_{2n-3}");
    zal_cmd->add_option("--n", sym_n, "coefficient index n >= 3")->required();
    zal_cmd->add_option("--out", sym_out, "output file (default stdout)");

    // coeffs -----------------------------------------------------------------
    auto* coeffs = app.add_subcommand("coeffs", "transforms between S and Sigma coefficient tails");
    coeffs->require_subcommand(1);
    std::string invert_direction, invert_input;
    std::optional<std::string> invert_out;
    auto* invert = coeffs->add_subcommand("invert", "apply the coefficient recurrence either way");
    invert->add_option("--direction", invert_direction, "s2sigma | sigma2s")
        ->required()
        ->check(CLI::IsMember({"s2sigma", "sigma2s"}));
    invert->add_option("--input", invert_input, "JSON array of [re, im] entries")->required();
    invert->add_option("--out", invert_out, "output file (default stdout)");

    // family -----------------------------------------------------------------
    auto* family = app.add_subcommand("family", "explicit function families and samplers");
    family->require_subcommand(1);
    auto* fam_emit = family->add_subcommand("emit", "generate a sample and write it as JSON");
    std::string fam_name, fam_theta = "0", fam_t = "1", fam_k = "1/50", fam_mode = "exact";
    std::string fam_b0 = "0,0", fam_b1 = "0,0";
    int fam_m = 1, fam_n = 3, fam_order = 12, fam_factors = 2;
    std::uint64_t fam_seed = 1;
    std::string fam_out;
    fam_emit->add_option("--name", fam_name,
                         "koebe | koebe_root | two_coeff_sigma | f_root_small | small_dilatation | starlike")
        ->required()
        ->check(CLI::IsMember({"koebe", "koebe_root", "two_coeff_sigma", "f_root_small",
                               "small_dilatation", "starlike"}));
    fam_emit->add_option("--order", fam_order, "truncation order");
    fam_emit->add_option("--theta", fam_theta, "rotation angle (number or pi / -pi)");
    fam_emit->add_option("--m", fam_m, "root-transform order m");
    fam_emit->add_option("--n", fam_n, "target coefficient index (small_dilatation)");
    fam_emit->add_option("--k", fam_k, "dilatation bound k (rational, small_dilatation)");
    fam_emit->add_option("--t", fam_t, "complex parameter t as re,im (rational entries)");
    fam_emit->add_option("--b0", fam_b0, "b_0 as re,im (two_coeff_sigma)");
    fam_emit->add_option("--b1", fam_b1, "b_1 as re,im (two_coeff_sigma)");
    fam_emit->add_option("--seed", fam_seed, "sampler seed (starlike)");
    fam_emit->add_option("--factors", fam_factors, "number of boundary atoms (starlike)");
    fam_emit->add_option("--mode", fam_mode, "exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    fam_emit->add_option("--out", fam_out, "output sample path")->required();

    // functional -------------------------------------------------------------
    auto* functional = app.add_subcommand("functional", "evaluate coefficient functionals");
    functional->require_subcommand(1);
    auto* feval = functional->add_subcommand("eval", "evaluate a functional on a sample file");
    std::string func_name, func_input;
    int func_n = 3, func_p = 1;
    std::optional<std::string> func_out;
    feval->add_option("--name", func_name, "zalcman | power-gap | adjacent-gap")
        ->required()
        ->check(CLI::IsMember({"zalcman", "power-gap", "adjacent-gap"}));
    feval->add_option("--n", func_n, "coefficient index")->required();
    feval->add_option("--p", func_p, "power p");
    feval->add_option("--input", func_input, "sample JSON path")->required();
    feval->add_option("--out", func_out, "output file (default stdout)");

    // metric -----------------------------------------------------------------
    auto* metric = app.add_subcommand("metric", "curvature and lemma checks for radial metrics");
    metric->require_subcommand(1);
    auto* lemma = metric->add_subcommand(
        "check-lemma33", "check the circularly symmetric lower bound on the standard test envelope");
    int met_m = 1;
    double met_c = 1.0;
    std::string met_grid = "0.05:0.9:0.001";
    std::optional<std::string> met_out;
    lemma->add_option("--m", met_m, "vanishing order m >= 1")->required();
    lemma->add_option("--c", met_c, "leading coefficient c in (0, 1]")->required();
    lemma->add_option("--grid", met_grid, "radial grid lo:hi:h");
    lemma->add_option("--out", met_out, "output file (default stdout)");

    // scan -------------------------------------------------------------------
    auto* scan = app.add_subcommand("scan", "inequality scans keyed to the coefficient theorems");
    scan->require_subcommand(1);
    ScanCli zal_cli, dist_cli, ratio_cli, golden_cli;
    auto* scan_zal = scan->add_subcommand("zalcman", "|a_n^2 - a_{2n-1}| <= (n-1)^2");
    add_scan_options(scan_zal, zal_cli);
    auto* scan_dist = scan->add_subcommand("distortion", "higher-coefficient gap bounds");
    add_scan_options(scan_dist, dist_cli);
    auto* scan_ratio = scan->add_subcommand("ratio", "asymptotic ratio |J_n|/(n-1)^2");
    add_scan_options(scan_ratio, ratio_cli);
    auto* scan_golden = scan->add_subcommand("golden", "fixed-answer identity suite");
    add_scan_options(scan_golden, golden_cli);

    CLI11_PARSE(app, argc, argv);

    try {
        if (a_in_b_cmd->parsed()) {
            emit(sym_out, a_in_b(sym_n).to_string());
            return 0;
        }
        if (zal_cmd->parsed()) {
            emit(sym_out, zalcman_in_b(sym_n).to_string());
            return 0;
        }
        if (invert->parsed()) {
            json input = read_json_file(invert_input);
            bool exact = true;
            for (const auto& e : input)
                for (const auto& part : e)
                    if (!part.is_string() && !part.is_number_integer()) exact = false;
            json out;
            if (exact) {
                auto v = coeff_vector_from_json<RatC>(input);
                out = invert_direction == "s2sigma"
                          ? coeff_vector_to_json(s_to_sigma(SCoeffs<RatC>(v)).b)
                          : coeff_vector_to_json(sigma_to_s(SigmaCoeffs<RatC>(v)).a);
            } else {
                auto v = coeff_vector_from_json<Cplx>(input);
                out = invert_direction == "s2sigma"
                          ? coeff_vector_to_json(s_to_sigma(SCoeffs<Cplx>(v)).b)
                          : coeff_vector_to_json(sigma_to_s(SigmaCoeffs<Cplx>(v)).a);
            }
            emit(invert_out, out.dump(2));
            return 0;
        }
        if (fam_emit->parsed()) {
            auto parse_pair = [](const std::string& s) -> std::pair<Rational, Rational> {
                auto comma = s.find(',');
                if (comma == std::string::npos) return {parse_rational_arg(s), Rational(0)};
                return {parse_rational_arg(s.substr(0, comma)),
                        parse_rational_arg(s.substr(comma + 1))};
            };
            double theta = parse_theta_arg(fam_theta);
            auto [t_re, t_im] = parse_pair(fam_t);
            auto [b0_re, b0_im] = parse_pair(fam_b0);
            auto [b1_re, b1_im] = parse_pair(fam_b1);
            json out;
            auto build = [&](auto tag) {
                using K = decltype(tag);
                K t;
                if constexpr (scalar_traits<K>::is_exact)
                    t = RatC(t_re, t_im);
                else
                    t = Cplx(t_re.to_double(), t_im.to_double());
                UnivalentSample<K> sample;
                if (fam_name == "koebe")
                    sample = koebe<K>(theta, fam_order);
                else if (fam_name == "koebe_root")
                    sample = koebe_root<K>(fam_m, theta, fam_order);
                else if (fam_name == "two_coeff_sigma") {
                    K b0, b1;
                    if constexpr (scalar_traits<K>::is_exact) {
                        b0 = RatC(b0_re, b0_im);
                        b1 = RatC(b1_re, b1_im);
                    } else {
                        b0 = Cplx(b0_re.to_double(), b0_im.to_double());
                        b1 = Cplx(b1_re.to_double(), b1_im.to_double());
                    }
                    sample = two_coeff_sigma<K>(b0, b1, fam_order);
                } else if (fam_name == "f_root_small")
                    sample = f_root_small<K>(fam_m, t, fam_order);
                else if (fam_name == "small_dilatation")
                    sample = small_dilatation<K>(fam_n, parse_rational_arg(fam_k), t, fam_order);
                else
                    sample = starlike_sample<K>(fam_seed, fam_factors, fam_order);
                out = sample_to_json(sample);
            };
            if (fam_mode == "exact")
                build(RatC{});
            else
                build(Cplx{});
            write_text_file(fam_out, out.dump(2) + "\n");
            std::cout << "wrote " << fam_out << "\n";
            return 0;
        }
        if (feval->parsed()) {
            json input = read_json_file(func_input);
            return sample_json_is_exact(input)
                       ? eval_functional<RatC>(input, func_name, func_n, func_p, func_out)
                       : eval_functional<Cplx>(input, func_name, func_n, func_p, func_out);
        }
        if (lemma->parsed()) {
            double lo = 0, hi = 0, h = 0;
            if (std::sscanf(met_grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &h) != 3)
                throw ConfigError("grid must be lo:hi:h");
            auto env = lemma33_test_envelope(met_m, met_c, lo, hi, h);
            auto rep = lemma33_report(env, met_m, met_c);
            json out;
            out["m"] = met_m;
            out["c"] = met_c;
            out["grid"] = met_grid;
            out["min_margin"] = rep.min_margin;
            out["curvature_max_violation"] = rep.curvature_max_violation;
            out["hypothesis_fit_residual"] = rep.fit_residual;
            out["hypothesis_ok"] = rep.hypothesis_ok;
            out["bound_ok"] = rep.bound_ok;
            emit(met_out, out.dump(2));
            return rep.hypothesis_ok && rep.bound_ok ? 0 : 1;
        }
        if (scan_zal->parsed()) return finish_scan(run_zalcman_scan(resolve_scan_config(zal_cli, scan_zal, "zalcman")), zal_cli);
        if (scan_dist->parsed()) {
            ScanConfig cfg = resolve_scan_config(dist_cli, scan_dist, "distortion");
            if (!scan_dist->count("--n-hi") && dist_cli.config_path.empty()) cfg.n_hi = 6;
            return finish_scan(run_distortion_scan(cfg), dist_cli);
        }
        if (scan_ratio->parsed())
            return finish_scan(run_asymptotic_ratio(resolve_scan_config(ratio_cli, scan_ratio, "ratio")), ratio_cli);
        if (scan_golden->parsed()) return run_golden_cli(golden_cli);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
