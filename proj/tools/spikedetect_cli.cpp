// spikedetect: eigenvalue tests for single-source detection with unknown
// noise level and channel. Subcommands: detect, threshold, pvalue, curves,
// simulate. All output is a pure function of the flags and input files; the
// TW table can be cached via SPIKE_DETECT_TW_CACHE.

#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spikedetect/detectors.hpp"
#include "spikedetect/errors.hpp"
#include "spikedetect/ldp.hpp"
#include "spikedetect/matrix_io.hpp"
#include "spikedetect/simulate.hpp"

using json = nlohmann::ordered_json;
using namespace spikedetect;

namespace {

constexpr const char* kSchema = "v1";

// Locale-independent, 10 significant digits.
std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json decision_to_json(const Decision& d) {
    json out;
    out["test"] = d.kind == TestKind::glrt ? "glrt" : "cond";
    out["statistic"] = d.statistic;
    out["threshold"] = d.threshold;
    if (d.p_value) out["p_value"] = *d.p_value;
    out["reject_null"] = d.reject_null;
    return out;
}

int run_detect(const std::string& file, const std::string& test, double alpha,
               const std::string& format) {
    const SnapshotMatrix y = io::read_matrix_file(file);
    const Decision d = test == "cond" ? cond_decide(y, alpha) : glrt_decide(y, alpha);

    if (format == "json") {
        json report;
        report["schema"] = kSchema;
        report["command"] = "detect";
        report["inputs"] = {{"file", file},
                            {"test", test},
                            {"alpha", alpha},
                            {"K", y.sensors()},
                            {"N", y.snapshots()}};
        report["outputs"] = decision_to_json(d);
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "# spikedetect " << kSchema << " detect test=" << test
                  << " alpha=" << fmt10(alpha) << " K=" << y.sensors() << " N=" << y.snapshots()
                  << " file=" << file << "\n";
        std::cout << "statistic,threshold,p_value,reject_null\n";
        std::cout << fmt10(d.statistic) << ',' << fmt10(d.threshold) << ','
                  << (d.p_value ? fmt10(*d.p_value) : std::string{}) << ','
                  << (d.reject_null ? 1 : 0) << "\n";
    }
    return d.reject_null ? 2 : 0;
}

int run_threshold(int k, int n, double alpha, const std::string& test, bool as_json) {
    const double thr = test == "cond" ? cond_threshold(k, n, alpha) : glrt_threshold(k, n, alpha);
    if (as_json) {
        json report;
        report["schema"] = kSchema;
        report["command"] = "threshold";
        report["inputs"] = {{"K", k}, {"N", n}, {"alpha", alpha}, {"test", test}};
        report["outputs"] = {{"threshold", thr}};
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << fmt10(thr) << "\n";
    }
    return 0;
}

int run_pvalue(int k, int n, double t, bool as_json) {
    const double p = glrt_pvalue(t, k, n);
    if (as_json) {
        json report;
        report["schema"] = kSchema;
        report["command"] = "pvalue";
        report["inputs"] = {{"K", k}, {"N", n}, {"t", t}};
        report["outputs"] = {{"p_value", p}};
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << fmt10(p) << "\n";
    }
    return 0;
}

void print_curve(const char* name, const std::vector<ldp::CurvePoint>& curve) {
    std::cout << "# curve: " << name << "\n";
    for (const auto& p : curve) std::cout << fmt10(p.a) << ',' << fmt10(p.b) << "\n";
}

int run_curves(double c, double rho, int points, const std::string& which, int threads) {
    const ldp::LdpContext ctx(c, rho);
    std::cout << "# spikedetect " << kSchema << " curves c=" << fmt10(c) << " rho=" << fmt10(rho)
              << " points=" << points << " which=" << which << "\n";
    std::cout << "# columns: a,b (error exponents under H0 and H1, nats per snapshot)\n";
    if (!ctx.supercritical()) {
        std::cout << "# status: empty (rho <= sqrt(c); no achievable error-exponent pairs)\n";
        return 0;
    }
    if (which == "T" || which == "both") print_curve("T", ldp::ee_curve_T(ctx, points, threads));
    if (which == "U" || which == "both") print_curve("U", ldp::ee_curve_U(ctx, points, threads));
    return 0;
}

sim::SimConfig make_config(int k, int n, double rho, double sigma2, long trials,
                           std::uint64_t seed, double alpha, const std::string& channel,
                           int threads) {
    sim::SimConfig cfg;
    cfg.sensors = k;
    cfg.snapshots = n;
    cfg.rho = rho;
    cfg.sigma2 = sigma2;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.alpha = alpha;
    cfg.channel_mode = channel == "isotropic" ? sim::ChannelMode::random_isotropic
                                              : sim::ChannelMode::deterministic_axis;
    cfg.threads = threads;
    cfg.validate();
    return cfg;
}

void print_sim_header(const char* mode, const sim::SimConfig& cfg) {
    std::cout << "# spikedetect " << kSchema << " simulate mode=" << mode << " K=" << cfg.sensors
              << " N=" << cfg.snapshots << " rho=" << fmt10(cfg.rho)
              << " sigma2=" << fmt10(cfg.sigma2) << " trials=" << cfg.trials
              << " seed=" << cfg.seed << " alpha=" << fmt10(cfg.alpha) << " channel="
              << (cfg.channel_mode == sim::ChannelMode::random_isotropic ? "isotropic" : "axis")
              << "\n";
}

json sim_inputs_json(const char* mode, const sim::SimConfig& cfg) {
    return {{"mode", mode},
            {"K", cfg.sensors},
            {"N", cfg.snapshots},
            {"rho", cfg.rho},
            {"sigma2", cfg.sigma2},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"alpha", cfg.alpha},
            {"channel",
             cfg.channel_mode == sim::ChannelMode::random_isotropic ? "isotropic" : "axis"}};
}

int run_simulate(const std::string& mode, const sim::SimConfig& cfg,
                 const std::vector<double>& pfa_grid, const std::string& format) {
    const bool as_json = format == "json";
    if (mode == "pfa") {
        const sim::PfaEstimate est = sim::empirical_pfa(cfg);
        if (as_json) {
            json report;
            report["schema"] = kSchema;
            report["command"] = "simulate";
            report["inputs"] = sim_inputs_json("pfa", cfg);
            report["outputs"] = {{"estimate", est.estimate},     {"wilson_low", est.wilson_low},
                                 {"wilson_high", est.wilson_high}, {"rejections", est.rejections},
                                 {"trials", est.trials},          {"threshold", est.threshold}};
            std::cout << report.dump(2) << "\n";
        } else {
            print_sim_header("pfa", cfg);
            std::cout << "estimate,wilson_low,wilson_high,rejections,trials,threshold\n";
            std::cout << fmt10(est.estimate) << ',' << fmt10(est.wilson_low) << ','
                      << fmt10(est.wilson_high) << ',' << est.rejections << ',' << est.trials
                      << ',' << fmt10(est.threshold) << "\n";
        }
        return 0;
    }
    if (mode == "roc") {
        if (!(cfg.rho > 0.0))
            throw std::domain_error("mode=roc needs a positive SNR (--rho-db or --rho-linear)");
        const auto [t_curve, u_curve] = sim::roc_at_matched_pfa(cfg, pfa_grid);
        if (as_json) {
            json report;
            report["schema"] = kSchema;
            report["command"] = "simulate";
            report["inputs"] = sim_inputs_json("roc", cfg);
            json pts = json::array();
            for (std::size_t i = 0; i < t_curve.points.size(); ++i)
                pts.push_back({{"pfa", pfa_grid[i]},
                               {"power_glrt", t_curve.points[i].power},
                               {"power_cond", u_curve.points[i].power}});
            report["outputs"] = {{"points", pts}, {"trials", cfg.trials}};
            std::cout << report.dump(2) << "\n";
        } else {
            print_sim_header("roc", cfg);
            std::cout << "pfa,power_glrt,power_cond,trials\n";
            for (std::size_t i = 0; i < t_curve.points.size(); ++i)
                std::cout << fmt10(pfa_grid[i]) << ',' << fmt10(t_curve.points[i].power) << ','
                          << fmt10(u_curve.points[i].power) << ',' << cfg.trials << "\n";
        }
        return 0;
    }
    if (mode == "twcheck") {
        const double dist = sim::tw_fluctuation_check(cfg);
        if (as_json) {
            json report;
            report["schema"] = kSchema;
            report["command"] = "simulate";
            report["inputs"] = sim_inputs_json("twcheck", cfg);
            report["outputs"] = {{"kolmogorov_distance", dist}, {"trials", cfg.trials}};
            std::cout << report.dump(2) << "\n";
        } else {
            print_sim_header("twcheck", cfg);
            std::cout << "kolmogorov_distance,trials\n";
            std::cout << fmt10(dist) << ',' << cfg.trials << "\n";
        }
        return 0;
    }
    throw std::domain_error("unknown simulate mode: " + mode);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue tests for single-source detection (GLRT and condition number)"};
    app.require_subcommand(1);

    // detect
    std::string detect_file, detect_test = "glrt", detect_format = "json";
    double detect_alpha = 0.05;
    auto* detect = app.add_subcommand("detect", "Run a test on a matrix file");
    detect->add_option("file", detect_file, "matrix file (header \"K,N\", then K rows of 2N fields)")
        ->required();
    detect->add_option("--test", detect_test, "glrt|cond")->check(CLI::IsMember({"glrt", "cond"}));
    detect->add_option("--alpha", detect_alpha, "test level in (0,1)");
    detect->add_option("--format", detect_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // threshold
    int thr_k = 0, thr_n = 0;
    double thr_alpha = 0.05;
    std::string thr_test = "glrt";
    bool thr_json = false;
    auto* threshold = app.add_subcommand("threshold", "Asymptotic test threshold");
    threshold->add_option("--K", thr_k, "sensors")->required();
    threshold->add_option("--N", thr_n, "snapshots")->required();
    threshold->add_option("--alpha", thr_alpha, "test level in (0,1)");
    threshold->add_option("--test", thr_test, "glrt|cond")
        ->check(CLI::IsMember({"glrt", "cond"}));
    threshold->add_flag("--json", thr_json, "emit a JSON report instead of the bare scalar");

    // pvalue
    int pv_k = 0, pv_n = 0;
    double pv_t = 0.0;
    bool pv_json = false;
    auto* pvalue = app.add_subcommand("pvalue", "Asymptotic GLRT p-value of an observed T_N");
    pvalue->add_option("--K", pv_k, "sensors")->required();
    pvalue->add_option("--N", pv_n, "snapshots")->required();
    pvalue->add_option("--t", pv_t, "observed statistic T_N")->required();
    pvalue->add_flag("--json", pv_json, "emit a JSON report instead of the bare scalar");

    // curves
    double cv_c = 0.0, cv_rho = -1.0, cv_rho_db = std::nan("");
    int cv_points = 256, cv_threads = 0;
    std::string cv_which = "both";
    auto* curves = app.add_subcommand("curves", "Error-exponent curves of the two tests");
    curves->add_option("--c", cv_c, "limit ratio K/N in (0,1)")->required();
    auto* cv_lin = curves->add_option("--rho", cv_rho, "limiting SNR (linear)");
    auto* cv_db = curves->add_option("--rho-db", cv_rho_db, "limiting SNR in dB (10^(dB/10))");
    cv_lin->excludes(cv_db);
    curves->add_option("--points", cv_points, "points per curve")->check(CLI::Range(2, 100000));
    curves->add_option("--which", cv_which, "T|U|both")->check(CLI::IsMember({"T", "U", "both"}));
    curves->add_option("--threads", cv_threads, "0 = all cores, 1 = serial");

    // simulate
    int sm_k = 0, sm_n = 0, sm_threads = 0;
    double sm_rho = 0.0, sm_rho_db = std::nan(""), sm_sigma2 = 1.0, sm_alpha = 0.05;
    long sm_trials = 1000;
    std::uint64_t sm_seed = 0;
    std::string sm_mode, sm_channel = "axis", sm_format = "csv";
    std::vector<double> sm_pfa_grid;
    auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo runs");
    simulate->add_option("--K", sm_k, "sensors")->required();
    simulate->add_option("--N", sm_n, "snapshots")->required();
    simulate->add_option("--mode", sm_mode, "pfa|roc|twcheck")
        ->required()
        ->check(CLI::IsMember({"pfa", "roc", "twcheck"}));
    auto* sm_lin = simulate->add_option("--rho-linear", sm_rho, "SNR (linear)");
    auto* sm_db = simulate->add_option("--rho-db", sm_rho_db, "SNR in dB (rho = 10^(dB/10))");
    sm_lin->excludes(sm_db);
    simulate->add_option("--sigma2", sm_sigma2, "noise variance");
    simulate->add_option("--trials", sm_trials, "Monte Carlo trials");
    simulate->add_option("--seed", sm_seed, "64-bit stream seed");
    simulate->add_option("--alpha", sm_alpha, "level for mode=pfa");
    simulate->add_option("--channel", sm_channel, "axis|isotropic")
        ->check(CLI::IsMember({"axis", "isotropic"}));
    simulate->add_option("--threads", sm_threads, "0 = all cores, 1 = serial");
    simulate->add_option("--pfa-grid", sm_pfa_grid,
                         "matched false-alarm rates for mode=roc (default 0.01..0.5)");
    simulate->add_option("--format", sm_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*detect) return run_detect(detect_file, detect_test, detect_alpha, detect_format);
        if (*threshold) return run_threshold(thr_k, thr_n, thr_alpha, thr_test, thr_json);
        if (*pvalue) return run_pvalue(pv_k, pv_n, pv_t, pv_json);
        if (*curves) {
            if (!*cv_lin && !*cv_db) throw std::domain_error("need --rho or --rho-db");
            const double rho = *cv_db ? std::pow(10.0, cv_rho_db / 10.0) : cv_rho;
            return run_curves(cv_c, rho, cv_points, cv_which, cv_threads);
        }
        if (*simulate) {
            double rho = 0.0;
            if (*sm_db)
                rho = std::pow(10.0, sm_rho_db / 10.0);
            else if (*sm_lin)
                rho = sm_rho;
            if (sm_pfa_grid.empty())
                sm_pfa_grid = {0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
            const sim::SimConfig cfg = make_config(sm_k, sm_n, rho, sm_sigma2, sm_trials,
                                                   sm_seed, sm_alpha, sm_channel, sm_threads);
            return run_simulate(sm_mode, cfg, sm_pfa_grid, sm_format);
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const degenerate_error& e) {
        std::cerr << "error: degenerate data: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
