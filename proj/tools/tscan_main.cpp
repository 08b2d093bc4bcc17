// Command-line driver: threshold calibration, closed-form and simulated
// FDP/POD, reference-table reproduction, and CSV stream analysis.
//
// Exit codes: 0 ok, 1 usage error, 2 data error, 3 numeric failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tscan/tscan.hpp"

namespace {

using nlohmann::json;
using namespace tscan;

struct ChartOptions {
    std::string chart;
    int dimension = 1;
    double beta = 0.0;
    int window = 0;
    int window_lo = 0;
    int window_hi = 0;
    double ref_strength = 0.0;
    double threshold = 0.0;
    double soft_p = 0.0;
    double hard_cut = 0.25;
    bool hard_cut_given = false;

    std::string nu_mode = "exp";
    std::string ewma_arg = "default";
    bool boundary_corrected = false;
};

ChartKind parse_kind(const std::string& name) {
    static const std::vector<std::pair<std::string, ChartKind>> kinds = {
        {"ewma", ChartKind::Ewma},
        {"ma", ChartKind::Ma},
        {"moving-ewma", ChartKind::MovingEwma},
        {"cusum", ChartKind::Cusum},
        {"wgl", ChartKind::WindowedGlr},
        {"windowed-glr", ChartKind::WindowedGlr},
        {"glrt", ChartKind::WindowedGlr},
        {"mewma", ChartKind::Mewma},
        {"mma", ChartKind::Mma},
        {"mcusum", ChartKind::Mcusum},
        {"mglrt", ChartKind::Mglrt},
        {"mc1", ChartKind::Mc1},
        {"mewma-soft", ChartKind::MewmaSoft},
        {"mewma-hard", ChartKind::MewmaHard},
        {"mma-hard", ChartKind::MmaHard},
        {"mglrt-hard", ChartKind::MglrtHard},
    };
    for (const auto& [key, kind] : kinds)
        if (key == name) return kind;
    throw CLI::ValidationError("--chart", "unknown chart kind '" + name + "'");
}

ChartSpec build_spec(const ChartOptions& o) {
    ChartSpec spec;
    spec.kind = parse_kind(o.chart);
    spec.dimension = o.dimension;
    spec.beta = o.beta;
    spec.window = o.window;
    spec.window_lo = o.window_lo;
    spec.window_hi = o.window_hi;
    spec.ref_strength = o.ref_strength;
    spec.threshold = o.threshold;
    spec.soft_p = o.soft_p;
    spec.hard_cut = o.hard_cut;
    if (o.hard_cut_given) {
        // promote the plain kind to its hard-threshold variant
        switch (spec.kind) {
            case ChartKind::Mewma: spec.kind = ChartKind::MewmaHard; break;
            case ChartKind::Mma: spec.kind = ChartKind::MmaHard; break;
            case ChartKind::Mglrt: spec.kind = ChartKind::MglrtHard; break;
            default: break;
        }
    }
    return spec;
}

OvershootConvention build_convention(const ChartOptions& o, bool multivariate) {
    OvershootConvention conv = multivariate ? OvershootConvention::defaults_mv()
                                            : OvershootConvention::defaults_1d();
    if (o.nu_mode == "accurate")
        conv.mode = OvershootConvention::Mode::Accurate;
    else if (o.nu_mode != "exp")
        throw CLI::ValidationError("--nu-mode", "expected exp|accurate");
    if (o.ewma_arg == "plain")
        conv.ewma_arg = OvershootConvention::EwmaArg::PlainSqrt2Beta;
    else if (o.ewma_arg == "matched")
        conv.ewma_arg = OvershootConvention::EwmaArg::VarianceMatched;
    else if (o.ewma_arg != "default")
        throw CLI::ValidationError("--ewma-arg", "expected default|plain|matched");
    return conv;
}

void add_chart_options(CLI::App* cmd, ChartOptions& o) {
    cmd->add_option("--chart", o.chart, "chart kind (ewma|ma|moving-ewma|cusum|wgl|mewma|mma|"
                                        "mcusum|mglrt|mc1|mewma-soft|mewma-hard|mma-hard|"
                                        "mglrt-hard)")
        ->required();
    cmd->add_option("--N,--dim", o.dimension, "stream dimension N");
    cmd->add_option("--beta", o.beta, "EWMA weight");
    cmd->add_option("--w", o.window, "window length w");
    cmd->add_option("--w0", o.window_lo, "lower window bound");
    cmd->add_option("--w1", o.window_hi, "upper window bound");
    cmd->add_option("--delta", o.ref_strength, "reference signal strength (delta, |delta|, k1)");
    cmd->add_option("--threshold,--b,--d,--h1", o.threshold, "design threshold");
    cmd->add_option("--p", o.soft_p, "soft-threshold changed-proportion reference");
    cmd->add_option("--hard-cut,--cut", o.hard_cut, "per-channel squared-statistic cut")
        ->each([&o](const std::string&) { o.hard_cut_given = true; });
    cmd->add_option("--nu-mode", o.nu_mode, "overshoot correction: exp|accurate");
    cmd->add_option("--ewma-arg", o.ewma_arg, "EWMA overshoot argument: default|plain|matched");
    cmd->add_flag("--boundary-corrected", o.boundary_corrected,
                  "apply the continuous-time boundary correction");
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TRANSIENT_SCAN_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring non-numeric TRANSIENT_SCAN_SEED\n";
        }
    }
    return 0x5EEDULL;
}

struct SimOptions {
    std::int64_t reps = 20000;
    std::uint64_t seed = default_seed();
    int workers = 0;
    int burn_in = -1;
};

void add_sim_options(CLI::App* cmd, SimOptions& o) {
    cmd->add_option("--reps", o.reps, "Monte Carlo replications");
    cmd->add_option("--seed", o.seed, "root seed (TRANSIENT_SCAN_SEED as fallback)");
    cmd->add_option("--workers", o.workers, "worker threads (0 = hardware)");
    cmd->add_option("--burn-in", o.burn_in, "warm-up steps (-1 = automatic)");
}

SimConfig to_config(const SimOptions& o) {
    SimConfig cfg;
    cfg.reps = o.reps;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.burn_in = o.burn_in;
    return cfg;
}

json spec_json(const ChartSpec& s) {
    return {{"kind", to_string(s.kind)},   {"N", s.dimension},
            {"beta", s.beta},              {"w", s.window},
            {"w0", s.window_lo},           {"w1", s.window_hi},
            {"delta", s.ref_strength},     {"threshold", s.threshold},
            {"p", s.soft_p},               {"cut", s.hard_cut}};
}

json sim_json(const SimOptions& o) {
    return {{"reps", o.reps}, {"seed", o.seed}, {"workers", o.workers}, {"burn_in", o.burn_in}};
}

json conv_json(const ChartOptions& o) {
    return {{"nu_mode", o.nu_mode},
            {"ewma_arg", o.ewma_arg},
            {"boundary_corrected", o.boundary_corrected}};
}

void emit(const json& record, bool as_json) {
    if (as_json) {
        std::cout << record.dump(2) << "\n";
    } else {
        std::cout << "# config " << record.at("config").dump() << "\n";
    }
}

std::vector<double> parse_mu(const std::string& text, int n, bool one_channel) {
    std::vector<double> mu;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) mu.push_back(std::stod(cell));
    if (static_cast<int>(mu.size()) == n) return mu;
    if (mu.size() == 1) {
        std::vector<double> full(n, one_channel ? 0.0 : mu[0]);
        full[0] = mu[0];
        return full;
    }
    throw CLI::ValidationError("--mu", "expected 1 or N comma-separated values");
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
}

// ---------------------------------------------------------------- fdp/pod
int run_fdp_pod(bool is_pod, const ChartOptions& chart_opts, const SimOptions& sim_opts,
                const std::string& mu_text, bool one_channel, bool simulate, int L,
                bool as_json) {
    ChartSpec spec = build_spec(chart_opts);
    if (chart_opts.boundary_corrected) spec = with_boundary_correction(spec);
    const OvershootConvention conv = build_convention(chart_opts, spec.is_multivariate());
    json config = {{"command", is_pod ? "pod" : "fdp"},
                   {"chart", spec_json(spec)},
                   {"L", L},
                   {"mode", simulate ? "simulate" : "approx"},
                   {"convention", conv_json(chart_opts)}};
    json results;

    std::vector<double> mu(spec.dimension, 0.0);
    if (is_pod) {
        mu = parse_mu(mu_text, spec.dimension, one_channel);
        config["mu"] = mu;
    }

    if (simulate) {
        config["sim"] = sim_json(sim_opts);
        ScenarioSpec scenario;
        scenario.length = L;
        scenario.mean = mu;
        const PodResult r = estimate_pod(spec, scenario, nullptr, to_config(sim_opts));
        results["value"] = r.pod.value;
        results["std_error"] = r.pod.std_error;
        results["detected"] = r.detected;
        if (is_pod) {
            results["conditional_delay"] = r.conditional_delay.value;
            results["conditional_delay_se"] = r.conditional_delay.std_error;
        }
        emit({{"command", config["command"]}, {"config", config}, {"results", results}},
             as_json);
        if (!as_json) {
            std::printf("%s = %.4f  (se %.5f, reps %lld)\n", is_pod ? "pod" : "fdp",
                        r.pod.value, r.pod.std_error, static_cast<long long>(r.pod.reps));
            if (is_pod && r.detected > 0)
                std::printf("conditional delay = %.3f  (se %.4f, detected %lld)\n",
                            r.conditional_delay.value, r.conditional_delay.std_error,
                            static_cast<long long>(r.detected));
        }
    } else {
        double strength = 0.0;
        for (double v : mu) strength += v * v;
        strength = std::sqrt(strength);
        const ApproxResult r = is_pod ? pod_approx(spec, strength, L, conv)
                                      : fdp_approx(spec, L, conv);
        const char* regime = r.regime == ApproxResult::Regime::LocalIntegral ? "local"
                             : r.regime == ApproxResult::Regime::NormalLaw   ? "normal"
                                                                             : "closed-form";
        results["value"] = r.value;
        results["regime"] = regime;
        results["warnings"] = r.warnings;
        emit({{"command", config["command"]}, {"config", config}, {"results", results}},
             as_json);
        if (!as_json) {
            std::printf("%s = %.4f  (%.8g, %s)\n", is_pod ? "pod" : "fdp", r.value, r.value,
                        regime);
            print_warnings(r.warnings);
        }
    }
    return 0;
}

// --------------------------------------------------------------- calibrate
int run_calibrate(const ChartOptions& chart_opts, const SimOptions& sim_opts, double target,
                  int L, bool force_mc, bool as_json) {
    const ChartSpec proto = build_spec(chart_opts);
    const OvershootConvention conv = build_convention(chart_opts, proto.is_multivariate());
    const bool use_mc = force_mc || prefers_mc_calibration(proto.kind);
    json config = {{"command", "calibrate"}, {"chart", spec_json(proto)},
                   {"target_fdp", target},   {"L", L},
                   {"mode", use_mc ? "mc" : "analytic"},
                   {"convention", conv_json(chart_opts)}};
    json results;
    if (use_mc) {
        config["sim"] = sim_json(sim_opts);
        const CalibrationResult r = calibrate_mc(proto, target, L, to_config(sim_opts));
        results = {{"threshold", r.threshold},
                   {"achieved_fdp", r.achieved.value},
                   {"achieved_se", r.achieved.std_error},
                   {"iterations", r.iterations},
                   {"converged", r.converged}};
        emit({{"command", "calibrate"}, {"config", config}, {"results", results}}, as_json);
        if (!as_json) {
            std::printf("threshold = %.6g  (achieved fdp %.5f, se %.5f, %d iterations)\n",
                        r.threshold, r.achieved.value, r.achieved.std_error, r.iterations);
            print_warnings(r.warnings);
        }
    } else {
        const double threshold = solve_threshold(proto, target, L, conv);
        ChartSpec solved = proto;
        solved.threshold = threshold;
        results = {{"threshold", threshold}, {"fdp_at_threshold", fdp_approx(solved, L, conv).value}};
        emit({{"command", "calibrate"}, {"config", config}, {"results", results}}, as_json);
        if (!as_json)
            std::printf("threshold = %.10g  (formula fdp %.10g)\n", threshold,
                        results["fdp_at_threshold"].get<double>());
    }
    return 0;
}

// ------------------------------------------------------------------ table
int run_table(const std::string& id_text, const SimOptions& sim_opts, const std::string& out_path,
              bool as_json) {
    TableId id;
    if (id_text == "t1") id = TableId::T1;
    else if (id_text == "t2") id = TableId::T2;
    else if (id_text == "t3") id = TableId::T3;
    else if (id_text == "t4") id = TableId::T4;
    else if (id_text == "t5") id = TableId::T5;
    else throw CLI::ValidationError("--id", "expected t1..t5");

    json config = {{"command", "table"}, {"id", id_text}, {"sim", sim_json(sim_opts)}};
    const auto rows = reproduce_table(id, to_config(sim_opts));

    json jrows = json::array();
    for (const auto& r : rows) {
        json jr = {{"design", r.design}, {"L", r.L},
                   {"mu", r.mu},         {"one_channel", r.one_channel},
                   {"estimate", r.estimate.value}, {"se", r.estimate.std_error}};
        if (std::isfinite(r.reference)) jr["reference"] = r.reference;
        if (std::isfinite(r.ref_approx)) jr["reference_approx"] = r.ref_approx;
        if (std::isfinite(r.approx)) jr["approx"] = r.approx;
        jrows.push_back(std::move(jr));
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write " + out_path);
        out << "design,L,mu,one_channel,estimate,se,reference,reference_approx,approx\n";
        for (const auto& r : rows) {
            out << r.design << ',' << r.L << ',' << r.mu << ',' << (r.one_channel ? 1 : 0)
                << ',' << r.estimate.value << ',' << r.estimate.std_error << ',';
            if (std::isfinite(r.reference)) out << r.reference;
            out << ',';
            if (std::isfinite(r.ref_approx)) out << r.ref_approx;
            out << ',';
            if (std::isfinite(r.approx)) out << r.approx;
            out << '\n';
        }
    }

    emit({{"command", "table"}, {"config", config}, {"results", {{"rows", jrows}}}}, as_json);
    if (!as_json) {
        std::printf("%-26s %4s %6s %10s %10s %10s %10s\n", "design", "L", "mu", "estimate",
                    "se", "reference", "approx");
        for (const auto& r : rows) {
            std::printf("%-26s %4d %6.2f %10.4f %10.5f ", r.design.c_str(), r.L, r.mu,
                        r.estimate.value, r.estimate.std_error);
            if (std::isfinite(r.reference)) std::printf("%10.4f ", r.reference);
            else std::printf("%10s ", "-");
            if (std::isfinite(r.approx)) std::printf("%10.4f\n", r.approx);
            else std::printf("%10s\n", "-");
        }
    }
    return 0;
}

// ---------------------------------------------------------------- analyze
struct AnalyzeOptions {
    std::string input;
    std::string channel;
    std::string out_path;
    bool whiten = false;
    bool independent = false;
    bool per_channel = false;
    bool diagnostics = false;
};

int run_analyze(const ChartOptions& chart_opts, const AnalyzeOptions& a, bool as_json) {
    ChartSpec spec = build_spec(chart_opts);
    const Panel prices = load_panel(a.input);
    const StandardizedReturns returns = standardized_returns(prices);
    const Panel& panel = returns.panel;

    json config = {{"command", "analyze"},
                   {"chart", spec_json(spec)},
                   {"input", a.input},
                   {"channel", a.channel},
                   {"whiten", a.whiten}};
    json results;
    results["rows"] = panel.steps();
    results["channels"] = panel.width();
    print_warnings(panel.warnings);

    ScanResult scan;
    std::vector<std::string> alarm_dates;
    if (!a.channel.empty()) {
        int idx = -1;
        for (int j = 0; j < panel.width(); ++j)
            if (panel.channels[j] == a.channel) idx = j;
        if (idx < 0) throw ParseError("channel not found: " + a.channel);
        if (spec.is_multivariate() && spec.dimension != 1)
            throw SpecError("analyze --channel: use a one-dimensional chart kind");
        std::vector<double> series(panel.steps());
        for (int i = 0; i < panel.steps(); ++i) series[i] = panel.values(i, idx);
        if (a.diagnostics) {
            results["acf"] = autocorrelations(series, 10);
            std::vector<double> sq(series.size());
            for (std::size_t i = 0; i < series.size(); ++i) sq[i] = series[i] * series[i];
            results["acf_squared"] = autocorrelations(sq, 10);
        }
        scan = run_first_alarm(spec, series);
    } else {
        if (!spec.is_multivariate()) throw SpecError("analyze: pass --channel for 1-D kinds");
        spec.dimension = panel.width();
        Matrix obs = panel.values;
        if (a.whiten) {
            const CovarianceEstimate est = estimate_covariance(panel);
            results["eigenvalues"] = est.eigenvalues;
            results["largest_eigenvalue"] = est.eigenvalues.front();
            if (est.jittered) std::cout << "warning: covariance jittered by 1e-8 I\n";
            for (int i = 0; i < obs.rows(); ++i) {
                const auto w = est.model.whiten(panel.values.row(i));
                for (int j = 0; j < obs.cols(); ++j) obs(i, j) = w[j];
            }
        }
        scan = run_first_alarm_mv(spec, obs);
    }

    json alarms = json::array();
    for (std::size_t i = 0; i < scan.trace.size(); ++i) {
        if (scan.trace[i] > spec.alarm_level() &&
            static_cast<std::int64_t>(i + 1) >= spec.first_alarm_step()) {
            alarms.push_back(static_cast<std::int64_t>(i + 1));
            alarm_dates.push_back(panel.dates[i]);
        }
    }
    results["alarm_level"] = spec.alarm_level();
    results["first_alarm"] = scan.first_alarm ? json(*scan.first_alarm) : json(nullptr);
    results["alarm_steps"] = alarms;

    if (!a.out_path.empty()) {
        std::ofstream out(a.out_path);
        if (!out) throw ParseError("cannot write " + a.out_path);
        out << "date,t,statistic,alarm\n";
        for (std::size_t i = 0; i < scan.trace.size(); ++i) {
            const bool alarm = scan.trace[i] > spec.alarm_level() &&
                               static_cast<std::int64_t>(i + 1) >= spec.first_alarm_step();
            out << panel.dates[i] << ',' << (i + 1) << ',' << scan.trace[i] << ','
                << (alarm ? 1 : 0) << '\n';
        }
    }

    emit({{"command", "analyze"}, {"config", config}, {"results", results}}, as_json);
    if (!as_json) {
        std::printf("rows %d, channels %d, alarm level %.6g\n", panel.steps(), panel.width(),
                    spec.alarm_level());
        if (results.contains("largest_eigenvalue"))
            std::printf("largest eigenvalue %.4g\n",
                        results["largest_eigenvalue"].get<double>());
        if (scan.first_alarm)
            std::printf("first alarm at t=%lld (%s)\n",
                        static_cast<long long>(*scan.first_alarm),
                        alarm_dates.empty() ? "?" : alarm_dates.front().c_str());
        else
            std::printf("no alarm\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming transient mean-shift detection toolkit"};
    app.require_subcommand(1);

    ChartOptions chart_opts;
    SimOptions sim_opts;
    bool as_json = false;

    // fdp
    auto* fdp_cmd = app.add_subcommand("fdp", "false-detection probability of a design");
    int fdp_L = 20;
    bool fdp_sim = false, fdp_approx_flag = false;
    add_chart_options(fdp_cmd, chart_opts);
    add_sim_options(fdp_cmd, sim_opts);
    fdp_cmd->add_option("--L", fdp_L, "signal-length horizon")->required();
    fdp_cmd->add_flag("--simulate", fdp_sim, "Monte Carlo instead of the formula");
    fdp_cmd->add_flag("--approx", fdp_approx_flag, "closed-form approximation (default)");

    // pod
    auto* pod_cmd = app.add_subcommand("pod", "power of detection for a signal");
    int pod_L = 20;
    bool pod_sim = false, pod_approx_flag = false, pod_one_channel = false;
    std::string mu_text = "0";
    add_chart_options(pod_cmd, chart_opts);
    add_sim_options(pod_cmd, sim_opts);
    pod_cmd->add_option("--L", pod_L, "signal length")->required();
    pod_cmd->add_option("--mu", mu_text, "signal mean: one value or N comma-separated")
        ->required();
    pod_cmd->add_flag("--one-channel", pod_one_channel, "confine a scalar --mu to channel 1");
    pod_cmd->add_flag("--simulate", pod_sim, "Monte Carlo (also prints conditional delay)");
    pod_cmd->add_flag("--approx", pod_approx_flag, "closed-form approximation (default)");

    // calibrate
    auto* cal_cmd = app.add_subcommand("calibrate", "solve the threshold for a target FDP");
    double target_fdp = 0.01;
    int cal_L = 20;
    bool cal_mc = false;
    add_chart_options(cal_cmd, chart_opts);
    add_sim_options(cal_cmd, sim_opts);
    cal_cmd->add_option("--target-fdp", target_fdp, "target false-detection probability")
        ->required();
    cal_cmd->add_option("--L", cal_L, "signal-length horizon")->required();
    cal_cmd->add_flag("--mc", cal_mc, "force Monte Carlo calibration");

    // table
    auto* table_cmd = app.add_subcommand("table", "re-estimate a reference grid (t1..t5)");
    std::string table_id;
    std::string table_out;
    table_cmd->add_option("--id", table_id, "table id: t1..t5")->required();
    add_sim_options(table_cmd, sim_opts);
    table_cmd->add_option("--out", table_out, "write rows as CSV");

    // analyze + charts
    auto* analyze_cmd = app.add_subcommand("analyze", "run a chart over a CSV panel");
    AnalyzeOptions analyze_opts;
    add_chart_options(analyze_cmd, chart_opts);
    analyze_cmd->add_option("--input", analyze_opts.input, "price panel CSV")->required();
    analyze_cmd->add_option("--channel", analyze_opts.channel, "single channel (1-D charts)");
    analyze_cmd->add_flag("--whiten", analyze_opts.whiten, "whiten with the estimated correlation");
    analyze_cmd->add_flag("--independent", analyze_opts.independent,
                          "treat channels as independent (default)");
    analyze_cmd->add_flag("--diagnostics", analyze_opts.diagnostics,
                          "report return/squared-return autocorrelations");
    analyze_cmd->add_option("--out", analyze_opts.out_path, "write the statistic trace CSV");

    auto* charts_cmd = app.add_subcommand("charts", "emit a plot-ready statistic trace");
    AnalyzeOptions charts_opts;
    add_chart_options(charts_cmd, chart_opts);
    charts_cmd->add_option("--input", charts_opts.input, "price panel CSV")->required();
    charts_cmd->add_option("--channel", charts_opts.channel, "single channel (1-D charts)");
    charts_cmd->add_flag("--whiten", charts_opts.whiten, "whiten with the estimated correlation");
    charts_cmd->add_option("--emit", charts_opts.out_path, "output CSV path")->required();

    for (CLI::App* sub : app.get_subcommands({}))
        sub->add_flag("--json", as_json, "emit one JSON record instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors are exit code 1
    }

    try {
        if (fdp_cmd->parsed())
            return run_fdp_pod(false, chart_opts, sim_opts, "0", false, fdp_sim, fdp_L, as_json);
        if (pod_cmd->parsed())
            return run_fdp_pod(true, chart_opts, sim_opts, mu_text, pod_one_channel, pod_sim,
                               pod_L, as_json);
        if (cal_cmd->parsed())
            return run_calibrate(chart_opts, sim_opts, target_fdp, cal_L, cal_mc, as_json);
        if (table_cmd->parsed()) return run_table(table_id, sim_opts, table_out, as_json);
        if (analyze_cmd->parsed()) return run_analyze(chart_opts, analyze_opts, as_json);
        if (charts_cmd->parsed()) return run_analyze(chart_opts, charts_opts, as_json);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const SpecError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DimensionMismatch& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const MissingValue& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const DuplicateDate& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const NonPositivePrice& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateChannel& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
