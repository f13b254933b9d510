#include "chaos_target/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "chaos_target/config.hpp"
#include "chaos_target/harness.hpp"
#include "chaos_target/maps.hpp"
#include "chaos_target/report.hpp"

namespace chaos_target {

namespace {

namespace fs = std::filesystem;

/// Usage problems detected after argument parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentFlags {
    std::string config_path;
    std::string out_path;
    std::string runs_out_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    // sweep-only grid overrides
    std::string n_override;
    std::string mu_override;
    std::string eps_override;
};

struct UncontrolledFlags {
    std::string map = "henon";
    std::optional<double> first_param;
    std::optional<double> second_param;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::string x0 = "0,0";
    std::string target = "fixed-point";
    std::vector<double> eps;
    std::uint64_t max_iter = 10'000'000;
    std::string out_path;
};

/// Writes to a file when a path is given, else to `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open output file " + path);
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

ExperimentConfig load_experiment(const ExperimentFlags& f) {
    ExperimentConfig cfg = load_config(f.config_path);
    if (const char* env = std::getenv("CHAOS_TARGET_SEED"); env && *env) {
        try {
            cfg.seed = parse_u64(env);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("CHAOS_TARGET_SEED: ") + e.what());
        }
    }
    if (f.seed) cfg.seed = *f.seed;
    if (!f.format.empty()) cfg.format = parse_output_format(f.format);
    try {
        if (!f.n_override.empty()) cfg.horizons = parse_count_list(f.n_override);
        if (!f.mu_override.empty()) cfg.mu_values = parse_real_list(f.mu_override);
        if (!f.eps_override.empty()) cfg.eps_values = parse_real_list(f.eps_override);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("grid override: ") + e.what());
    }
    return cfg;
}

std::vector<SweepRow> run_grid(const ExperimentConfig& cfg, unsigned jobs, bool keep_runs) {
    ExecOptions opts;
    opts.jobs = std::max(1u, jobs);
    opts.keep_runs = keep_runs;
    return sweep(cfg.base_problem(), cfg.tlbo_config(), cfg.horizons, cfg.mu_values,
                 cfg.eps_values, cfg.n_runs, cfg.seed, opts);
}

int cmd_fixed_point(double p, double q, std::ostream& out) {
    const State2 fp = henon_fixed_point(p, q);
    const double residual = distance(henon_step(fp, p, q), fp);
    out << format_real(fp.x1) << ' ' << format_real(fp.x2) << '\n';
    out << "residual " << format_real(residual) << '\n';
    return kExitOk;
}

int cmd_uncontrolled(const UncontrolledFlags& f, std::ostream& out) {
    ChaoticMapSpec map;
    try {
        map.kind = parse_map_kind(f.map);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const bool henon = map.kind == MapKind::Henon;
    if (henon && (f.alpha || f.beta)) throw UsageError("--alpha/--beta apply to the ushio map");
    if (!henon && (f.first_param || f.second_param)) throw UsageError("--p/--q apply to the henon map");
    map = henon ? ChaoticMapSpec::henon(f.first_param.value_or(1.4), f.second_param.value_or(0.3))
                : ChaoticMapSpec::ushio(f.alpha.value_or(1.9), f.beta.value_or(0.5));

    State2 x0;
    State2 target;
    try {
        x0 = parse_state(f.x0);
        if (f.target == "fixed-point") {
            if (!henon) throw UsageError("fixed-point target is only defined for henon");
            target = henon_fixed_point(map.a, map.b);
        } else {
            target = parse_state(f.target);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (f.eps.empty()) throw UsageError("at least one --eps is required");
    for (double e : f.eps) {
        if (!(e > 0.0)) throw UsageError("--eps values must be > 0");
    }
    if (f.max_iter < 1) throw UsageError("--max-iter must be >= 1");

    const auto rows = uncontrolled_baseline(map, x0, target, f.eps, f.max_iter);
    Sink sink(f.out_path, out);
    write_uncontrolled_csv(sink.stream(), rows);
    return kExitOk;
}

int cmd_batch(const ExperimentFlags& f, std::ostream& out) {
    const ExperimentConfig cfg = load_experiment(f);
    const bool keep_runs = !f.runs_out_path.empty();
    const auto rows = run_grid(cfg, f.jobs, keep_runs);

    {
        Sink sink(f.out_path, out);
        if (cfg.format == OutputFormat::Json) {
            // Per-run records go to --runs-out, not into the summary.
            std::vector<SweepRow> summary = rows;
            for (SweepRow& r : summary) {
                r.runs.clear();
                r.run_seeds.clear();
            }
            sink.stream() << sweep_to_json(summary);
        } else {
            write_sweep_csv(sink.stream(), rows);
        }
    }
    if (keep_runs) {
        Sink runs(f.runs_out_path, out);
        if (cfg.format == OutputFormat::Json) {
            runs.stream() << sweep_to_json(rows);
        } else {
            write_runs_csv(runs.stream(), rows);
        }
    }
    for (const SweepRow& r : rows) {
        if (r.error) return kExitNumeric;
    }
    return kExitOk;
}

std::string curve_file_name(const SweepRow& r, bool with_eps) {
    std::string name = "curve_N" + std::to_string(r.n_steps) + "_mu" + format_real(r.mu);
    if (with_eps) name += "_eps" + format_real(r.epsilon);
    return name + ".csv";
}

int cmd_curves(const ExperimentFlags& f, std::ostream& out) {
    if (f.out_path.empty()) throw UsageError("curves needs --out DIR");
    const ExperimentConfig cfg = load_experiment(f);
    const auto rows = run_grid(cfg, f.jobs, true);

    const fs::path dir(f.out_path);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create output directory " + dir.string());

    std::vector<double> eps = cfg.eps_values;
    std::sort(eps.begin(), eps.end());
    const bool with_eps = std::unique(eps.begin(), eps.end()) - eps.begin() > 1;
    int code = kExitOk;
    for (const SweepRow& r : rows) {
        if (r.error) {
            code = kExitNumeric;
            continue;
        }
        const fs::path path = dir / curve_file_name(r, with_eps);
        std::ofstream file(path, std::ios::binary);
        if (!file) throw UsageError("cannot write " + path.string());
        write_curve_csv(file, mean_curve(r.runs));
        out << path.string() << '\n';
    }
    return code;
}

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f, bool out_is_dir) {
    cmd->add_option("--config", f.config_path, "Experiment config file")->required();
    cmd->add_option("--out", f.out_path,
                    out_is_dir ? "Output directory for curve files" : "Output file (default stdout)");
    cmd->add_option("--format", f.format, "Output format, overrides the config")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", f.seed, "Seed, overrides config and CHAOS_TARGET_SEED");
    cmd->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Directs chaotic orbits to a target with teaching-learning-based optimization",
                 "chaos-target"};
    app.require_subcommand(1);

    double fp_p = 1.4;
    double fp_q = 0.3;
    auto* fixed = app.add_subcommand("fixed-point", "Print the positive Henon fixed point");
    fixed->add_option("--p", fp_p, "Henon p");
    fixed->add_option("--q", fp_q, "Henon q");

    UncontrolledFlags uf;
    auto* unc = app.add_subcommand("uncontrolled", "Iterations needed without control");
    unc->add_option("--map", uf.map, "henon|ushio")->check(CLI::IsMember({"henon", "ushio"}));
    unc->add_option("--p", uf.first_param, "Henon p");
    unc->add_option("--q", uf.second_param, "Henon q");
    unc->add_option("--alpha", uf.alpha, "Ushio alpha");
    unc->add_option("--beta", uf.beta, "Ushio beta");
    unc->add_option("--x0", uf.x0, "Initial state 'x1,x2'");
    unc->add_option("--target", uf.target, "'x1,x2' or fixed-point");
    unc->add_option("--eps", uf.eps, "Neighbourhood radius (repeatable)")->take_all();
    unc->add_option("--max-iter", uf.max_iter, "Iteration budget");
    unc->add_option("--out", uf.out_path, "Output file (default stdout)");

    ExperimentFlags batch_flags;
    auto* batch = app.add_subcommand("batch", "Statistics of repeated runs for each grid cell");
    add_experiment_flags(batch, batch_flags, false);
    batch->add_option("--runs-out", batch_flags.runs_out_path, "Per-run dump file");

    ExperimentFlags sweep_flags;
    auto* sweep_cmd = app.add_subcommand("sweep", "batch with the grid overridden from the command line");
    add_experiment_flags(sweep_cmd, sweep_flags, false);
    sweep_cmd->add_option("--runs-out", sweep_flags.runs_out_path, "Per-run dump file");
    sweep_cmd->add_option("--n", sweep_flags.n_override, "Horizons, e.g. '7..10'");
    sweep_cmd->add_option("--mu", sweep_flags.mu_override, "Perturbation bounds, e.g. '0.01,0.02'");
    sweep_cmd->add_option("--eps", sweep_flags.eps_override, "Success thresholds");

    ExperimentFlags curve_flags;
    auto* curves = app.add_subcommand("curves", "Mean best-fitness curve per (N, mu) cell");
    add_experiment_flags(curves, curve_flags, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*fixed) return cmd_fixed_point(fp_p, fp_q, out);
        if (*unc) return cmd_uncontrolled(uf, out);
        if (*batch) return cmd_batch(batch_flags, out);
        if (*sweep_cmd) return cmd_batch(sweep_flags, out);
        if (*curves) return cmd_curves(curve_flags, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NoFixedPointError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const OverflowError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}

}  // namespace chaos_target
