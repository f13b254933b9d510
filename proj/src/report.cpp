#include "chaos_target/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace chaos_target {

using nlohmann::json;

namespace {

json real_to_json(double v) {
    if (std::isfinite(v)) return v;
    return format_real(v);
}

double real_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw std::invalid_argument("expected a number, got " + j.dump());
}

json run_to_json(std::size_t index, std::uint64_t seed, const RunRecord& r) {
    json pos = json::array();
    for (double u : r.best_position) pos.push_back(real_to_json(u));
    return {
        {"run_index", index},
        {"seed", seed},
        {"best_fitness", real_to_json(r.best_fitness)},
        {"success_generation",
         r.success_generation ? json(*r.success_generation) : json(nullptr)},
        {"evaluations_used", r.evaluations_used},
        {"best_position", std::move(pos)},
    };
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("to_chars failed");
    return std::string(buf, ptr);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "n_steps,mu,epsilon,best,worst,mean,std,sr_percent,aven,n_runs,seed\n";
    for (const SweepRow& r : rows) {
        out << r.n_steps << ',' << format_real(r.mu) << ',' << format_real(r.epsilon) << ',';
        if (r.error) {
            out << "NA,NA,NA,NA,NA,NA,NA," << r.seed << '\n';
            continue;
        }
        out << format_real(r.stats.best) << ',' << format_real(r.stats.worst) << ','
            << format_real(r.stats.mean) << ',' << format_real(r.stats.std) << ','
            << format_real(r.metrics.sr_percent) << ','
            << (r.metrics.aven ? format_real(*r.metrics.aven) : "NA") << ',' << r.stats.n_runs
            << ',' << r.seed << '\n';
    }
}

void write_runs_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "n_steps,mu,epsilon,run_index,seed,best_fitness,success_generation\n";
    for (const SweepRow& r : rows) {
        for (std::size_t i = 0; i < r.runs.size(); ++i) {
            const RunRecord& run = r.runs[i];
            out << r.n_steps << ',' << format_real(r.mu) << ',' << format_real(r.epsilon) << ','
                << i << ',' << r.run_seeds.at(i) << ',' << format_real(run.best_fitness) << ',';
            if (run.success_generation) {
                out << *run.success_generation;
            } else {
                out << "NA";
            }
            out << '\n';
        }
    }
}

std::string sweep_to_json(std::span<const SweepRow> rows, int indent) {
    json doc;
    doc["metadata"] = {
        {"std_convention", "population"},
        {"sr_denominator", "n_runs"},
        {"generation_index_base", 1},
    };
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json row = {
            {"n_steps", r.n_steps},
            {"mu", r.mu},
            {"epsilon", r.epsilon},
            {"seed", r.seed},
        };
        if (r.error) {
            row["error"] = *r.error;
        } else {
            row["best"] = real_to_json(r.stats.best);
            row["worst"] = real_to_json(r.stats.worst);
            row["mean"] = real_to_json(r.stats.mean);
            row["std"] = real_to_json(r.stats.std);
            row["n_runs"] = r.stats.n_runs;
            row["n_non_finite"] = r.stats.n_non_finite;
            row["sr_percent"] = r.metrics.sr_percent;
            row["aven"] = r.metrics.aven ? json(*r.metrics.aven) : json(nullptr);
            row["n_success"] = r.metrics.n_success;
        }
        if (!r.runs.empty()) {
            json runs = json::array();
            for (std::size_t i = 0; i < r.runs.size(); ++i) {
                runs.push_back(run_to_json(i, r.run_seeds.at(i), r.runs[i]));
            }
            row["runs"] = std::move(runs);
        }
        arr.push_back(std::move(row));
    }
    doc["rows"] = std::move(arr);
    return doc.dump(indent) + "\n";
}

std::vector<SweepRow> sweep_from_json(std::string_view text) {
    std::vector<SweepRow> rows;
    try {
        const json doc = json::parse(text);
        for (const json& j : doc.at("rows")) {
            SweepRow r;
            r.n_steps = j.at("n_steps").get<std::size_t>();
            r.mu = j.at("mu").get<double>();
            r.epsilon = j.at("epsilon").get<double>();
            r.seed = j.at("seed").get<std::uint64_t>();
            if (j.contains("error")) {
                r.error = j.at("error").get<std::string>();
            } else {
                r.stats.best = real_from_json(j.at("best"));
                r.stats.worst = real_from_json(j.at("worst"));
                r.stats.mean = real_from_json(j.at("mean"));
                r.stats.std = real_from_json(j.at("std"));
                r.stats.n_runs = j.at("n_runs").get<std::size_t>();
                r.stats.n_non_finite = j.at("n_non_finite").get<std::size_t>();
                r.metrics.sr_percent = j.at("sr_percent").get<double>();
                if (!j.at("aven").is_null()) r.metrics.aven = j.at("aven").get<double>();
                r.metrics.n_success = j.at("n_success").get<std::size_t>();
            }
            if (j.contains("runs")) {
                for (const json& jr : j.at("runs")) {
                    RunRecord run;
                    run.best_fitness = real_from_json(jr.at("best_fitness"));
                    if (!jr.at("success_generation").is_null()) {
                        run.success_generation = jr.at("success_generation").get<std::size_t>();
                    }
                    run.evaluations_used = jr.at("evaluations_used").get<std::uint64_t>();
                    for (const json& u : jr.at("best_position")) {
                        run.best_position.push_back(real_from_json(u));
                    }
                    r.run_seeds.push_back(jr.at("seed").get<std::uint64_t>());
                    r.runs.push_back(std::move(run));
                }
            }
            rows.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed results JSON: ") + e.what());
    }
    return rows;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
    out << "generation,mean_best_fitness\n";
    for (const CurvePoint& c : curve) {
        out << c.generation << ',' << format_real(c.mean_best_fitness) << '\n';
    }
}

void write_uncontrolled_csv(std::ostream& out, std::span<const UncontrolledRow> rows) {
    out << "epsilon,needed_iterations\n";
    for (const UncontrolledRow& r : rows) {
        out << format_real(r.epsilon) << ',';
        if (r.needed_iterations) {
            out << *r.needed_iterations;
        } else {
            out << "NA";
        }
        out << '\n';
    }
}

}  // namespace chaos_target
