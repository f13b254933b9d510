#include "chaos_target/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "chaos_target/rng.hpp"

namespace chaos_target {

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

BatchStats summarize(std::span<const double> finals) {
    if (finals.empty()) throw std::invalid_argument("no runs to summarize");
    BatchStats s;
    s.n_runs = finals.size();

    std::vector<double> ok;
    ok.reserve(finals.size());
    for (double f : finals) {
        if (std::isfinite(f)) {
            ok.push_back(f);
        } else {
            ++s.n_non_finite;
        }
    }
    if (ok.empty()) {
        const double inf = std::numeric_limits<double>::infinity();
        s.best = s.worst = s.mean = inf;
        return s;
    }

    const auto [lo, hi] = std::minmax_element(ok.begin(), ok.end());
    s.best = *lo;
    s.worst = *hi;
    const double n = static_cast<double>(ok.size());
    double sum = 0.0;
    for (double f : ok) sum += f;
    // Rounding in the sum can push the mean of near-equal values outside
    // [best, worst].
    s.mean = std::clamp(sum / n, s.best, s.worst);
    double ss = 0.0;
    for (double f : ok) ss += (f - s.mean) * (f - s.mean);
    s.std = std::sqrt(ss / n);
    return s;
}

SuccessMetrics success_metrics(std::span<const RunRecord> records) {
    if (records.empty()) throw std::invalid_argument("no runs to score");
    SuccessMetrics m;
    double total = 0.0;
    for (const RunRecord& r : records) {
        if (r.success_generation) {
            ++m.n_success;
            total += static_cast<double>(*r.success_generation);
        }
    }
    m.sr_percent = 100.0 * static_cast<double>(m.n_success) / static_cast<double>(records.size());
    if (m.n_success > 0) m.aven = total / static_cast<double>(m.n_success);
    return m;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t count = std::min<std::size_t>(jobs, n);
        for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

BatchResult run_batch(const TargetingProblem& p, const TlboConfig& cfg, std::size_t n_runs,
                      std::uint64_t batch_seed, const ExecOptions& opts) {
    if (n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
    p.validate();
    cfg.validate();

    BatchResult out;
    out.batch_seed = batch_seed;
    out.runs.resize(n_runs);
    out.run_seeds.resize(n_runs);
    for (std::size_t i = 0; i < n_runs; ++i) out.run_seeds[i] = run_seed(batch_seed, i);

    parallel_for(n_runs, opts.jobs, [&](std::size_t i) {
        TlboConfig run_cfg = cfg;
        run_cfg.seed = out.run_seeds[i];
        out.runs[i] = optimize(p, run_cfg);
    });

    std::vector<double> finals;
    finals.reserve(n_runs);
    for (const RunRecord& r : out.runs) finals.push_back(r.best_fitness);
    out.stats = summarize(finals);
    out.metrics = success_metrics(out.runs);
    return out;
}

std::vector<SweepRow> sweep(const TargetingProblem& base, const TlboConfig& cfg,
                            std::vector<std::size_t> n_values, std::vector<double> mu_values,
                            std::vector<double> eps_values, std::size_t n_runs,
                            std::uint64_t seed, const ExecOptions& opts) {
    if (n_values.empty() || mu_values.empty() || eps_values.empty()) {
        throw std::invalid_argument("sweep needs at least one value per axis");
    }
    n_values = sorted_unique(std::move(n_values));
    mu_values = sorted_unique(std::move(mu_values));
    eps_values = sorted_unique(std::move(eps_values));

    std::vector<SweepRow> rows;
    rows.reserve(n_values.size() * mu_values.size() * eps_values.size());
    for (std::size_t n : n_values) {
        for (double mu : mu_values) {
            for (double eps : eps_values) {
                SweepRow row;
                row.n_steps = n;
                row.mu = mu;
                row.epsilon = eps;
                row.seed = cell_seed(seed, n, mu, eps);
                TargetingProblem p = base;
                p.horizon = n;
                p.mu = mu;
                p.epsilon = eps;
                try {
                    BatchResult r = run_batch(p, cfg, n_runs, row.seed, opts);
                    row.stats = r.stats;
                    row.metrics = r.metrics;
                    if (opts.keep_runs) {
                        row.runs = std::move(r.runs);
                        row.run_seeds = std::move(r.run_seeds);
                    }
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<CurvePoint> mean_curve(std::span<const RunRecord> records) {
    if (records.empty()) throw std::invalid_argument("no runs to average");
    const std::size_t len = records.front().best_fitness_per_generation.size();
    std::vector<double> sum(len, 0.0);
    for (const RunRecord& r : records) {
        if (r.best_fitness_per_generation.size() != len) {
            throw std::invalid_argument("runs have different generation counts");
        }
        for (std::size_t g = 0; g < len; ++g) sum[g] += r.best_fitness_per_generation[g];
    }
    const double n = static_cast<double>(records.size());
    std::vector<CurvePoint> curve(len);
    for (std::size_t g = 0; g < len; ++g) curve[g] = {g + 1, sum[g] / n};
    return curve;
}

std::vector<UncontrolledRow> uncontrolled_baseline(const ChaoticMapSpec& map, const State2& x0,
                                                   const State2& target,
                                                   std::span<const double> eps_values,
                                                   std::uint64_t max_iter) {
    std::vector<UncontrolledRow> rows;
    rows.reserve(eps_values.size());
    for (double eps : eps_values) {
        UncontrolledRow row{eps, std::nullopt};
        try {
            row.needed_iterations = iterate_uncontrolled(map, x0, target, eps, max_iter);
        } catch (const NotReachedError&) {
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace chaos_target
