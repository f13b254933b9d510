#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chaos_target/maps.hpp"
#include "chaos_target/problem.hpp"
#include "chaos_target/tlbo.hpp"

namespace chaos_target {

/// Aggregate of the final best fitness over a batch of runs. Runs that ended
/// at +infinity (every evaluation overflowed) are counted in n_runs and
/// n_non_finite but excluded from best/worst/mean/std.
struct BatchStats {
    double best = 0.0;
    double worst = 0.0;
    double mean = 0.0;
    /// Population standard deviation (divides by the sample count).
    double std = 0.0;
    std::size_t n_runs = 0;
    std::size_t n_non_finite = 0;

    friend bool operator==(const BatchStats&, const BatchStats&) = default;
};

struct SuccessMetrics {
    double sr_percent = 0.0;
    /// Mean first-success generation over successful runs; empty if none.
    std::optional<double> aven;
    std::size_t n_success = 0;

    friend bool operator==(const SuccessMetrics&, const SuccessMetrics&) = default;
};

struct BatchResult {
    std::uint64_t batch_seed = 0;
    BatchStats stats;
    SuccessMetrics metrics;
    std::vector<RunRecord> runs;
    std::vector<std::uint64_t> run_seeds;
};

struct SweepRow {
    std::size_t n_steps = 0;
    double mu = 0.0;
    double epsilon = 0.0;
    /// Batch seed derived for this cell.
    std::uint64_t seed = 0;
    BatchStats stats;
    SuccessMetrics metrics;
    /// Set when the cell could not be run; stats/metrics are then empty.
    std::optional<std::string> error;
    /// Per-run records, kept only when requested.
    std::vector<RunRecord> runs;
    std::vector<std::uint64_t> run_seeds;
};

struct CurvePoint {
    std::size_t generation = 0;
    double mean_best_fitness = 0.0;
};

struct UncontrolledRow {
    double epsilon = 0.0;
    /// Empty when the neighbourhood was not reached within the budget.
    std::optional<std::uint64_t> needed_iterations;
};

struct ExecOptions {
    /// Worker threads; 0 or 1 runs sequentially.
    unsigned jobs = 1;
    /// Keep per-run records in sweep rows.
    bool keep_runs = false;
};

/// Statistics of final fitness values. `finals` must be non-empty.
BatchStats summarize(std::span<const double> finals);

/// SR and AVEN with SR's denominator equal to records.size().
SuccessMetrics success_metrics(std::span<const RunRecord> records);

/// Runs fn(0..n-1) on up to `jobs` threads. Rethrows the first (lowest
/// index) exception after all workers finish.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// n_runs independent optimize() calls; run i uses run_seed(batch_seed, i)
/// and cfg.seed is ignored.
BatchResult run_batch(const TargetingProblem& p, const TlboConfig& cfg, std::size_t n_runs,
                      std::uint64_t batch_seed, const ExecOptions& opts = {});

/// One batch per (N, mu, epsilon) cell, rows ordered by N, then mu, then
/// epsilon. Duplicate values are collapsed.
std::vector<SweepRow> sweep(const TargetingProblem& base, const TlboConfig& cfg,
                            std::vector<std::size_t> n_values, std::vector<double> mu_values,
                            std::vector<double> eps_values, std::size_t n_runs,
                            std::uint64_t seed, const ExecOptions& opts = {});

/// Per-generation mean of the runs' best-fitness curves. Throws
/// std::invalid_argument on an empty input or mismatched lengths.
std::vector<CurvePoint> mean_curve(std::span<const RunRecord> records);

std::vector<UncontrolledRow> uncontrolled_baseline(const ChaoticMapSpec& map, const State2& x0,
                                                   const State2& target,
                                                   std::span<const double> eps_values,
                                                   std::uint64_t max_iter);

}  // namespace chaos_target
