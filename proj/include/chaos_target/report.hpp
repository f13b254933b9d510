#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaos_target/harness.hpp"

namespace chaos_target {

/// Shortest decimal form that parses back to the same double; "inf",
/// "-inf" and "nan" for non-finite values.
std::string format_real(double v);

/// CSV columns: n_steps,mu,epsilon,best,worst,mean,std,sr_percent,aven,n_runs,seed.
/// Missing AVEN and the statistics of failed cells are written as NA.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// CSV columns: n_steps,mu,epsilon,run_index,seed,best_fitness,success_generation.
/// Only rows that kept their runs contribute lines.
void write_runs_csv(std::ostream& out, std::span<const SweepRow> rows);

/// JSON document {"metadata": {...}, "rows": [...]}; per-run records are
/// included under each row when kept.
std::string sweep_to_json(std::span<const SweepRow> rows, int indent = 2);

/// Inverse of sweep_to_json. Throws std::invalid_argument on malformed input.
std::vector<SweepRow> sweep_from_json(std::string_view text);

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);

void write_uncontrolled_csv(std::ostream& out, std::span<const UncontrolledRow> rows);

}  // namespace chaos_target
