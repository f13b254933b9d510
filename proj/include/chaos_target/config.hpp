#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chaos_target/maps.hpp"
#include "chaos_target/problem.hpp"
#include "chaos_target/tlbo.hpp"

namespace chaos_target {

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(std::string_view name);

/// Malformed experiment file. line() is 0 for whole-file problems such as a
/// missing required key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, std::string field, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

/// Experiment description loaded from a flat `key = value` file:
///
///     # Henon, rows of the N sweep at mu = 0.01
///     map = henon
///     p = 1.4
///     q = 0.3
///     x0 = 0, 0
///     target = fixed-point
///     horizon = 6..10
///     mu = 0.01
///     epsilon = 0.02
///     population_size = 50
///     max_generations = 1000
///     n_runs = 100
///     seed = 2016
///     format = csv
///
/// Lists are comma separated; integer lists also accept inclusive `a..b`
/// ranges. `target = fixed-point` resolves to the Henon fixed point.
struct ExperimentConfig {
    ChaoticMapSpec map;
    State2 x0;
    State2 target;
    std::vector<std::size_t> horizons;
    std::vector<double> mu_values;
    std::vector<double> eps_values;
    std::size_t population_size = 50;
    std::size_t max_generations = 1000;
    std::size_t n_runs = 100;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::Csv;

    /// Problem for the first grid cell; sweeps overwrite horizon/mu/epsilon.
    TargetingProblem base_problem() const;
    TlboConfig tlbo_config() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// "0.6, -0.3" -> State2. Throws std::invalid_argument.
State2 parse_state(std::string_view text);
/// "6..8, 10" -> {6, 7, 8, 10}. Throws std::invalid_argument.
std::vector<std::size_t> parse_count_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);
/// Strict full-string parse. Throws std::invalid_argument.
double parse_real(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

}  // namespace chaos_target
