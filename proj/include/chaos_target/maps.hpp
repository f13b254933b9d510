#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chaos_target {

/// A point of a two-dimensional discrete system.
struct State2 {
    double x1 = 0.0;
    double x2 = 0.0;

    friend bool operator==(const State2&, const State2&) = default;
};

/// Euclidean distance between two states.
double distance(const State2& a, const State2& b);

/// The trajectory left the finite reals (the state escaped the attractor).
class OverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoFixedPointError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uncontrolled iteration exhausted its budget before entering the target
/// neighbourhood.
class NotReachedError : public std::runtime_error {
public:
    explicit NotReachedError(std::uint64_t max_iter);
    std::uint64_t max_iter() const noexcept { return max_iter_; }

private:
    std::uint64_t max_iter_;
};

enum class MapKind { Henon, Ushio };

std::string_view to_string(MapKind kind);
/// Parses "henon" or "ushio" (case-sensitive). Throws std::invalid_argument.
MapKind parse_map_kind(std::string_view name);

/// A named map with its two parameters: (p, q) for Henon, (alpha, beta) for
/// Ushio.
struct ChaoticMapSpec {
    MapKind kind = MapKind::Henon;
    double a = 1.4;
    double b = 0.3;

    static ChaoticMapSpec henon(double p = 1.4, double q = 0.3);
    static ChaoticMapSpec ushio(double alpha = 1.9, double beta = 0.5);

    /// Validates the parameters are finite; throws std::invalid_argument.
    void validate() const;

    friend bool operator==(const ChaoticMapSpec&, const ChaoticMapSpec&) = default;
};

/// Henon step: (-p*x1^2 + x2 + 1, q*x1).
///
/// The first component is evaluated as ((-p) * (x1*x1) + x2) + 1 in binary64
/// without contraction. Long uncontrolled trajectories are chaotic, so
/// any other operand grouping yields different hitting times.
State2 henon_step(const State2& s, double p, double q);

/// Ushio step: (alpha*x1 - x1^3 + x2, beta*x1), evaluated as
/// ((alpha*x1) - (x1*x1)*x1) + x2.
State2 ushio_step(const State2& s, double alpha, double beta);

/// Dispatches on the map kind. Throws OverflowError on non-finite output.
State2 step(const ChaoticMapSpec& map, const State2& s);

/// Unchecked step; non-finite results pass through.
inline State2 raw_step(const ChaoticMapSpec& map, const State2& s) noexcept {
    if (map.kind == MapKind::Henon) {
        return {(-map.a) * (s.x1 * s.x1) + s.x2 + 1.0, map.b * s.x1};
    }
    return {map.a * s.x1 - (s.x1 * s.x1) * s.x1 + s.x2, map.b * s.x1};
}

/// Positive-branch fixed point of the Henon map, the root of
/// p*x^2 + (1-q)*x - 1 = 0 with x > 0 for p > 0.
State2 henon_fixed_point(double p, double q);

/// Smallest k >= 1 with ||f^k(x0) - target|| < epsilon.
std::uint64_t iterate_uncontrolled(const ChaoticMapSpec& map, State2 x0, const State2& target,
                                   double epsilon, std::uint64_t max_iter);

}  // namespace chaos_target
