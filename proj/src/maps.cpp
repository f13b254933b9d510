#include "chaos_target/maps.hpp"

#include <cmath>

namespace chaos_target {

namespace {

State2 checked(const State2& s) {
    if (!std::isfinite(s.x1) || !std::isfinite(s.x2)) {
        throw OverflowError("map step produced a non-finite state");
    }
    return s;
}

}  // namespace

double distance(const State2& a, const State2& b) {
    const double d1 = a.x1 - b.x1;
    const double d2 = a.x2 - b.x2;
    return std::sqrt(d1 * d1 + d2 * d2);
}

NotReachedError::NotReachedError(std::uint64_t max_iter)
    : std::runtime_error("target neighbourhood not reached within " + std::to_string(max_iter) +
                         " iterations"),
      max_iter_(max_iter) {}

std::string_view to_string(MapKind kind) {
    return kind == MapKind::Henon ? "henon" : "ushio";
}

MapKind parse_map_kind(std::string_view name) {
    if (name == "henon") return MapKind::Henon;
    if (name == "ushio") return MapKind::Ushio;
    throw std::invalid_argument("unknown map '" + std::string(name) + "' (expected henon|ushio)");
}

ChaoticMapSpec ChaoticMapSpec::henon(double p, double q) {
    return {MapKind::Henon, p, q};
}

ChaoticMapSpec ChaoticMapSpec::ushio(double alpha, double beta) {
    return {MapKind::Ushio, alpha, beta};
}

void ChaoticMapSpec::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("map parameters must be finite");
    }
}

State2 henon_step(const State2& s, double p, double q) {
    return checked(raw_step(ChaoticMapSpec::henon(p, q), s));
}

State2 ushio_step(const State2& s, double alpha, double beta) {
    return checked(raw_step(ChaoticMapSpec::ushio(alpha, beta), s));
}

State2 step(const ChaoticMapSpec& map, const State2& s) {
    return checked(raw_step(map, s));
}

State2 henon_fixed_point(double p, double q) {
    if (!std::isfinite(p) || !std::isfinite(q) || p == 0.0) {
        throw NoFixedPointError("henon fixed point needs finite p != 0");
    }
    const double b = 1.0 - q;
    const double disc = b * b + 4.0 * p;
    if (disc < 0.0) {
        throw NoFixedPointError("henon fixed point: negative discriminant");
    }
    const double x = (-b + std::sqrt(disc)) / (2.0 * p);
    return {x, q * x};
}

std::uint64_t iterate_uncontrolled(const ChaoticMapSpec& map, State2 x0, const State2& target,
                                   double epsilon, std::uint64_t max_iter) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    State2 x = x0;
    for (std::uint64_t k = 1; k <= max_iter; ++k) {
        x = step(map, x);
        if (distance(x, target) < epsilon) return k;
    }
    throw NotReachedError(max_iter);
}

}  // namespace chaos_target
