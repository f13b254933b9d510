#include "chaos_target/baseline.hpp"

#include <limits>
#include <stdexcept>

namespace chaos_target {

RunRecord random_search(const TargetingProblem& p, std::uint64_t evaluations, std::uint64_t seed) {
    p.validate();
    if (evaluations < 1) throw std::invalid_argument("random search needs at least one evaluation");
    Random rng(seed);
    RunRecord rec;
    rec.best_fitness = std::numeric_limits<double>::infinity();
    ControlSequence u(p.horizon);
    for (std::uint64_t e = 0; e < evaluations; ++e) {
        for (double& v : u) v = rng.uniform(-p.mu, p.mu);
        const double f = evaluate_or_inf(p, u);
        if (f < rec.best_fitness || rec.best_position.empty()) {
            rec.best_fitness = f;
            rec.best_position = u;
        }
    }
    rec.evaluations_used = evaluations;
    return rec;
}

}  // namespace chaos_target
