#include "chaos_target/tlbo.hpp"

#include <stdexcept>

namespace chaos_target {

void Population::refresh_best() {
    if (learners.empty()) throw std::logic_error("empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < learners.size(); ++i) {
        if (learners[i].fitness < learners[best].fitness) best = i;
    }
    best_index = best;
}

void TlboConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("population size must be >= 2");
    if (max_generations < 1) throw std::invalid_argument("max generations must be >= 1");
}

Population initialize_population(const TargetingProblem& p, const TlboConfig& cfg, Random& rng) {
    cfg.validate();
    Population pop;
    pop.learners.resize(cfg.population_size);
    for (Learner& l : pop.learners) {
        l.position.resize(p.horizon);
        for (double& v : l.position) v = rng.uniform(-p.mu, p.mu);
        l.fitness = evaluate_or_inf(p, l.position);
    }
    pop.refresh_best();
    return pop;
}

std::vector<double> mean_learner(const Population& pop) {
    if (pop.learners.empty()) throw std::invalid_argument("mean of empty population");
    const std::size_t d = pop.learners.front().position.size();
    std::vector<double> mean(d, 0.0);
    for (const Learner& l : pop.learners) {
        for (std::size_t j = 0; j < d; ++j) mean[j] += l.position[j];
    }
    const double n = static_cast<double>(pop.learners.size());
    for (double& m : mean) m /= n;
    return mean;
}

std::vector<double> teaching_candidate(std::span<const double> x, std::span<const double> teacher,
                                       std::span<const double> mean, const TeachingWeights& w) {
    const std::size_t d = x.size();
    std::vector<double> v(d);
    for (std::size_t j = 0; j < d; ++j) {
        v[j] = w.r[j] * (teacher[j] - w.t_factor[j] * mean[j]) + x[j];
    }
    return v;
}

std::vector<double> learning_candidate(std::span<const double> self, double self_fitness,
                                       std::span<const double> partner, double partner_fitness,
                                       std::span<const double> rand) {
    const std::size_t d = self.size();
    const bool self_better = self_fitness < partner_fitness;
    std::vector<double> w(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double diff = self_better ? self[j] - partner[j] : partner[j] - self[j];
        w[j] = self[j] + rand[j] * diff;
    }
    return w;
}

Population teaching_phase(Population pop, const TargetingProblem& p, Random& rng,
                          std::uint64_t* evaluations) {
    const std::vector<double> teacher = pop.best().position;
    const std::vector<double> mean = mean_learner(pop);
    const std::size_t d = teacher.size();

    TeachingWeights w{std::vector<double>(d), std::vector<int>(d)};
    for (Learner& learner : pop.learners) {
        for (double& r : w.r) r = rng.uniform01();
        for (int& t : w.t_factor) t = rng.one_or_two();
        std::vector<double> v = teaching_candidate(learner.position, teacher, mean, w);
        clamp_in_place(v, p.mu);
        const double fv = evaluate_or_inf(p, v);
        if (replaces(fv, learner.fitness)) {
            learner.position = std::move(v);
            learner.fitness = fv;
        }
    }
    if (evaluations) *evaluations += pop.size();
    pop.refresh_best();
    return pop;
}

Population learning_phase(Population pop, const TargetingProblem& p, Random& rng,
                          std::uint64_t* evaluations) {
    const std::size_t np = pop.size();
    if (np < 2) throw std::invalid_argument("learning phase needs at least two learners");
    const std::vector<Learner> snapshot = pop.learners;
    const std::size_t d = snapshot.front().position.size();

    std::vector<double> rand(d);
    for (std::size_t i = 0; i < np; ++i) {
        std::size_t j = rng.below(np - 1);
        if (j >= i) ++j;
        for (double& r : rand) r = rng.uniform01();

        const Learner& self = snapshot[i];
        const Learner& partner = snapshot[j];
        std::vector<double> w =
            learning_candidate(self.position, self.fitness, partner.position, partner.fitness, rand);
        clamp_in_place(w, p.mu);
        const double fw = evaluate_or_inf(p, w);
        if (replaces(fw, self.fitness)) {
            pop.learners[i].position = std::move(w);
            pop.learners[i].fitness = fw;
        }
    }
    if (evaluations) *evaluations += np;
    pop.refresh_best();
    return pop;
}

RunRecord optimize(const TargetingProblem& p, const TlboConfig& cfg) {
    p.validate();
    cfg.validate();
    Random rng(cfg.seed);

    RunRecord rec;
    Population pop = initialize_population(p, cfg, rng);
    rec.evaluations_used = pop.size();
    rec.best_fitness_per_generation.reserve(cfg.max_generations);

    for (std::size_t g = 1; g <= cfg.max_generations; ++g) {
        pop = teaching_phase(std::move(pop), p, rng, &rec.evaluations_used);
        pop = learning_phase(std::move(pop), p, rng, &rec.evaluations_used);
        const double best = pop.best().fitness;
        rec.best_fitness_per_generation.push_back(best);
        if (!rec.success_generation && is_success(best, p.epsilon)) rec.success_generation = g;
    }
    rec.best_position = pop.best().position;
    rec.best_fitness = pop.best().fitness;
    return rec;
}

}  // namespace chaos_target
