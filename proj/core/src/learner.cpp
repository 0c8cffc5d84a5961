#include "lspred/learner.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lspred/errors.hpp"

namespace lspred {

namespace {

constexpr const char* kModule = "learner";

std::mt19937_64 restart_engine(std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    return std::mt19937_64(seq);
}

RestartResult run_restart(const LearnerConfig& cfg, const ObjectiveFn& objective, std::size_t dim, int restart) {
    auto engine = restart_engine(cfg.seed, restart);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> alpha(dim);
    for (double& a : alpha) a = uniform(engine);

    RestartResult r;
    double value = objective(alpha);
    double step = cfg.initial_step;
    r.initial_value = value;
    r.trace.push_back({restart, 0, value, step, alpha});

    std::vector<double> probe(dim);
    std::vector<double> grad(dim);
    std::vector<double> candidate(dim);
    for (int it = 1; it <= cfg.max_iterations && step >= cfg.min_step; ++it) {
        // Forward differences, projected so coordinates pinned at zero do not
        // push outward.
        double norm2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            probe = alpha;
            probe[i] += cfg.fd_epsilon;
            grad[i] = (objective(probe) - value) / cfg.fd_epsilon;
            if (alpha[i] <= 0.0 && grad[i] < 0.0) grad[i] = 0.0;
            norm2 += grad[i] * grad[i];
        }
        if (!(norm2 > 0.0)) break;
        const double norm = std::sqrt(norm2);
        for (std::size_t i = 0; i < dim; ++i) candidate[i] = std::max(0.0, alpha[i] + step * grad[i] / norm);
        const double next = objective(candidate);
        if (next > value) {
            alpha = candidate;
            value = next;
        } else {
            step *= cfg.step_shrink;
        }
        r.trace.push_back({restart, it, value, step, alpha});
    }
    r.alphas = std::move(alpha);
    r.value = value;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Periods

void PeriodSchedule::validate() const {
    if (training.end() != validation.start()) {
        throw ConfigError(kModule, "training period must end where the validation period starts");
    }
    if (validation.end() > prediction.start()) {
        throw ConfigError(kModule, "prediction period must start after the validation period ends");
    }
    if (!(training.length() > 0.0) || !(validation.length() > 0.0) || !(prediction.length() > 0.0)) {
        throw ConfigError(kModule, "training, validation and prediction periods need positive length");
    }
}

std::pair<LinkStream, LinkStream> split_periods(const LinkStream& stream, const PeriodSchedule& schedule) {
    schedule.validate();
    return {slice(stream, schedule.training), slice(stream, schedule.validation)};
}

void LearnerConfig::validate() const {
    if (restarts < 1) throw ConfigError(kModule, "restarts must be >= 1");
    if (max_iterations < 0) throw ConfigError(kModule, "max_iterations must be >= 0");
    if (!(initial_step > 0.0)) throw ConfigError(kModule, "initial_step must be > 0");
    if (!(step_shrink > 0.0 && step_shrink < 1.0)) throw ConfigError(kModule, "step_shrink must lie in (0,1)");
    if (!(min_step > 0.0)) throw ConfigError(kModule, "min_step must be > 0");
    if (!(fd_epsilon > 0.0)) throw ConfigError(kModule, "fd_epsilon must be > 0");
}

// ---------------------------------------------------------------------------
// Optimizer

std::vector<double> OptimizeResult::mean() const {
    if (restarts.empty()) return {};
    std::vector<double> m(restarts.front().alphas.size(), 0.0);
    for (const auto& r : restarts) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += r.alphas[i];
    }
    for (double& v : m) v /= static_cast<double>(restarts.size());
    return m;
}

std::vector<double> OptimizeResult::stddev() const {
    const auto m = mean();
    std::vector<double> s(m.size(), 0.0);
    for (const auto& r : restarts) {
        for (std::size_t i = 0; i < m.size(); ++i) s[i] += (r.alphas[i] - m[i]) * (r.alphas[i] - m[i]);
    }
    for (double& v : s) v = std::sqrt(v / static_cast<double>(restarts.size()));
    return s;
}

OptimizeResult optimize(const LearnerConfig& config, const ObjectiveFn& objective, std::size_t dimension) {
    config.validate();
    if (dimension == 0) throw ConfigError(kModule, "optimizer needs at least one weight");
    OptimizeResult out;
    for (int r = 0; r < config.restarts; ++r) {
        out.restarts.push_back(run_restart(config, objective, dimension, r));
        const auto& last = out.restarts.back();
        if (r == 0 || last.value > out.best_value) {
            out.best = last.alphas;
            out.best_value = last.value;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Training problem

TrainingProblem::TrainingProblem(const LinkStream& observation, const LinkStream& target,
                                 std::vector<MetricId> metrics)
    : TrainingProblem(observation, target.activities(), std::move(metrics),
                      extrapolate_total(observation, target.interval())) {}

TrainingProblem::TrainingProblem(const LinkStream& observation, const PairCounts& target,
                                 std::vector<MetricId> metrics, double budget)
    : metrics_(std::move(metrics)),
      pairs_(candidate_pairs(observation)),
      tables_(score_all(observation, metrics_, pairs_)),
      observed_(observation.activities()),
      actual_(target),
      budget_(budget) {}

WeightVector TrainingProblem::weights(std::span<const double> alphas) const {
    return WeightVector(metrics_, std::vector<double>(alphas.begin(), alphas.end()));
}

ActivityPrediction TrainingProblem::predict(const WeightVector& weights) const {
    return allocate(budget_, prediction_index(weights, tables_));
}

double TrainingProblem::f_score(const WeightVector& weights) const {
    try {
        return prf(confusion(predict(weights), actual_)).f_score;
    } catch (const DegenerateIndexError&) {
        return 0.0;
    }
}

double objective(const WeightVector& weights, const LinkStream& observation, const LinkStream& target) {
    return TrainingProblem(observation, target, weights.metrics()).f_score(weights);
}

TrainingResult make_training_result(const std::vector<MetricId>& metrics, OptimizeResult optimization) {
    TrainingResult out;
    out.best = WeightVector(metrics, optimization.best);
    out.best_value = optimization.best_value;
    out.mean = WeightVector(metrics, optimization.mean());
    out.stddev = optimization.stddev();
    for (const auto& r : optimization.restarts) out.realizations.emplace_back(metrics, r.alphas);
    out.optimization = std::move(optimization);
    return out;
}

TrainingResult train(const TrainingProblem& problem, const LearnerConfig& config) {
    auto result = optimize(
        config, [&](std::span<const double> a) { return problem.f_score(problem.weights(a)); },
        problem.metrics().size());
    return make_training_result(problem.metrics(), std::move(result));
}

}  // namespace lspred
