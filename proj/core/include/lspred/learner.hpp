#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lspred/evaluation.hpp"
#include "lspred/metrics.hpp"
#include "lspred/predictor.hpp"
#include "lspred/stream.hpp"

namespace lspred {

/// Training T1, validation/observation T2 and prediction T' periods.
/// Requires T1.end == T2.start <= T2.end <= T'.start < T'.end and positive
/// lengths for T1 and T2.
struct PeriodSchedule {
    Interval training;
    Interval validation;
    Interval prediction;

    /// Throws ConfigError when the periods are not laid out as above.
    void validate() const;
};

/// (L1, L2): the training and validation/observation sub-streams.
std::pair<LinkStream, LinkStream> split_periods(const LinkStream& stream, const PeriodSchedule& schedule);

enum class Objective { OverallF, MacroF };

struct LearnerConfig {
    int restarts = 10;
    int max_iterations = 200;
    double initial_step = 0.1;
    double step_shrink = 0.5;
    double min_step = 1e-4;
    double fd_epsilon = 1e-4;
    std::uint64_t seed = 42;
    Objective objective = Objective::OverallF;

    void validate() const;
};

struct TraceRow {
    int restart = 0;
    int iteration = 0;
    double objective = 0.0;
    double step = 0.0;
    std::vector<double> alphas;

    bool operator==(const TraceRow&) const = default;
};

struct RestartResult {
    std::vector<double> alphas;
    double initial_value = 0.0;
    double value = 0.0;
    std::vector<TraceRow> trace;
};

struct OptimizeResult {
    std::vector<double> best;
    double best_value = 0.0;
    std::vector<RestartResult> restarts;

    /// Per-coordinate mean and population standard deviation of the final
    /// weights across restarts.
    std::vector<double> mean() const;
    std::vector<double> stddev() const;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Finite-difference gradient ascent with backtracking, projected onto the
/// non-negative orthant. Each restart starts uniformly in [0,1]^dimension
/// from a generator seeded by (config.seed, restart index). A step is taken
/// only when it strictly improves the objective; otherwise the step length
/// shrinks. A restart stops after max_iterations, when the step falls below
/// min_step, or at a zero projected gradient.
OptimizeResult optimize(const LearnerConfig& config, const ObjectiveFn& objective, std::size_t dimension);

/// Metric tables on the observation stream plus everything needed to score a
/// weight vector against the target stream. Tables are computed once.
class TrainingProblem {
public:
    TrainingProblem(const LinkStream& observation, const LinkStream& target, std::vector<MetricId> metrics);
    /// Uses an explicit budget instead of extrapolating from `observation`.
    TrainingProblem(const LinkStream& observation, const PairCounts& target, std::vector<MetricId> metrics,
                    double budget);

    const std::vector<MetricId>& metrics() const noexcept { return metrics_; }
    std::span<const ScoreTable> tables() const noexcept { return tables_; }
    const PairSet& pairs() const noexcept { return pairs_; }
    double budget() const noexcept { return budget_; }
    const PairCounts& actual() const noexcept { return actual_; }
    const PairCounts& observed() const noexcept { return observed_; }

    WeightVector weights(std::span<const double> alphas) const;

    /// Throws DegenerateIndexError for an all-zero index.
    ActivityPrediction predict(const WeightVector& weights) const;
    /// Overall F-score; 0 when the index is degenerate.
    double f_score(const WeightVector& weights) const;

private:
    std::vector<MetricId> metrics_;
    PairSet pairs_;
    std::vector<ScoreTable> tables_;
    PairCounts observed_;
    PairCounts actual_;
    double budget_ = 0.0;
};

/// Runs the whole pipeline for one weight vector: score L_obs, combine,
/// extrapolate, allocate and compare with L_target. Returns the F-score, or
/// 0 for a degenerate index.
double objective(const WeightVector& weights, const LinkStream& observation, const LinkStream& target);

struct TrainingResult {
    WeightVector best;
    double best_value = 0.0;
    WeightVector mean;
    std::vector<double> stddev;
    /// Final weights of every restart.
    std::vector<WeightVector> realizations;
    OptimizeResult optimization;
};

TrainingResult make_training_result(const std::vector<MetricId>& metrics, OptimizeResult optimization);

/// Optimizes the overall F-score on `problem`.
TrainingResult train(const TrainingProblem& problem, const LearnerConfig& config);

}  // namespace lspred
