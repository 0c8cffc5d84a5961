#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/container/flat_map.hpp>

#include "lspred/evaluation.hpp"
#include "lspred/learner.hpp"
#include "lspred/metrics.hpp"
#include "lspred/predictor.hpp"
#include "lspred/stream.hpp"

namespace lspred {

/// Activity classes on a reference stream: C1 no links, C2 between 1 and k
/// links, C3 more than k links.
enum class PairClass : std::uint8_t { C1 = 0, C2 = 1, C3 = 2 };
inline constexpr std::size_t kClassCount = 3;
inline constexpr std::uint64_t kDefaultClassThreshold = 5;

std::string_view class_name(PairClass c) noexcept;
PairClass classify(std::uint64_t activity, std::uint64_t k) noexcept;

class ClassPartition {
public:
    ClassPartition(std::uint64_t k, const LinkStream& reference, const PairSet& pairs);

    std::uint64_t threshold() const noexcept { return k_; }
    const boost::container::flat_map<NodePair, PairClass>& assignment() const noexcept { return assignment_; }
    /// Class of any pair, including pairs outside the assigned set (judged
    /// on the reference activity).
    PairClass of(NodePair p) const noexcept;
    PairSet members(PairClass c) const;
    std::size_t count(PairClass c) const noexcept { return counts_[static_cast<std::size_t>(c)]; }

    /// Breakdown labeled C1/C2/C3; references this partition.
    Breakdown breakdown() const;

private:
    std::uint64_t k_;
    boost::container::flat_map<NodePair, PairClass> assignment_;
    PairCounts reference_;
    std::array<std::size_t, kClassCount> counts_{};
};

/// Throws ConfigError when k < 1.
ClassPartition assign_classes(const LinkStream& reference, const PairSet& pairs, std::uint64_t k);

using ClassWeights = std::array<WeightVector, kClassCount>;

/// Index of each pair computed with the weights of its class.
PairMap classed_index(const ClassWeights& weights, const ClassPartition& partition,
                      std::span<const ScoreTable> tables);

/// Allocates N over the concatenated per-class indexes. A populated class
/// whose index is all zero gets nothing (with a warning); if every class is
/// degenerate a DegenerateIndexError is thrown.
ActivityPrediction classed_predict(const ClassWeights& weights, const ClassPartition& partition,
                                   std::span<const ScoreTable> tables, double total);
/// Scores `observation`, assigns classes on it and predicts.
ActivityPrediction classed_predict(const LinkStream& observation, const ClassWeights& weights, std::uint64_t k,
                                   std::span<const MetricId> metrics, double total);

/// Class-aware objective on a training problem. Classes are assigned on the
/// problem's observation stream; F-bar is the harmonic mean over the
/// evaluable classes (populated by candidates and with target links).
class ClassedObjective {
public:
    ClassedObjective(const TrainingProblem& problem, const LinkStream& observation, std::uint64_t k);

    const ClassPartition& partition() const noexcept { return partition_; }
    bool populated(PairClass c) const noexcept { return populated_[static_cast<std::size_t>(c)]; }
    bool evaluable(PairClass c) const noexcept { return evaluable_[static_cast<std::size_t>(c)]; }

    std::array<Confusion, kClassCount> per_class(const ActivityPrediction& prediction) const;
    double macro(const ActivityPrediction& prediction) const;
    /// F-bar of classed weights; 0 for a degenerate index.
    double operator()(const ClassWeights& weights) const;
    /// F-bar of a single weight vector applied to every class.
    double operator()(const WeightVector& weights) const;
    /// F-score of one class under classed weights; 0 if degenerate.
    double class_f(const ClassWeights& weights, PairClass c) const;

private:
    const TrainingProblem& problem_;
    ClassPartition partition_;
    std::array<bool, kClassCount> populated_{};
    std::array<bool, kClassCount> evaluable_{};
};

/// F-bar of the full pipeline for classed weights.
double classed_objective(const ClassWeights& weights, const LinkStream& observation, const LinkStream& target,
                         std::uint64_t k);

enum class ClassTraining { Joint, Independent };

struct ClassedTrainingResult {
    ClassWeights best;
    double best_value = 0.0;
    ClassWeights mean;
    std::array<std::vector<double>, kClassCount> stddev;
    std::array<bool, kClassCount> populated{};
    std::vector<ClassWeights> realizations;
    /// Unclassed training, run when some class is empty or in independent mode.
    std::optional<TrainingResult> overall;
    /// Joint mode: one entry. Independent mode: one per populated class.
    std::vector<OptimizeResult> optimizations;
};

/// Learns one weight vector per class against F-bar. Joint mode ascends the
/// concatenated vector of the populated classes. Independent mode trains
/// each populated class on its own F-score with the other classes held at
/// the unclassed weights. Empty classes fall back to the unclassed weights.
ClassedTrainingResult classed_train(const TrainingProblem& problem, const LinkStream& observation, std::uint64_t k,
                                    const LearnerConfig& config, ClassTraining mode = ClassTraining::Joint);

/// Unclassed weights trained against F-bar instead of the overall F-score.
TrainingResult train_macro(const TrainingProblem& problem, const LinkStream& observation, std::uint64_t k,
                           const LearnerConfig& config);

}  // namespace lspred
