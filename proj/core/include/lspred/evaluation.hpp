#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lspred/predictor.hpp"
#include "lspred/stream.hpp"

namespace lspred {

/// Fractional confusion counts: per pair TP = min(pred, actual),
/// FP = max(pred - actual, 0), FN = max(actual - pred, 0), summed.
struct Confusion {
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;

    Confusion& operator+=(const Confusion& o) noexcept {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
    bool operator==(const Confusion&) const = default;
};

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
};

/// Summed over the union of predicted and actual pairs. Throws PipelineError
/// on a negative predicted count.
Confusion confusion(const ActivityPrediction& predicted, const PairCounts& actual);

/// Maps a pair to a group index in [0, groups).
using PairLabeler = std::function<std::size_t(NodePair)>;

/// One confusion per group; the groups sum to the overall confusion.
std::vector<Confusion> confusion_by_group(const ActivityPrediction& predicted, const PairCounts& actual,
                                          const PairLabeler& labeler, std::size_t groups);

/// 0/0 conventions: precision, recall and F default to 0.
PrecisionRecall prf(const Confusion& c) noexcept;

struct EvaluationReport {
    Confusion confusion;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    double predicted_total = 0.0;
    double actual_total = 0.0;
    std::vector<std::pair<std::string, EvaluationReport>> breakdowns;

    static EvaluationReport from(const Confusion& c);
    const EvaluationReport* find(std::string_view label) const;
};

/// A labeled partition of pairs, reported as a nested breakdown.
struct Breakdown {
    std::string name;                 ///< e.g. "category" or "class"
    std::vector<std::string> labels;  ///< one per group
    PairLabeler labeler;
};

/// Overall report plus one nested report per breakdown label, keyed
/// "<name>:<label>".
EvaluationReport evaluate(const ActivityPrediction& predicted, const PairCounts& actual,
                          std::span<const Breakdown> breakdowns = {});

enum class LinkCategory : std::size_t { New = 0, Recurrent = 1 };

struct CategoryPartition {
    PairSet new_pairs;
    PairSet recurrent;
};

/// Recurrent pairs have at least one link in `observation`.
CategoryPartition categorize_pairs(const LinkStream& observation, const PairSet& pairs);
LinkCategory category_of(const PairCounts& observation_activity, NodePair pair) noexcept;
/// Breakdown into "new" and "recurrent" relative to an observation stream.
/// The returned labeler keeps a reference to `observation_activity`.
Breakdown category_breakdown(const PairCounts& observation_activity);

/// Harmonic mean n / sum(1/F_i); 0 if any F_i is 0. Throws ConfigError on
/// an empty list.
double macro_f(std::span<const double> f_scores);
double macro_f(std::span<const EvaluationReport> reports);

/// Aggregate over repeated realizations (one report per learner restart).
struct RealizationSummary {
    std::size_t count = 0;
    double mean_f = 0.0;
    double std_f = 0.0;
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    Confusion mean_confusion;
    /// F-score computed on the averaged confusion counts.
    double f_of_mean_confusion = 0.0;
};

RealizationSummary summarize_realizations(std::span<const EvaluationReport> reports);

}  // namespace lspred
