#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lspred/classes.hpp"
#include "lspred/config.hpp"
#include "lspred/evaluation.hpp"
#include "lspred/learner.hpp"
#include "lspred/predictor.hpp"
#include "lspred/stream.hpp"

namespace lspred {

/// The full stream and its training (L1) and observation (L2) slices.
struct ExperimentData {
    LinkStream stream;
    LinkStream training;
    LinkStream observation;
};

ExperimentData load_experiment_data(const ExperimentConfig& config);

/// Warnings for PAE delta windows shorter than the stream's time resolution,
/// which make those metrics identically zero.
std::vector<std::string> resolution_warnings(const LinkStream& stream, std::span<const MetricId> metrics);

enum class RunMode { Evaluate, PredictOnly };

struct ExperimentResult {
    ExperimentConfig config;
    std::shared_ptr<const NodeTable> nodes;
    std::size_t training_links = 0;
    std::size_t observation_links = 0;
    double training_budget = 0.0;
    double prediction_budget = 0.0;
    std::optional<TrainingResult> training;
    std::optional<ClassedTrainingResult> classed;
    ActivityPrediction prediction;
    std::optional<EvaluationReport> report;
    std::optional<RealizationSummary> realizations;
    std::vector<std::string> warnings;
};

/// Load, split, train on (L1 -> L2), score L2, predict T' and, in Evaluate
/// mode, compare with the links of T'. Evaluate mode throws PipelineError
/// when the data does not cover T'.
ExperimentResult run_experiment(const ExperimentConfig& config, RunMode mode = RunMode::Evaluate);

/// Report with "category:*" breakdowns (new/recurrent relative to L2) and
/// "class:*" breakdowns (classes on L2 with the configured k).
EvaluationReport evaluate_against(const ExperimentData& data, const ExperimentConfig& config,
                                  const ActivityPrediction& prediction);
/// Loads the data named by `config` and evaluates `prediction` on T'.
EvaluationReport evaluate_predictions(const ExperimentConfig& config, const ActivityPrediction& prediction);

/// Full JSON document: resolved config, budgets, learned weights, report and
/// realization summary.
std::string experiment_json(const ExperimentResult& result);

/// Writes the report, predictions, weights and traces into the configured
/// output directory. Returns the paths written.
std::vector<std::filesystem::path> write_experiment(const ExperimentResult& result);

}  // namespace lspred
