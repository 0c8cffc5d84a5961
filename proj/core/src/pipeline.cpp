#include "lspred/pipeline.hpp"

#include <array>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "json_report.hpp"
#include "lspred/errors.hpp"
#include "lspred/io.hpp"

namespace lspred {

namespace {

constexpr const char* kModule = "pipeline_cli";

constexpr std::array<PairClass, kClassCount> kAllClasses{PairClass::C1, PairClass::C2, PairClass::C3};

ActivityPrediction predict_with(const ExperimentResult& r, const ClassWeights* classed, const WeightVector* plain,
                                std::span<const ScoreTable> tables, const ClassPartition& partition) {
    if (classed) return classed_predict(*classed, partition, tables, r.prediction_budget);
    return allocate(r.prediction_budget, prediction_index(*plain, tables));
}

nlohmann::json weights_json(const std::vector<MetricId>& metrics, const WeightVector& best, const WeightVector& mean,
                            const std::vector<double>& sd) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        j.push_back({{"metric", metrics[i].name()},
                     {"alpha", best.get(metrics[i])},
                     {"mean", mean.get(metrics[i])},
                     {"std", i < sd.size() ? sd[i] : 0.0}});
    }
    return j;
}

std::vector<std::string> class_columns(const std::vector<MetricId>& metrics, const ClassedTrainingResult& c) {
    std::vector<std::string> cols;
    for (PairClass cls : kAllClasses) {
        if (!c.populated[static_cast<std::size_t>(cls)]) continue;
        for (const auto& m : metrics) cols.push_back(std::string(class_name(cls)) + ":" + m.name());
    }
    return cols;
}

}  // namespace

ExperimentData load_experiment_data(const ExperimentConfig& config) {
    LoadOptions options;
    options.interval = config.data_interval;
    if (config.node_universe) options.node_universe = load_node_universe(*config.node_universe);
    auto stream = load_stream_file(config.dataset, options);
    auto [training, observation] = split_periods(stream, config.schedule);
    return ExperimentData{std::move(stream), std::move(training), std::move(observation)};
}

std::vector<std::string> resolution_warnings(const LinkStream& stream, std::span<const MetricId> metrics) {
    std::vector<std::string> out;
    for (const auto& m : metrics) {
        if (m.kind() == MetricKind::PAE_DELTA_S && m.parameter() < stream.min_positive_gap()) {
            out.push_back(fmt::format("{}: window of {} s is below the stream's time resolution ({} s)", m.name(),
                                      format_number(m.parameter()), format_number(stream.min_positive_gap())));
        }
    }
    return out;
}

EvaluationReport evaluate_against(const ExperimentData& data, const ExperimentConfig& config,
                                  const ActivityPrediction& prediction) {
    const auto target = slice(data.stream, config.schedule.prediction);
    const ClassPartition partition(config.classes.k, data.observation, candidate_pairs(data.observation));
    const std::array<Breakdown, 2> breakdowns{category_breakdown(data.observation.activities()),
                                              partition.breakdown()};
    return evaluate(prediction, target.activities(), breakdowns);
}

EvaluationReport evaluate_predictions(const ExperimentConfig& config, const ActivityPrediction& prediction) {
    const auto data = load_experiment_data(config);
    const auto& iv = data.stream.interval();
    const auto& t = config.schedule.prediction;
    if (t.start() < iv.start() || t.end() > iv.end()) {
        throw PipelineError(kModule, "the dataset does not cover the prediction period; nothing to evaluate against");
    }
    return evaluate_against(data, config, prediction);
}

ExperimentResult run_experiment(const ExperimentConfig& config, RunMode mode) {
    config.validate();
    ExperimentResult r;
    r.config = config;
    const auto data = load_experiment_data(config);
    r.nodes = data.stream.node_table();

    if (mode == RunMode::Evaluate) {
        const auto& iv = data.stream.interval();
        const auto& t = config.schedule.prediction;
        if (t.start() < iv.start() || t.end() > iv.end()) {
            throw PipelineError(kModule,
                                "the dataset does not cover the prediction period; use predict-only mode");
        }
    }
    r.warnings = resolution_warnings(data.stream, config.metrics);
    for (const auto& w : r.warnings) spdlog::warn("{}", w);

    r.training_links = data.training.size();
    r.observation_links = data.observation.size();

    // Learning phase: metrics on L1, objective on L2.
    const TrainingProblem problem(data.training, data.observation, config.metrics);
    r.training_budget = problem.budget();
    if (config.classes.enabled) {
        r.classed = classed_train(problem, data.training, config.classes.k, config.learner, config.classes.mode);
    } else if (config.learner.objective == Objective::MacroF) {
        r.training = train_macro(problem, data.training, config.classes.k, config.learner);
    } else {
        r.training = train(problem, config.learner);
    }

    // Prediction phase: metrics on L2, budget extrapolated to T'.
    const PairSet pairs = candidate_pairs(data.observation);
    const auto tables = score_all(data.observation, config.metrics, pairs);
    const ClassPartition partition(config.classes.k, data.observation, pairs);
    r.prediction_budget = extrapolate_total(data.observation, config.schedule.prediction);
    r.prediction = predict_with(r, r.classed ? &r.classed->best : nullptr, r.training ? &r.training->best : nullptr,
                                tables, partition);

    if (mode == RunMode::Evaluate) {
        r.report = evaluate_against(data, config, r.prediction);
        const auto target = slice(data.stream, config.schedule.prediction);
        std::vector<EvaluationReport> runs;
        const std::size_t n = r.classed ? r.classed->realizations.size() : r.training->realizations.size();
        for (std::size_t i = 0; i < n; ++i) {
            try {
                const auto p = predict_with(r, r.classed ? &r.classed->realizations[i] : nullptr,
                                            r.training ? &r.training->realizations[i] : nullptr, tables, partition);
                runs.push_back(EvaluationReport::from(confusion(p, target.activities())));
            } catch (const DegenerateIndexError&) {
                runs.push_back(EvaluationReport::from(confusion(ActivityPrediction{}, target.activities())));
            }
        }
        r.realizations = summarize_realizations(runs);
    }
    return r;
}

std::string experiment_json(const ExperimentResult& r) {
    const auto& c = r.config;
    nlohmann::json j;
    j["name"] = c.name;
    j["config"] = to_ini(c);
    j["schedule"] = {
        {"training", {c.schedule.training.start(), c.schedule.training.end()}},
        {"validation", {c.schedule.validation.start(), c.schedule.validation.end()}},
        {"prediction", {c.schedule.prediction.start(), c.schedule.prediction.end()}},
    };
    j["links"] = {{"training", r.training_links}, {"observation", r.observation_links}};
    j["budget"] = {{"training", r.training_budget}, {"prediction", r.prediction_budget}};
    if (r.training) {
        j["training"] = {
            {"objective", c.learner.objective == Objective::OverallF ? "overall_f" : "macro_f"},
            {"best_value", r.training->best_value},
            {"weights", weights_json(c.metrics, r.training->best, r.training->mean, r.training->stddev)},
        };
    }
    if (r.classed) {
        nlohmann::json classes = nlohmann::json::object();
        for (PairClass cls : kAllClasses) {
            const auto i = static_cast<std::size_t>(cls);
            classes[std::string(class_name(cls))] = {
                {"populated", r.classed->populated[i]},
                {"weights", weights_json(c.metrics, r.classed->best[i], r.classed->mean[i], r.classed->stddev[i])},
            };
        }
        j["training"] = {
            {"objective", "macro_f"},
            {"k", c.classes.k},
            {"mode", c.classes.mode == ClassTraining::Joint ? "joint" : "independent"},
            {"best_value", r.classed->best_value},
            {"classes", classes},
        };
    }
    if (r.report) j["evaluation"] = detail::to_json(*r.report);
    if (r.realizations) {
        const auto& s = *r.realizations;
        j["realizations"] = {
            {"count", s.count},
            {"mean_f_score", s.mean_f},
            {"std_f_score", s.std_f},
            {"mean_precision", s.mean_precision},
            {"mean_recall", s.mean_recall},
            {"mean_confusion", {{"tp", s.mean_confusion.tp}, {"fp", s.mean_confusion.fp}, {"fn", s.mean_confusion.fn}}},
            {"f_score_of_mean_confusion", s.f_of_mean_confusion},
        };
    }
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_experiment(const ExperimentResult& r) {
    const auto& c = r.config;
    const auto& dir = c.output_dir;
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string& name, const std::string& content) {
        write_file_atomic(dir / name, content);
        written.push_back(dir / name);
    };

    put("resolved.ini", to_ini(c));
    if (c.write_json) put("report.json", experiment_json(r));

    std::vector<std::string> weight_lines;
    if (r.training) weight_lines.push_back(r.training->best.to_string());
    if (r.classed) {
        for (PairClass cls : kAllClasses) {
            weight_lines.push_back(std::string(class_name(cls)) + " " +
                                   r.classed->best[static_cast<std::size_t>(cls)].to_string());
        }
    }
    put("predictions.csv", predictions_csv(r.prediction, *r.nodes, weight_lines));

    if (c.write_csv) {
        if (r.report) put("summary.csv", summary_csv(*r.report, c.name));
        if (r.training) {
            put("weights.csv", weights_csv(c.metrics, r.training->best, r.training->mean, r.training->stddev));
            std::vector<std::string> cols;
            for (const auto& m : c.metrics) cols.push_back(m.name());
            put("trace.csv", trace_csv(r.training->optimization, cols));
        }
        if (r.classed) {
            for (PairClass cls : kAllClasses) {
                const auto i = static_cast<std::size_t>(cls);
                put(fmt::format("weights_{}.csv", class_name(cls)),
                    weights_csv(c.metrics, r.classed->best[i], r.classed->mean[i], r.classed->stddev[i]));
            }
            if (c.classes.mode == ClassTraining::Joint) {
                put("trace.csv", trace_csv(r.classed->optimizations.front(), class_columns(c.metrics, *r.classed)));
            } else {
                std::vector<std::string> cols;
                for (const auto& m : c.metrics) cols.push_back(m.name());
                for (std::size_t i = 0; i < r.classed->optimizations.size(); ++i) {
                    put(fmt::format("trace_{}.csv", i), trace_csv(r.classed->optimizations[i], cols));
                }
            }
        }
    }
    return written;
}

}  // namespace lspred
