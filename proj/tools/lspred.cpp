// Command-line front end: run experiments and emit intermediate tables.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "lspred/config.hpp"
#include "lspred/errors.hpp"
#include "lspred/io.hpp"
#include "lspred/pipeline.hpp"
#include "lspred/sweep.hpp"

namespace fs = std::filesystem;
using namespace lspred;

namespace {

enum ExitCode : int { kOk = 0, kOther = 1, kUsage = 2, kConfig = 3, kParse = 4, kPipeline = 5 };

// "-" means standard output.
void emit(const std::string& content, const fs::path& target) {
    if (target == "-") {
        std::cout << content;
        return;
    }
    write_file_atomic(target, content);
    spdlog::info("wrote {}", target.string());
}

fs::path output_for(const ExperimentConfig& config, const std::string& override_path, const std::string& name) {
    return override_path.empty() ? config.output_dir / name : fs::path(override_path);
}

int cmd_run(const std::string& config_path, bool predict_only, const std::string& out) {
    auto config = load_config(config_path);
    if (!out.empty()) config.output_dir = out;
    const auto result = run_experiment(config, predict_only ? RunMode::PredictOnly : RunMode::Evaluate);
    for (const auto& p : write_experiment(result)) spdlog::info("wrote {}", p.string());
    if (result.report) {
        const auto& r = *result.report;
        std::cout << fmt::format("F={} precision={} recall={} predicted={} actual={}\n", format_number(r.f_score),
                                 format_number(r.precision), format_number(r.recall),
                                 format_number(r.predicted_total), format_number(r.actual_total));
    } else {
        std::cout << fmt::format("predicted={}\n", format_number(result.prediction.total));
    }
    return kOk;
}

int cmd_score(const std::string& config_path, const std::string& out) {
    const auto config = load_config(config_path);
    const auto data = load_experiment_data(config);
    const auto tables = score_all(data.observation, config.metrics, candidate_pairs(data.observation));
    emit(score_tables_csv(tables, data.observation.nodes()), output_for(config, out, "scores.csv"));
    return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& a, const std::string& b,
              std::optional<std::size_t> points, const std::string& out) {
    const auto config = load_config(config_path);
    const auto metric_a = !a.empty() ? std::optional(MetricId::parse(a)) : config.sweep.metric_a;
    const auto metric_b = !b.empty() ? std::optional(MetricId::parse(b)) : config.sweep.metric_b;
    if (!metric_a || !metric_b) throw ConfigError("pipeline_cli", "sweep needs --metric-a and --metric-b");
    SweepSpec spec{*metric_a, *metric_b, SweepSpec::grid(points.value_or(config.sweep.points)),
                   config.sweep.categories};
    const auto data = load_experiment_data(config);
    const double total = extrapolate_total(data.training, config.schedule.validation);
    const auto rows = run_sweep(spec, data.training, data.observation, total);
    emit(sweep_csv(rows), output_for(config, out, "sweep.csv"));
    return kOk;
}

int cmd_correlate(const std::string& config_path, const std::string& out) {
    const auto config = load_config(config_path);
    const auto data = load_experiment_data(config);
    const auto tables = score_all(data.training, config.metrics, candidate_pairs(data.training));
    emit(correlation_csv(correlation_matrix(tables)), output_for(config, out, "correlation.csv"));
    return kOk;
}

int cmd_histogram(const std::string& config_path, double granularity, const std::string& out) {
    const auto config = load_config(config_path);
    const auto data = load_experiment_data(config);
    emit(histogram_csv(activity_histogram(data.stream, granularity)), output_for(config, out, "histogram.csv"));
    return kOk;
}

int cmd_evaluate(const std::string& predictions_path, const std::string& config_path, const std::string& out) {
    const auto config = load_config(config_path);
    const auto data = load_experiment_data(config);
    const auto prediction = read_predictions_file(predictions_path, data.stream.nodes());
    const auto report = evaluate_predictions(config, prediction);
    emit(report_json(report), output_for(config, out, "evaluation.json"));
    std::cout << fmt::format("F={} precision={} recall={}\n", format_number(report.f_score),
                             format_number(report.precision), format_number(report.recall));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Activity prediction in link streams"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Only print errors");

    std::string config_path;
    std::string out;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "Experiment configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", out, "Output directory (run) or file, '-' for stdout");
    };

    auto* run = app.add_subcommand("run", "Train, predict and evaluate");
    bool predict_only = false;
    add_common(run);
    run->add_flag("--predict-only", predict_only, "Skip evaluation when the prediction period has no data");

    auto* score = app.add_subcommand("score", "Raw and normalized metric tables on the observation period");
    add_common(score);

    auto* sweep = app.add_subcommand("sweep", "Two-metric combination sweep");
    add_common(sweep);
    std::string metric_a;
    std::string metric_b;
    std::optional<std::size_t> points;
    sweep->add_option("--metric-a", metric_a, "Metric weighted by alpha");
    sweep->add_option("--metric-b", metric_b, "Metric weighted by 1 - alpha");
    sweep->add_option("--points", points, "Number of alpha values")->check(CLI::Range(2, 100000));

    auto* correlate = app.add_subcommand("correlate", "Metric correlation matrix on the training period");
    add_common(correlate);

    auto* histogram = app.add_subcommand("histogram", "Link counts per time bin over the whole stream");
    add_common(histogram);
    double granularity = 0.0;
    histogram->add_option("--granularity", granularity, "Bin width in seconds")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate an external predictions file");
    std::string predictions_path;
    evaluate->add_option("predictions", predictions_path, "CSV with u,v,predicted_count")
        ->required()
        ->check(CLI::ExistingFile);
    add_common(evaluate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    spdlog::set_default_logger(spdlog::stderr_color_mt("lspred"));
    spdlog::set_level(quiet ? spdlog::level::err : spdlog::level::info);

    try {
        if (*run) return cmd_run(config_path, predict_only, out);
        if (*score) return cmd_score(config_path, out);
        if (*sweep) return cmd_sweep(config_path, metric_a, metric_b, points, out);
        if (*correlate) return cmd_correlate(config_path, out);
        if (*histogram) return cmd_histogram(config_path, granularity, out);
        if (*evaluate) return cmd_evaluate(predictions_path, config_path, out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const PipelineError& e) {
        std::cerr << "pipeline error: " << e.what() << "\n";
        return kPipeline;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
    return kUsage;
}
