#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lspred/evaluation.hpp"
#include "lspred/learner.hpp"
#include "lspred/metrics.hpp"
#include "lspred/predictor.hpp"
#include "lspred/stream.hpp"
#include "lspred/sweep.hpp"

namespace lspred {

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double v);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// `metric,u,v,raw,normalized`
std::string score_tables_csv(std::span<const ScoreTable> tables, const NodeTable& nodes);

/// Metric names as header row and column; undefined entries print as NA.
std::string correlation_csv(const CorrelationMatrix& matrix);

/// `u,v,predicted_count`, preceded by `# N=...` and `# weights ...` comments.
std::string predictions_csv(const ActivityPrediction& prediction, const NodeTable& nodes,
                            const std::vector<std::string>& weight_lines);

/// Reads a predictions file. Unknown node labels, self pairs, duplicate
/// pairs and negative counts are ParseErrors. The total is taken from the
/// `# N=` comment when present, otherwise from the sum of counts.
ActivityPrediction read_predictions_csv(std::istream& in, const NodeTable& nodes);
ActivityPrediction read_predictions_file(const std::filesystem::path& path, const NodeTable& nodes);

/// `restart,iteration,objective,step,<name_1>,...,<name_M>`
std::string trace_csv(const OptimizeResult& result, const std::vector<std::string>& column_names);

/// `metric,alpha,mean,std`, one row per metric; alpha is the best restart.
std::string weights_csv(const std::vector<MetricId>& metrics, const WeightVector& best, const WeightVector& mean,
                        const std::vector<double>& stddev);

/// `label,f_score,precision,recall,tp,fp,fn,predicted,actual`, one row for the
/// overall report followed by one per breakdown.
std::string summary_csv(const EvaluationReport& report, const std::string& label);

/// `alpha,f_all,f_new,f_recurrent,degenerate`
std::string sweep_csv(std::span<const SweepRow> rows);

/// `bin_start,count`
std::string histogram_csv(std::span<const HistogramBin> bins);

/// Structured JSON rendering of an evaluation report (pretty printed).
std::string report_json(const EvaluationReport& report);

}  // namespace lspred
