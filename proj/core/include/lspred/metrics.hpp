#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lspred/stream.hpp"

namespace lspred {

enum class MetricKind {
    CN,
    JI,
    SI,
    AA,
    RA,
    WCN,
    WSI,
    WAA,
    WRA,
    PAE,
    PAE_DELTA_S,  ///< links during the last delta seconds
    PAE_K_L,      ///< rate over the last k links
};

enum class MetricFamily { Structural, Hybrid, Temporal };

/// A metric together with its parameter (delta seconds or k links).
/// Names follow the acronym table: "CN", "WAA", "PAE", "PAE1000S", "PAE10L".
class MetricId {
public:
    /// Throws ConfigError when the parameter is missing or invalid for `kind`.
    explicit MetricId(MetricKind kind, double parameter = 0.0);

    static MetricId parse(std::string_view name);

    MetricKind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }
    MetricFamily family() const noexcept;
    std::string name() const;

    bool operator==(const MetricId&) const = default;

private:
    MetricKind kind_;
    double parameter_;
};

/// The fourteen metrics, with delta in {100, 1000, 10000} s and k = 10.
std::vector<MetricId> default_metrics();
/// CN, SI, WCN, PAE, PAE10L, PAE1000S, PAE10000S.
std::vector<MetricId> reduced_metrics();

/// Scores for one metric over a fixed pair set. `raw` and `normalized` are
/// aligned with `pairs`.
struct ScoreTable {
    MetricId metric;
    PairSet pairs;
    std::vector<double> raw;
    std::vector<double> normalized;
    double normalization_max = 0.0;

    /// Normalized score of `p`, 0 when p is not in the table.
    double normalized_at(NodePair p) const;
};

double structural_score(MetricKind kind, const LinkStream& stream, NodePair pair);
double hybrid_score(MetricKind kind, const LinkStream& stream, NodePair pair);
double temporal_score(const MetricId& id, const LinkStream& stream, NodePair pair);
/// Dispatches on the metric family.
double score(const MetricId& id, const LinkStream& stream, NodePair pair);

struct Normalized {
    std::vector<double> values;
    double max = 0.0;
};

/// Divides by the maximum; an all-zero input stays all zero with max 0.
Normalized normalize(std::span<const double> scores);

/// One normalized table per metric, in the order given. Throws ConfigError on
/// duplicate metric ids.
std::vector<ScoreTable> score_all(const LinkStream& stream, std::span<const MetricId> metrics, const PairSet& pairs);

/// Number of single-metric scoring passes performed by this process.
std::uint64_t scoring_passes() noexcept;

/// Pearson correlations between tables. Entries touching a constant score
/// vector are undefined (nullopt) except on the diagonal, which is always 1.
class CorrelationMatrix {
public:
    CorrelationMatrix(std::vector<MetricId> metrics, std::vector<std::optional<double>> values);

    std::size_t size() const noexcept { return metrics_.size(); }
    const std::vector<MetricId>& metrics() const noexcept { return metrics_; }
    std::optional<double> at(std::size_t i, std::size_t j) const { return values_.at(i * size() + j); }

private:
    std::vector<MetricId> metrics_;
    std::vector<std::optional<double>> values_;
};

/// Throws ConfigError when fewer than two tables are given or their pair
/// sets differ.
CorrelationMatrix correlation_matrix(std::span<const ScoreTable> tables);

/// Pearson correlation of two equally sized vectors; nullopt if either is
/// constant.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

}  // namespace lspred
