#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/flat_map.hpp>

#include "lspred/metrics.hpp"
#include "lspred/stream.hpp"

namespace lspred {

/// Real value per pair, in canonical pair order.
using PairMap = boost::container::flat_map<NodePair, double>;

/// Non-negative metric weights, kept in insertion order.
class WeightVector {
public:
    WeightVector() = default;
    /// Throws ConfigError on size mismatch, duplicates or negative weights.
    WeightVector(std::vector<MetricId> metrics, std::vector<double> alphas);

    void set(const MetricId& metric, double alpha);
    /// 0 for metrics without an entry.
    double get(const MetricId& metric) const noexcept;

    const std::vector<MetricId>& metrics() const noexcept { return metrics_; }
    const std::vector<double>& alphas() const noexcept { return alphas_; }
    std::size_t size() const noexcept { return metrics_.size(); }
    /// At least one strictly positive weight.
    bool usable() const noexcept;
    std::string to_string() const;

    bool operator==(const WeightVector&) const = default;

private:
    std::vector<MetricId> metrics_;
    std::vector<double> alphas_;
};

struct ActivityPrediction {
    PairMap counts;
    double total = 0.0;
};

/// F(u,v) = sum_m alpha_m * normalized_m(u,v) over the union of the tables'
/// pairs. Throws ConfigError when a weighted metric has no table.
PairMap prediction_index(const WeightVector& weights, std::span<const ScoreTable> tables);

/// N = |E| * |window| / |input interval|. Throws PipelineError on a
/// zero-length input interval.
double extrapolate_total(const LinkStream& input, const Interval& prediction_window);
double extrapolate_total(std::size_t link_count, double input_length, double window_length);

/// N(u,v) = N * F(u,v) / sum F. Throws DegenerateIndexError when the index
/// sums to zero while N > 0.
ActivityPrediction allocate(double total, const PairMap& index);

}  // namespace lspred
