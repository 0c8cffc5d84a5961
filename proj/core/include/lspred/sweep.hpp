#pragma once

#include <vector>

#include "lspred/evaluation.hpp"
#include "lspred/metrics.hpp"
#include "lspred/stream.hpp"

namespace lspred {

/// F = alpha * normalized(metric_a) + (1 - alpha) * normalized(metric_b).
struct SweepSpec {
    MetricId metric_a;
    MetricId metric_b;
    std::vector<double> alphas;
    bool categories = true;

    /// Throws ConfigError unless alphas is non-empty, sorted and within [0,1],
    /// and the two metrics differ.
    void validate() const;

    /// `points` evenly spaced values from 0 to 1 inclusive.
    static std::vector<double> grid(std::size_t points = 101);
};

struct SweepRow {
    double alpha = 0.0;
    double f_all = 0.0;
    double f_new = 0.0;
    double f_recurrent = 0.0;
    bool degenerate = false;
    Confusion all;
    Confusion new_links;
    Confusion recurrent_links;
};

/// Evaluates every alpha on cached tables of L_obs against L_target with
/// budget N. Categories are judged on L_obs. Degenerate rows score 0.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const LinkStream& observation, const LinkStream& target,
                                double total);

}  // namespace lspred
