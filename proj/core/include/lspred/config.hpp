#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lspred/classes.hpp"
#include "lspred/learner.hpp"
#include "lspred/metrics.hpp"

namespace lspred {

struct ClassesConfig {
    bool enabled = false;
    std::uint64_t k = kDefaultClassThreshold;
    ClassTraining mode = ClassTraining::Joint;
};

struct SweepConfig {
    std::optional<MetricId> metric_a;
    std::optional<MetricId> metric_b;
    std::size_t points = 101;
    bool categories = true;
};

/// Resolved experiment configuration. Paths are absolute after loading.
struct ExperimentConfig {
    std::string name = "experiment";
    std::filesystem::path dataset;
    std::optional<std::filesystem::path> node_universe;
    /// Observed interval of the dataset; inferred from the first and last
    /// timestamps when absent.
    std::optional<Interval> data_interval;
    PeriodSchedule schedule{Interval(0, 1), Interval(1, 2), Interval(2, 3)};
    std::vector<MetricId> metrics = default_metrics();
    LearnerConfig learner;
    ClassesConfig classes;
    SweepConfig sweep;
    std::filesystem::path output_dir = "out";
    bool write_json = true;
    bool write_csv = true;

    /// Throws ConfigError when the configuration is inconsistent.
    void validate() const;
};

/// Parses the INI-style configuration. Relative paths resolve against
/// `base_dir`. Throws ConfigError on unknown keys or bad values.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);

/// Reads a config file. When `apply_env` is set, LSPRED_OUTPUT_DIR and
/// LSPRED_SEED override the output directory and the learner seed.
ExperimentConfig load_config(const std::filesystem::path& path, bool apply_env = true);

/// Canonical INI rendering of a resolved configuration.
std::string to_ini(const ExperimentConfig& config);

}  // namespace lspred
