#include "lspred/sweep.hpp"

#include <algorithm>

#include "lspred/errors.hpp"
#include "lspred/predictor.hpp"

namespace lspred {

namespace {
constexpr const char* kModule = "sweep";
}

void SweepSpec::validate() const {
    if (alphas.empty()) throw ConfigError(kModule, "sweep needs at least one alpha");
    if (!std::is_sorted(alphas.begin(), alphas.end())) throw ConfigError(kModule, "alphas must be sorted");
    if (alphas.front() < 0.0 || alphas.back() > 1.0) throw ConfigError(kModule, "alphas must lie in [0,1]");
    if (metric_a == metric_b) throw ConfigError(kModule, "sweep needs two distinct metrics");
}

std::vector<double> SweepSpec::grid(std::size_t points) {
    if (points < 2) return {0.0};
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) out[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const LinkStream& observation, const LinkStream& target,
                                double total) {
    spec.validate();
    const PairSet pairs = candidate_pairs(observation);
    const std::vector<MetricId> metrics{spec.metric_a, spec.metric_b};
    const auto tables = score_all(observation, metrics, pairs);
    const PairCounts& actual = target.activities();
    const PairCounts& observed = observation.activities();
    const auto labeler = [&observed](NodePair p) { return static_cast<std::size_t>(category_of(observed, p)); };

    std::vector<SweepRow> rows;
    rows.reserve(spec.alphas.size());
    for (double alpha : spec.alphas) {
        SweepRow row;
        row.alpha = alpha;
        WeightVector w;
        w.set(spec.metric_a, alpha);
        w.set(spec.metric_b, 1.0 - alpha);
        try {
            const auto prediction = allocate(total, prediction_index(w, tables));
            row.all = confusion(prediction, actual);
            row.f_all = prf(row.all).f_score;
            if (spec.categories) {
                const auto parts = confusion_by_group(prediction, actual, labeler, 2);
                row.new_links = parts[static_cast<std::size_t>(LinkCategory::New)];
                row.recurrent_links = parts[static_cast<std::size_t>(LinkCategory::Recurrent)];
                row.f_new = prf(row.new_links).f_score;
                row.f_recurrent = prf(row.recurrent_links).f_score;
            }
        } catch (const DegenerateIndexError&) {
            row.degenerate = true;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lspred
