#include "lspred/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lspred/errors.hpp"

namespace lspred {

namespace {
constexpr const char* kModule = "predictor";
}

WeightVector::WeightVector(std::vector<MetricId> metrics, std::vector<double> alphas) {
    if (metrics.size() != alphas.size()) throw ConfigError(kModule, "weights/metrics size mismatch");
    for (std::size_t i = 0; i < metrics.size(); ++i) set(metrics[i], alphas[i]);
    if (metrics_.size() != metrics.size()) throw ConfigError(kModule, "duplicate metric in weight vector");
}

void WeightVector::set(const MetricId& metric, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw ConfigError(kModule, "weight for " + metric.name() + " must be finite and non-negative");
    }
    auto it = std::find(metrics_.begin(), metrics_.end(), metric);
    if (it != metrics_.end()) {
        alphas_[static_cast<std::size_t>(it - metrics_.begin())] = alpha;
        return;
    }
    metrics_.push_back(metric);
    alphas_.push_back(alpha);
}

double WeightVector::get(const MetricId& metric) const noexcept {
    auto it = std::find(metrics_.begin(), metrics_.end(), metric);
    return it == metrics_.end() ? 0.0 : alphas_[static_cast<std::size_t>(it - metrics_.begin())];
}

bool WeightVector::usable() const noexcept {
    return std::any_of(alphas_.begin(), alphas_.end(), [](double a) { return a > 0.0; });
}

std::string WeightVector::to_string() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < metrics_.size(); ++i) {
        if (i) os << ';';
        os << metrics_[i].name() << '=' << alphas_[i];
    }
    return os.str();
}

PairMap prediction_index(const WeightVector& weights, std::span<const ScoreTable> tables) {
    std::vector<std::pair<double, const ScoreTable*>> used;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const MetricId& m = weights.metrics()[i];
        auto it = std::find_if(tables.begin(), tables.end(), [&](const ScoreTable& t) { return t.metric == m; });
        if (it == tables.end()) {
            if (weights.alphas()[i] == 0.0) continue;
            throw ConfigError(kModule, "no score table for weighted metric " + m.name());
        }
        used.emplace_back(weights.alphas()[i], &*it);
    }

    // Tables usually share one pair set; then the index is a plain weighted sum.
    const PairSet* shared = tables.empty() ? nullptr : &tables.front().pairs;
    for (const auto& t : tables) {
        if (shared && t.pairs != *shared) {
            shared = nullptr;
            break;
        }
    }

    std::vector<std::pair<NodePair, double>> seq;
    if (shared) {
        seq.reserve(shared->size());
        for (std::size_t i = 0; i < shared->size(); ++i) {
            double f = 0.0;
            for (const auto& [alpha, table] : used) f += alpha * table->normalized[i];
            seq.emplace_back((*shared)[i], f);
        }
    } else {
        PairSet all;
        for (const auto& t : tables) all.insert(all.end(), t.pairs.begin(), t.pairs.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        seq.reserve(all.size());
        for (NodePair p : all) {
            double f = 0.0;
            for (const auto& [alpha, table] : used) f += alpha * table->normalized_at(p);
            seq.emplace_back(p, f);
        }
    }
    PairMap out;
    out.insert(boost::container::ordered_unique_range, std::make_move_iterator(seq.begin()),
        std::make_move_iterator(seq.end()));
    return out;
}

double extrapolate_total(std::size_t link_count, double input_length, double window_length) {
    if (!(input_length > 0.0)) throw PipelineError(kModule, "cannot extrapolate from a zero-length input period");
    if (!(window_length >= 0.0)) throw PipelineError(kModule, "negative prediction window");
    return static_cast<double>(link_count) * window_length / input_length;
}

double extrapolate_total(const LinkStream& input, const Interval& prediction_window) {
    return extrapolate_total(input.size(), input.interval().length(), prediction_window.length());
}

ActivityPrediction allocate(double total, const PairMap& index) {
    if (!(total >= 0.0) || !std::isfinite(total)) throw PipelineError(kModule, "link budget must be non-negative");
    double sum = 0.0;
    for (const auto& [pair, f] : index) {
        if (!(f >= 0.0)) throw PipelineError(kModule, "prediction index must be non-negative");
        sum += f;
    }
    ActivityPrediction out;
    out.total = total;
    if (total > 0.0 && !(sum > 0.0)) throw DegenerateIndexError("prediction index sums to zero");

    std::vector<std::pair<NodePair, double>> seq;
    seq.reserve(index.size());
    for (const auto& [pair, f] : index) seq.emplace_back(pair, total > 0.0 ? total * f / sum : 0.0);
    out.counts.insert(boost::container::ordered_unique_range, std::make_move_iterator(seq.begin()),
        std::make_move_iterator(seq.end()));
    return out;
}

}  // namespace lspred
