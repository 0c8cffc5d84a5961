#include "lspred/classes.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "lspred/errors.hpp"

namespace lspred {

namespace {

constexpr const char* kModule = "classes";

constexpr std::array<PairClass, kClassCount> kAllClasses{PairClass::C1, PairClass::C2, PairClass::C3};

std::size_t idx(PairClass c) noexcept { return static_cast<std::size_t>(c); }

ClassWeights uniform_weights(const WeightVector& w) { return {w, w, w}; }

// Class weights from a flat vector holding one block of `m` weights per
// class listed in `active`; the other classes keep `fallback`.
ClassWeights unpack(std::span<const double> flat, const std::vector<PairClass>& active,
                    const std::vector<MetricId>& metrics, const ClassWeights& fallback) {
    ClassWeights out = fallback;
    const std::size_t m = metrics.size();
    for (std::size_t b = 0; b < active.size(); ++b) {
        out[idx(active[b])] = WeightVector(metrics, std::vector<double>(flat.begin() + static_cast<long>(b * m),
                                                                        flat.begin() + static_cast<long>((b + 1) * m)));
    }
    return out;
}

void fill_summary(ClassedTrainingResult& result, const std::vector<MetricId>& metrics) {
    for (PairClass c : kAllClasses) {
        const std::size_t m = metrics.size();
        std::vector<double> mean(m, 0.0), sd(m, 0.0);
        const auto n = static_cast<double>(result.realizations.size());
        for (const auto& r : result.realizations) {
            for (std::size_t i = 0; i < m; ++i) mean[i] += r[idx(c)].get(metrics[i]) / n;
        }
        for (const auto& r : result.realizations) {
            for (std::size_t i = 0; i < m; ++i) {
                const double d = r[idx(c)].get(metrics[i]) - mean[i];
                sd[i] += d * d / n;
            }
        }
        for (double& v : sd) v = std::sqrt(v);
        result.mean[idx(c)] = WeightVector(metrics, mean);
        result.stddev[idx(c)] = sd;
    }
}

}  // namespace

std::string_view class_name(PairClass c) noexcept {
    switch (c) {
        case PairClass::C1:
            return "C1";
        case PairClass::C2:
            return "C2";
        case PairClass::C3:
            return "C3";
    }
    return "?";
}

PairClass classify(std::uint64_t activity, std::uint64_t k) noexcept {
    if (activity == 0) return PairClass::C1;
    return activity <= k ? PairClass::C2 : PairClass::C3;
}

ClassPartition::ClassPartition(std::uint64_t k, const LinkStream& reference, const PairSet& pairs)
    : k_(k), reference_(reference.activities()) {
    if (k < 1) throw ConfigError(kModule, "class threshold k must be >= 1");
    std::vector<std::pair<NodePair, PairClass>> seq;
    seq.reserve(pairs.size());
    for (NodePair p : pairs) {
        const PairClass c = classify(pair_activity(reference, p), k);
        seq.emplace_back(p, c);
        ++counts_[idx(c)];
    }
    assignment_.insert(boost::container::ordered_unique_range, std::make_move_iterator(seq.begin()),
        std::make_move_iterator(seq.end()));
}

PairClass ClassPartition::of(NodePair p) const noexcept {
    auto it = assignment_.find(p);
    if (it != assignment_.end()) return it->second;
    auto ref = reference_.find(p);
    return classify(ref == reference_.end() ? 0 : ref->second, k_);
}

PairSet ClassPartition::members(PairClass c) const {
    PairSet out;
    for (const auto& [p, cls] : assignment_) {
        if (cls == c) out.push_back(p);
    }
    return out;
}

Breakdown ClassPartition::breakdown() const {
    return Breakdown{"class", {"C1", "C2", "C3"}, [this](NodePair p) { return idx(of(p)); }};
}

ClassPartition assign_classes(const LinkStream& reference, const PairSet& pairs, std::uint64_t k) {
    return ClassPartition(k, reference, pairs);
}

// ---------------------------------------------------------------------------
// Prediction

PairMap classed_index(const ClassWeights& weights, const ClassPartition& partition,
                      std::span<const ScoreTable> tables) {
    std::array<PairMap, kClassCount> per_class;
    for (PairClass c : kAllClasses) per_class[idx(c)] = prediction_index(weights[idx(c)], tables);

    // All three maps cover the same union of pairs.
    const PairMap& keys = per_class[0];
    std::vector<std::pair<NodePair, double>> seq;
    seq.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const NodePair p = (keys.begin() + static_cast<long>(i))->first;
        const auto c = idx(partition.of(p));
        seq.emplace_back(p, (per_class[c].begin() + static_cast<long>(i))->second);
    }
    PairMap out;
    out.insert(boost::container::ordered_unique_range, std::make_move_iterator(seq.begin()),
        std::make_move_iterator(seq.end()));
    return out;
}

ActivityPrediction classed_predict(const ClassWeights& weights, const ClassPartition& partition,
                                   std::span<const ScoreTable> tables, double total) {
    const PairMap index = classed_index(weights, partition, tables);
    std::array<double, kClassCount> sums{};
    for (const auto& [p, f] : index) sums[idx(partition.of(p))] += f;
    for (PairClass c : kAllClasses) {
        if (partition.count(c) > 0 && !(sums[idx(c)] > 0.0)) {
            spdlog::warn("class {} has an all-zero prediction index and receives no links", class_name(c));
        }
    }
    return allocate(total, index);
}

ActivityPrediction classed_predict(const LinkStream& observation, const ClassWeights& weights, std::uint64_t k,
                                   std::span<const MetricId> metrics, double total) {
    const PairSet pairs = candidate_pairs(observation);
    const auto tables = score_all(observation, metrics, pairs);
    const ClassPartition partition(k, observation, pairs);
    return classed_predict(weights, partition, tables, total);
}

// ---------------------------------------------------------------------------
// Objective

ClassedObjective::ClassedObjective(const TrainingProblem& problem, const LinkStream& observation, std::uint64_t k)
    : problem_(problem), partition_(k, observation, problem.pairs()) {
    for (PairClass c : kAllClasses) populated_[idx(c)] = partition_.count(c) > 0;
    for (const auto& [p, count] : problem.actual()) {
        if (count > 0) evaluable_[idx(partition_.of(p))] = true;
    }
    for (PairClass c : kAllClasses) evaluable_[idx(c)] = evaluable_[idx(c)] && populated_[idx(c)];
}

std::array<Confusion, kClassCount> ClassedObjective::per_class(const ActivityPrediction& prediction) const {
    const auto groups = confusion_by_group(prediction, problem_.actual(),
                                           [this](NodePair p) { return idx(partition_.of(p)); }, kClassCount);
    return {groups[0], groups[1], groups[2]};
}

double ClassedObjective::macro(const ActivityPrediction& prediction) const {
    const auto parts = per_class(prediction);
    std::vector<double> fs;
    for (PairClass c : kAllClasses) {
        if (evaluable_[idx(c)]) fs.push_back(prf(parts[idx(c)]).f_score);
    }
    return fs.empty() ? 0.0 : macro_f(fs);
}

double ClassedObjective::operator()(const ClassWeights& weights) const {
    try {
        return macro(allocate(problem_.budget(), classed_index(weights, partition_, problem_.tables())));
    } catch (const DegenerateIndexError&) {
        return 0.0;
    }
}

double ClassedObjective::operator()(const WeightVector& weights) const {
    try {
        return macro(problem_.predict(weights));
    } catch (const DegenerateIndexError&) {
        return 0.0;
    }
}

double ClassedObjective::class_f(const ClassWeights& weights, PairClass c) const {
    try {
        const auto prediction = allocate(problem_.budget(), classed_index(weights, partition_, problem_.tables()));
        return prf(per_class(prediction)[idx(c)]).f_score;
    } catch (const DegenerateIndexError&) {
        return 0.0;
    }
}

double classed_objective(const ClassWeights& weights, const LinkStream& observation, const LinkStream& target,
                         std::uint64_t k) {
    std::vector<MetricId> metrics;
    for (const auto& w : weights) {
        for (const auto& m : w.metrics()) {
            if (std::find(metrics.begin(), metrics.end(), m) == metrics.end()) metrics.push_back(m);
        }
    }
    const TrainingProblem problem(observation, target, metrics);
    return ClassedObjective(problem, observation, k)(weights);
}

// ---------------------------------------------------------------------------
// Training

ClassedTrainingResult classed_train(const TrainingProblem& problem, const LinkStream& observation, std::uint64_t k,
                                    const LearnerConfig& config, ClassTraining mode) {
    const ClassedObjective objective(problem, observation, k);
    const auto& metrics = problem.metrics();

    ClassedTrainingResult result;
    std::vector<PairClass> active;
    for (PairClass c : kAllClasses) {
        result.populated[idx(c)] = objective.populated(c);
        if (objective.populated(c)) {
            active.push_back(c);
        } else {
            spdlog::info("class {} is empty on the training stream; it uses the unclassed weights", class_name(c));
        }
    }
    if (active.empty()) throw PipelineError(kModule, "no candidate pairs to train on");

    ClassWeights fallback;
    if (active.size() < kClassCount || mode == ClassTraining::Independent) {
        result.overall = train(problem, config);
        fallback = uniform_weights(result.overall->best);
    } else {
        fallback = uniform_weights(WeightVector(metrics, std::vector<double>(metrics.size(), 0.0)));
    }

    if (mode == ClassTraining::Joint) {
        auto opt = optimize(
            config, [&](std::span<const double> a) { return objective(unpack(a, active, metrics, fallback)); },
            metrics.size() * active.size());
        result.best = unpack(opt.best, active, metrics, fallback);
        for (const auto& r : opt.restarts) result.realizations.push_back(unpack(r.alphas, active, metrics, fallback));
        result.optimizations.push_back(std::move(opt));
    } else {
        result.best = fallback;
        result.realizations.assign(static_cast<std::size_t>(config.restarts), fallback);
        for (PairClass c : active) {
            if (!objective.evaluable(c)) continue;
            auto opt = optimize(
                config,
                [&](std::span<const double> a) {
                    return objective.class_f(unpack(a, {c}, metrics, fallback), c);
                },
                metrics.size());
            result.best[idx(c)] = WeightVector(metrics, opt.best);
            for (std::size_t r = 0; r < opt.restarts.size(); ++r) {
                result.realizations[r][idx(c)] = WeightVector(metrics, opt.restarts[r].alphas);
            }
            result.optimizations.push_back(std::move(opt));
        }
    }
    result.best_value = objective(result.best);
    fill_summary(result, metrics);
    return result;
}

TrainingResult train_macro(const TrainingProblem& problem, const LinkStream& observation, std::uint64_t k,
                           const LearnerConfig& config) {
    const ClassedObjective objective(problem, observation, k);
    auto opt = optimize(
        config, [&](std::span<const double> a) { return objective(problem.weights(a)); },
        problem.metrics().size());
    return make_training_result(problem.metrics(), std::move(opt));
}

}  // namespace lspred
