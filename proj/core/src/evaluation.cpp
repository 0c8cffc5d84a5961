#include "lspred/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "lspred/errors.hpp"

namespace lspred {

namespace {

constexpr const char* kModule = "evaluation";

Confusion pair_confusion(double predicted, double actual) noexcept {
    return {std::min(predicted, actual), std::max(predicted - actual, 0.0), std::max(actual - predicted, 0.0)};
}

// Walks the union of predicted and actual pairs in canonical order.
template <class Visit>
void merge_pairs(const ActivityPrediction& predicted, const PairCounts& actual, Visit&& visit) {
    auto p = predicted.counts.begin();
    auto a = actual.begin();
    while (p != predicted.counts.end() || a != actual.end()) {
        if (a == actual.end() || (p != predicted.counts.end() && p->first < a->first)) {
            visit(p->first, p->second, 0.0);
            ++p;
        } else if (p == predicted.counts.end() || a->first < p->first) {
            visit(a->first, 0.0, static_cast<double>(a->second));
            ++a;
        } else {
            visit(p->first, p->second, static_cast<double>(a->second));
            ++p;
            ++a;
        }
    }
}

void check_non_negative(const ActivityPrediction& predicted) {
    for (const auto& [pair, count] : predicted.counts) {
        if (!(count >= 0.0)) throw PipelineError(kModule, "negative predicted count");
    }
}

}  // namespace

Confusion confusion(const ActivityPrediction& predicted, const PairCounts& actual) {
    check_non_negative(predicted);
    Confusion total;
    merge_pairs(predicted, actual, [&](NodePair, double n, double n_actual) { total += pair_confusion(n, n_actual); });
    return total;
}

std::vector<Confusion> confusion_by_group(const ActivityPrediction& predicted, const PairCounts& actual,
                                          const PairLabeler& labeler, std::size_t groups) {
    check_non_negative(predicted);
    std::vector<Confusion> out(groups);
    merge_pairs(predicted, actual, [&](NodePair p, double n, double n_actual) {
        const std::size_t g = labeler(p);
        if (g >= groups) throw ConfigError(kModule, "pair labeler returned an out-of-range group");
        out[g] += pair_confusion(n, n_actual);
    });
    return out;
}

PrecisionRecall prf(const Confusion& c) noexcept {
    PrecisionRecall r;
    if (c.tp + c.fp > 0.0) r.precision = c.tp / (c.tp + c.fp);
    if (c.tp + c.fn > 0.0) r.recall = c.tp / (c.tp + c.fn);
    if (r.precision + r.recall > 0.0) r.f_score = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

EvaluationReport EvaluationReport::from(const Confusion& c) {
    EvaluationReport r;
    r.confusion = c;
    const auto s = prf(c);
    r.precision = s.precision;
    r.recall = s.recall;
    r.f_score = s.f_score;
    r.predicted_total = c.tp + c.fp;
    r.actual_total = c.tp + c.fn;
    return r;
}

const EvaluationReport* EvaluationReport::find(std::string_view label) const {
    for (const auto& [name, report] : breakdowns) {
        if (name == label) return &report;
    }
    return nullptr;
}

EvaluationReport evaluate(const ActivityPrediction& predicted, const PairCounts& actual,
                          std::span<const Breakdown> breakdowns) {
    auto report = EvaluationReport::from(confusion(predicted, actual));
    for (const Breakdown& b : breakdowns) {
        const auto parts = confusion_by_group(predicted, actual, b.labeler, b.labels.size());
        for (std::size_t g = 0; g < parts.size(); ++g) {
            report.breakdowns.emplace_back(b.name + ":" + b.labels[g], EvaluationReport::from(parts[g]));
        }
    }
    return report;
}

LinkCategory category_of(const PairCounts& observation_activity, NodePair pair) noexcept {
    auto it = observation_activity.find(pair);
    return it != observation_activity.end() && it->second > 0 ? LinkCategory::Recurrent : LinkCategory::New;
}

CategoryPartition categorize_pairs(const LinkStream& observation, const PairSet& pairs) {
    CategoryPartition out;
    for (NodePair p : pairs) {
        if (category_of(observation.activities(), p) == LinkCategory::Recurrent) {
            out.recurrent.push_back(p);
        } else {
            out.new_pairs.push_back(p);
        }
    }
    return out;
}

Breakdown category_breakdown(const PairCounts& observation_activity) {
    return Breakdown{"category", {"new", "recurrent"}, [&observation_activity](NodePair p) {
                         return static_cast<std::size_t>(category_of(observation_activity, p));
                     }};
}

double macro_f(std::span<const double> f_scores) {
    if (f_scores.empty()) throw ConfigError(kModule, "macro F needs at least one class");
    double inv = 0.0;
    for (double f : f_scores) {
        if (!(f > 0.0)) return 0.0;
        inv += 1.0 / f;
    }
    return static_cast<double>(f_scores.size()) / inv;
}

double macro_f(std::span<const EvaluationReport> reports) {
    std::vector<double> fs;
    fs.reserve(reports.size());
    for (const auto& r : reports) fs.push_back(r.f_score);
    return macro_f(fs);
}

RealizationSummary summarize_realizations(std::span<const EvaluationReport> reports) {
    RealizationSummary s;
    s.count = reports.size();
    if (reports.empty()) return s;
    const auto n = static_cast<double>(reports.size());
    for (const auto& r : reports) {
        s.mean_f += r.f_score;
        s.mean_precision += r.precision;
        s.mean_recall += r.recall;
        s.mean_confusion += r.confusion;
    }
    s.mean_f /= n;
    s.mean_precision /= n;
    s.mean_recall /= n;
    s.mean_confusion.tp /= n;
    s.mean_confusion.fp /= n;
    s.mean_confusion.fn /= n;
    double var = 0.0;
    for (const auto& r : reports) var += (r.f_score - s.mean_f) * (r.f_score - s.mean_f);
    s.std_f = std::sqrt(var / n);
    s.f_of_mean_confusion = prf(s.mean_confusion).f_score;
    return s;
}

}  // namespace lspred
