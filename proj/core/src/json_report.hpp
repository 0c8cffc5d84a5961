#pragma once

#include <nlohmann/json.hpp>

#include "lspred/evaluation.hpp"

namespace lspred::detail {

inline nlohmann::json to_json(const EvaluationReport& r) {
    nlohmann::json j{
        {"confusion", {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"fn", r.confusion.fn}}},
        {"precision", r.precision},
        {"recall", r.recall},
        {"f_score", r.f_score},
        {"predicted_total", r.predicted_total},
        {"actual_total", r.actual_total},
    };
    if (!r.breakdowns.empty()) {
        nlohmann::json nested = nlohmann::json::object();
        for (const auto& [label, sub] : r.breakdowns) nested[label] = to_json(sub);
        j["breakdowns"] = std::move(nested);
    }
    return j;
}

}  // namespace lspred::detail
