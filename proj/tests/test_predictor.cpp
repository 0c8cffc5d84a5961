#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lspred/errors.hpp"
#include "lspred/predictor.hpp"

using namespace lspred;

namespace {

const MetricId kCN = MetricId::parse("CN");
const MetricId kPAE = MetricId::parse("PAE");

ScoreTable table(MetricId m, PairSet pairs, std::vector<double> normalized) {
    ScoreTable t{m, std::move(pairs), normalized, normalized, 1.0};
    return t;
}

PairSet three() {
    return {NodePair::of(NodeId{0}, NodeId{1}), NodePair::of(NodeId{0}, NodeId{2}), NodePair::of(NodeId{1}, NodeId{2})};
}

PairMap index_of(std::vector<double> f) {
    PairMap out;
    const auto pairs = three();
    for (std::size_t i = 0; i < f.size(); ++i) out.emplace(pairs[i], f[i]);
    return out;
}

}  // namespace

TEST(WeightVector, Validation) {
    EXPECT_THROW(WeightVector({kCN}, {1, 2}), ConfigError);
    EXPECT_THROW(WeightVector({kCN, kCN}, {1, 2}), ConfigError);
    EXPECT_THROW(WeightVector({kCN}, {-1}), ConfigError);
    EXPECT_THROW(WeightVector({kCN}, {std::nan("")}), ConfigError);
    WeightVector w({kCN}, {0.5});
    EXPECT_EQ(w.get(kCN), 0.5);
    EXPECT_EQ(w.get(kPAE), 0.0);
    w.set(kPAE, 2);
    EXPECT_EQ(w.size(), 2u);
    EXPECT_THROW(w.set(kPAE, -0.1), ConfigError);
    EXPECT_TRUE(w.usable());
    EXPECT_FALSE(WeightVector({kCN}, {0}).usable());
    EXPECT_EQ(WeightVector({kCN, kPAE}, {0.5, 2}).to_string(), "CN=0.5;PAE=2");
}

TEST(PredictionIndex, IdentityCombination) {
    const std::vector<ScoreTable> tables{table(kPAE, three(), {1, 0.5, 0.25})};
    const auto f = prediction_index(WeightVector({kPAE}, {1}), tables);
    EXPECT_EQ(f, index_of({1, 0.5, 0.25}));
}

TEST(PredictionIndex, WeightedSum) {
    const std::vector<ScoreTable> tables{table(kPAE, three(), {1.0, 0, 0}), table(kCN, three(), {0.4, 0, 0})};
    const auto f = prediction_index(WeightVector({kPAE, kCN}, {0.5, 0.5}), tables);
    EXPECT_NEAR(f.at(three()[0]), 0.7, 1e-12);
}

TEST(PredictionIndex, ZeroWeightsGiveZeroIndex) {
    const std::vector<ScoreTable> tables{table(kPAE, three(), {1, 0.5, 0.25})};
    for (const auto& [p, v] : prediction_index(WeightVector({kPAE}, {0}), tables)) EXPECT_EQ(v, 0.0);
}

TEST(PredictionIndex, MissingTableForWeightedMetric) {
    const std::vector<ScoreTable> tables{table(kPAE, three(), {1, 0.5, 0.25})};
    EXPECT_THROW(prediction_index(WeightVector({kCN}, {1}), tables), ConfigError);
    EXPECT_NO_THROW(prediction_index(WeightVector({kCN, kPAE}, {0, 1}), tables));
}

TEST(PredictionIndex, UnionOfDifferentPairSets) {
    const PairSet p1{three()[0]};
    const PairSet p2{three()[1]};
    const std::vector<ScoreTable> tables{table(kPAE, p1, {1}), table(kCN, p2, {1})};
    const auto f = prediction_index(WeightVector({kPAE, kCN}, {2, 3}), tables);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f.at(three()[0]), 2.0);
    EXPECT_EQ(f.at(three()[1]), 3.0);
}

TEST(Extrapolate, LinearScaling) {
    EXPECT_DOUBLE_EQ(extrapolate_total(100, 7200, 3600), 50.0);
    EXPECT_DOUBLE_EQ(extrapolate_total(42, 10, 10), 42.0);
    const auto s2 = fixtures::build(fixtures::s2());
    EXPECT_DOUBLE_EQ(extrapolate_total(s2, Interval(10, 15)), 3.5);
    EXPECT_THROW(extrapolate_total(3, 0, 10), PipelineError);
    const auto flat = fixtures::build({5, 5, {{5, "a", "b"}}});
    EXPECT_THROW(extrapolate_total(flat, Interval(5, 10)), PipelineError);
}

TEST(Allocate, Proportional) {
    const auto out = allocate(8, index_of({2, 1, 1}));
    EXPECT_EQ(out.total, 8.0);
    EXPECT_EQ(out.counts, index_of({4, 2, 2}));
}

TEST(Allocate, ZeroBudget) {
    const auto out = allocate(0, index_of({2, 1, 1}));
    for (const auto& [p, c] : out.counts) EXPECT_EQ(c, 0.0);
    EXPECT_NO_THROW(allocate(0, index_of({0, 0, 0})));
}

TEST(Allocate, SinglePairTakesAll) {
    const auto out = allocate(5, index_of({3}));
    EXPECT_EQ(out.counts, index_of({5}));
}

TEST(Allocate, DegenerateAndInvalidInputs) {
    EXPECT_THROW(allocate(5, index_of({0, 0, 0})), DegenerateIndexError);
    EXPECT_THROW(allocate(5, PairMap{}), DegenerateIndexError);
    EXPECT_THROW(allocate(-1, index_of({1})), PipelineError);
    EXPECT_THROW(allocate(5, index_of({1, -1})), PipelineError);
    try {
        allocate(5, index_of({0}));
    } catch (const DegenerateIndexError& e) {
        EXPECT_EQ(e.module(), "predictor");
    }
}
