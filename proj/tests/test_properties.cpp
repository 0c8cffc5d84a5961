// Randomized checks of the library's invariants.

#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lspred/classes.hpp"
#include "lspred/evaluation.hpp"
#include "lspred/metrics.hpp"
#include "lspred/predictor.hpp"

using namespace lspred;

namespace {

PairMap random_map(std::mt19937_64& rng, std::size_t nodes, double zero_prob) {
    std::uniform_real_distribution<double> value(0.0, 10.0);
    std::bernoulli_distribution zero(zero_prob);
    PairMap out;
    for (std::uint32_t a = 0; a < nodes; ++a) {
        for (std::uint32_t b = a + 1; b < nodes; ++b) {
            if (!zero(rng)) out.emplace(NodePair::of(NodeId{a}, NodeId{b}), value(rng));
        }
    }
    return out;
}

PairCounts random_counts(std::mt19937_64& rng, std::size_t nodes) {
    std::uniform_int_distribution<int> count(0, 6);
    PairCounts out;
    for (std::uint32_t a = 0; a < nodes; ++a) {
        for (std::uint32_t b = a + 1; b < nodes; ++b) {
            if (const int c = count(rng); c > 0) out.emplace(NodePair::of(NodeId{a}, NodeId{b}), c);
        }
    }
    return out;
}

}  // namespace

TEST(Properties, ScoresAreFiniteNonNegativeAndNormalized) {
    std::mt19937_64 rng(1);
    const auto metrics = default_metrics();
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = fixtures::build(fixtures::random_stream(rng, 15, 120));
        for (const auto& t : score_all(s, metrics, candidate_pairs(s))) {
            double mx = 0;
            for (std::size_t i = 0; i < t.pairs.size(); ++i) {
                EXPECT_TRUE(std::isfinite(t.raw[i]));
                EXPECT_GE(t.raw[i], 0.0);
                EXPECT_GE(t.normalized[i], 0.0);
                EXPECT_LE(t.normalized[i], 1.0);
                mx = std::max(mx, t.normalized[i]);
            }
            EXPECT_TRUE(mx == 1.0 || (mx == 0.0 && t.normalization_max == 0.0)) << t.metric.name();
        }
    }
}

TEST(Properties, StructuralMetricsAreSymmetricAndTimeBlind) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        auto raw = fixtures::random_stream(rng, 10, 60);
        const auto s = fixtures::build(raw);
        // Shuffling timestamps keeps every structural score.
        std::vector<double> ts;
        for (const auto& l : raw.links) ts.push_back(l.t);
        std::shuffle(ts.begin(), ts.end(), rng);
        for (std::size_t i = 0; i < ts.size(); ++i) raw.links[i].t = ts[i];
        const auto shuffled = fixtures::build(raw);
        for (const auto& p : candidate_pairs(s)) {
            for (auto kind : {MetricKind::CN, MetricKind::JI, MetricKind::SI, MetricKind::AA, MetricKind::RA}) {
                const auto k = fixtures::key(s, p);
                EXPECT_EQ(structural_score(kind, s, p), structural_score(kind, shuffled, fixtures::pair(shuffled, k.first, k.second)));
            }
        }
    }
}

TEST(Properties, CandidatesMatchOracleAndCoverNonZeroScores) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto raw = fixtures::random_stream(rng, 12, 50);
        const auto s = fixtures::build(raw);
        std::set<oracle::Key> got;
        for (const auto& p : candidate_pairs(s)) got.insert(fixtures::key(s, p));
        EXPECT_EQ(got, oracle::candidates(raw));
    }
}

TEST(Properties, HistogramMatchesOracle) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> g(1, 300);
    for (int trial = 0; trial < 20; ++trial) {
        const auto raw = fixtures::random_stream(rng);
        const double gran = g(rng);
        const auto bins = activity_histogram(fixtures::build(raw), gran);
        const auto expected = oracle::histogram(raw, gran);
        ASSERT_EQ(bins.size(), expected.size());
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < bins.size(); ++i) {
            EXPECT_EQ(bins[i].start, expected[i].first);
            EXPECT_EQ(static_cast<double>(bins[i].count), expected[i].second);
            total += bins[i].count;
        }
        EXPECT_EQ(total, raw.links.size());
    }
}

TEST(Properties, ConfusionIdentities) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        ActivityPrediction p;
        p.counts = random_map(rng, 8, 0.4);
        const auto a = random_counts(rng, 8);
        const auto c = confusion(p, a);
        double sp = 0;
        double sa = 0;
        for (const auto& [_, v] : p.counts) sp += v;
        for (const auto& [_, v] : a) sa += static_cast<double>(v);
        EXPECT_NEAR(c.tp + c.fp, sp, 1e-9 * std::max(1.0, sp));
        EXPECT_NEAR(c.tp + c.fn, sa, 1e-9 * std::max(1.0, sa));
        const auto r = prf(c);
        EXPECT_GE(r.f_score, 0.0);
        EXPECT_LE(r.f_score, 1.0);
    }
}

TEST(Properties, AllocationConservesAndIsScaleInvariant) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    std::uniform_real_distribution<double> budget(0.0, 1e4);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_map(rng, 9, 0.3);
        if (f.empty()) continue;
        f.begin()->second += 1.0;
        const double n = budget(rng);
        const auto out = allocate(n, f);
        double sum = 0;
        for (const auto& [_, v] : out.counts) sum += v;
        EXPECT_NEAR(sum, n, 1e-6 * std::max(1.0, n));
        const double c = scale(rng);
        PairMap scaled = f;
        for (auto& [_, v] : scaled) v *= c;
        const auto out2 = allocate(n, scaled);
        for (const auto& [k, v] : out.counts) EXPECT_NEAR(out2.counts.at(k), v, 1e-9 * std::max(1.0, v));
    }
}

TEST(Properties, ClassesFormDisjointCover) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> kd(1, 6);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = fixtures::build(fixtures::random_stream(rng, 15, 150));
        const auto pairs = candidate_pairs(s);
        const ClassPartition part(static_cast<std::uint64_t>(kd(rng)), s, pairs);
        PairSet all;
        for (auto c : {PairClass::C1, PairClass::C2, PairClass::C3}) {
            const auto m = part.members(c);
            EXPECT_EQ(m.size(), part.count(c));
            all.insert(all.end(), m.begin(), m.end());
        }
        std::sort(all.begin(), all.end());
        EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
        EXPECT_EQ(all, pairs);
    }
}

TEST(Properties, UniformClassWeightsAreBitIdentical) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    const auto metrics = default_metrics();
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = fixtures::build(fixtures::random_stream(rng, 12, 100));
        const auto pairs = candidate_pairs(s);
        const auto tables = score_all(s, metrics, pairs);
        std::vector<double> alphas(metrics.size());
        for (double& a : alphas) a = w(rng);
        const WeightVector weights(metrics, alphas);
        const ClassPartition part(3, s, pairs);
        const auto classed = classed_predict({weights, weights, weights}, part, tables, 57.3);
        const auto plain = allocate(57.3, prediction_index(weights, tables));
        EXPECT_EQ(classed.counts, plain.counts);
    }
}

TEST(Properties, DecomposabilityUnderRandomPartitions) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        ActivityPrediction p;
        p.counts = random_map(rng, 7, 0.3);
        const auto a = random_counts(rng, 7);
        const auto whole = confusion(p, a);
        const std::size_t groups = 1 + rng() % 4;
        const auto salt = rng();
        const auto parts = confusion_by_group(
            p, a, [&](NodePair q) { return (q.a().value * 31u + q.b().value + salt) % groups; }, groups);
        Confusion sum;
        for (const auto& c : parts) sum += c;
        EXPECT_NEAR(sum.tp, whole.tp, 1e-9);
        EXPECT_NEAR(sum.fp, whole.fp, 1e-9);
        EXPECT_NEAR(sum.fn, whole.fn, 1e-9);
    }
}
