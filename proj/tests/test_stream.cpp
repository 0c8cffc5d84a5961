#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lspred/errors.hpp"
#include "lspred/stream.hpp"

using namespace lspred;

namespace {

LinkStream parse(const std::string& text, LoadOptions opts = {}) {
    std::istringstream in(text);
    return load_stream(in, opts);
}

std::vector<double> times(const LinkStream& s) {
    std::vector<double> out;
    for (const auto& l : s.links()) out.push_back(l.t);
    return out;
}

}  // namespace

TEST(NodeTable, IntegerLabelsSortNumericallyBeforeText) {
    NodeTable t({"b", "10", "2", "a", "2"});
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t.label(NodeId{0}), "2");
    EXPECT_EQ(t.label(NodeId{1}), "10");
    EXPECT_EQ(t.label(NodeId{2}), "a");
    EXPECT_EQ(t.label(NodeId{3}), "b");
    EXPECT_FALSE(t.find("zz").has_value());
    EXPECT_THROW(t.at("zz"), ConfigError);
}

TEST(NodePair, CanonicalOrderAndSelfPairRejected) {
    const auto p = NodePair::of(NodeId{5}, NodeId{2});
    EXPECT_EQ(p.a(), NodeId{2});
    EXPECT_EQ(p.b(), NodeId{5});
    EXPECT_EQ(p, NodePair::of(NodeId{2}, NodeId{5}));
    EXPECT_TRUE(p.contains(NodeId{5}));
    EXPECT_FALSE(p.contains(NodeId{3}));
    EXPECT_THROW(NodePair::of(NodeId{1}, NodeId{1}), ConfigError);
}

TEST(Interval, RejectsInvertedAndNonFinite) {
    EXPECT_NO_THROW(Interval(3, 3));
    EXPECT_THROW(Interval(4, 3), ConfigError);
    EXPECT_THROW(Interval(0, std::numeric_limits<double>::infinity()), ConfigError);
    EXPECT_TRUE(Interval(0, 10).contains(10));
    EXPECT_DOUBLE_EQ(Interval(2, 7).length(), 5);
}

TEST(LoadStream, SingleLineMapsFields) {
    const auto s = parse("1 a b\n");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.links()[0].t, 1);
    EXPECT_EQ(s.links()[0].pair, NodePair::of(s.nodes().at("a"), s.nodes().at("b")));
}

TEST(LoadStream, SortsByTime) {
    const auto s = parse("2 a c\n1 a b\n");
    EXPECT_EQ(times(s), (std::vector<double>{1, 2}));
    EXPECT_EQ(s.links()[0].pair, fixtures::pair(s, "a", "b"));
}

TEST(LoadStream, SkipsCommentsAndBlankLines) {
    const auto s = parse("# header\n\n1 a b\n   \n# trailing\n3\tb c\n");
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.interval(), Interval(1, 3));
}

TEST(LoadStream, SelfLoopIsRejectedWithLine) {
    try {
        parse("1 a b\n2 a a\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.module(), "stream_core");
    }
}

TEST(LoadStream, MalformedLinesAreRejected) {
    EXPECT_THROW(parse("1 a\n"), ParseError);
    EXPECT_THROW(parse("1 a b c\n"), ParseError);
    EXPECT_THROW(parse("x a b\n"), ParseError);
    EXPECT_THROW(parse("1.5.2 a b\n"), ParseError);
    EXPECT_THROW(parse("nan a b\n"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("# only a comment\n"), ParseError);
}

TEST(LoadStream, ExplicitIntervalMustContainLinks) {
    LoadOptions opts;
    opts.interval = Interval(0, 5);
    EXPECT_NO_THROW(parse("1 a b\n5 a c\n", opts));
    EXPECT_THROW(parse("1 a b\n6 a c\n", opts), ConfigError);
}

TEST(LoadStream, UniverseAddsIsolatedNodes) {
    LoadOptions opts;
    opts.node_universe = {"z"};
    const auto s = parse("1 a b\n", opts);
    EXPECT_EQ(s.nodes().size(), 3u);
    EXPECT_TRUE(s.adjacency(s.nodes().at("z")).empty());
}

TEST(LoadStream, MissingFileIsAParseError) {
    EXPECT_THROW(load_stream_file("/nonexistent/links.txt"), ParseError);
}

TEST(Slice, FiltersByClosedWindow) {
    const auto s = fixtures::build(fixtures::s2());
    const auto w = slice(s, Interval(0, 5));
    EXPECT_EQ(times(w), (std::vector<double>{1, 2, 3, 4, 5}));
    EXPECT_EQ(w.interval(), Interval(0, 5));
}

TEST(Slice, FullWindowIsIdentity) {
    const auto s = fixtures::build(fixtures::s2());
    const auto w = slice(s, s.interval());
    EXPECT_EQ(times(w), times(s));
    EXPECT_EQ(w.activities(), s.activities());
}

TEST(Slice, DisjointWindowKeepsNodes) {
    const auto s = fixtures::build(fixtures::s2());
    const auto w = slice(s, Interval(100, 200));
    EXPECT_TRUE(w.empty());
    EXPECT_EQ(w.nodes().size(), s.nodes().size());
    EXPECT_EQ(w.node_table(), s.node_table());
}

TEST(Neighborhood, MatchesEnumeration) {
    const auto s = fixtures::build(fixtures::s1(), {"z"});
    const auto a = s.nodes().at("a");
    const auto b = s.nodes().at("b");
    const auto c = s.nodes().at("c");
    EXPECT_EQ(neighborhood(s, a), (std::vector<NodeId>{b, c}));
    EXPECT_EQ(neighborhood(s, c), (std::vector<NodeId>{a, b}));
    EXPECT_TRUE(neighborhood(s, s.nodes().at("z")).empty());
    EXPECT_TRUE(neighborhood(s, NodeId{999}).empty());
}

TEST(PairActivity, CountsLinks) {
    const auto s = fixtures::build(fixtures::s1(), {"z"});
    EXPECT_EQ(pair_activity(s, fixtures::pair(s, "a", "b")), 3u);
    EXPECT_EQ(pair_activity(s, fixtures::pair(s, "b", "c")), 1u);
    EXPECT_EQ(pair_activity(s, fixtures::pair(s, "a", "z")), 0u);
}

TEST(PairTimes, SortedTimestamps) {
    const auto s = fixtures::build(fixtures::s2());
    const auto ts = s.pair_times(fixtures::pair(s, "a", "b"));
    EXPECT_EQ(std::vector<double>(ts.begin(), ts.end()), (std::vector<double>{1, 4, 9}));
}

TEST(CandidatePairs, StarClosesThroughCenter) {
    const auto s = fixtures::build({0, 10, {{1, "a", "b"}, {2, "a", "c"}}});
    const PairSet expected{fixtures::pair(s, "a", "b"), fixtures::pair(s, "a", "c"), fixtures::pair(s, "b", "c")};
    EXPECT_EQ(candidate_pairs(s), expected);
}

TEST(CandidatePairs, TriangleAndSingleLink) {
    const auto s = fixtures::build(fixtures::s1());
    EXPECT_EQ(candidate_pairs(s).size(), 3u);
    const auto single = fixtures::build({0, 10, {{1, "a", "b"}}});
    EXPECT_EQ(candidate_pairs(single), PairSet{fixtures::pair(single, "a", "b")});
}

TEST(Histogram, BinsFollowGranularity) {
    const auto s = fixtures::build(fixtures::s2());
    using B = std::vector<HistogramBin>;
    EXPECT_EQ(activity_histogram(s, 5), (B{{0, 4}, {5, 3}}));
    EXPECT_EQ(activity_histogram(s, 10), (B{{0, 7}}));
    EXPECT_EQ(activity_histogram(s, 2), (B{{0, 1}, {2, 2}, {4, 2}, {6, 1}, {8, 1}}));
}

TEST(Histogram, LastBinIsClosedAndCountsSum) {
    const auto s = fixtures::build({0, 10, {{10, "a", "b"}, {0, "a", "b"}}});
    const auto bins = activity_histogram(s, 3);
    ASSERT_EQ(bins.size(), 4u);
    EXPECT_EQ(bins.back().count, 1u);
    EXPECT_EQ(bins.front().count, 1u);
}

TEST(Histogram, RejectsNonPositiveGranularity) {
    const auto s = fixtures::build(fixtures::s2());
    EXPECT_THROW(activity_histogram(s, 0), ConfigError);
    EXPECT_THROW(activity_histogram(s, -1), ConfigError);
}

TEST(MinPositiveGap, IgnoresTies) {
    const auto s = fixtures::build({0, 10, {{1, "a", "b"}, {1, "a", "c"}, {4, "b", "c"}, {6, "a", "b"}}});
    EXPECT_DOUBLE_EQ(s.min_positive_gap(), 2.0);
    const auto single = fixtures::build({0, 10, {{1, "a", "b"}}});
    EXPECT_DOUBLE_EQ(single.min_positive_gap(), 10.0);
}
