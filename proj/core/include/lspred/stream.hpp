#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/flat_map.hpp>

namespace lspred {

using Timestamp = double;

/// Dense index of a node inside a NodeTable. Ordering follows the table's
/// label order, so canonical pairs are stable across runs.
struct NodeId {
    std::uint32_t value = 0;

    auto operator<=>(const NodeId&) const = default;
};

/// Unordered pair of distinct nodes, stored with a < b.
class NodePair {
public:
    /// Throws ConfigError when u == v.
    static NodePair of(NodeId u, NodeId v);

    NodeId a() const noexcept { return a_; }
    NodeId b() const noexcept { return b_; }
    bool contains(NodeId n) const noexcept { return n == a_ || n == b_; }

    auto operator<=>(const NodePair&) const = default;

private:
    NodePair(NodeId a, NodeId b) : a_(a), b_(b) {}

    NodeId a_;
    NodeId b_;
};

/// Closed time interval [start, end]. A zero-length interval is legal; an
/// inverted one is not.
class Interval {
public:
    Interval(Timestamp start, Timestamp end);

    Timestamp start() const noexcept { return start_; }
    Timestamp end() const noexcept { return end_; }
    double length() const noexcept { return end_ - start_; }
    bool contains(Timestamp t) const noexcept { return start_ <= t && t <= end_; }

    bool operator==(const Interval&) const = default;

private:
    Timestamp start_;
    Timestamp end_;
};

struct Link {
    Timestamp t;
    NodePair pair;
};

/// Sorted, de-duplicated set of pairs.
using PairSet = std::vector<NodePair>;
/// Per-pair link counts, keyed in canonical pair order.
using PairCounts = boost::container::flat_map<NodePair, std::uint64_t>;

/// Interned node labels. Labels that parse as integers sort numerically and
/// before all other labels; the rest sort lexicographically.
class NodeTable {
public:
    explicit NodeTable(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(NodeId id) const { return labels_.at(id.value); }
    std::optional<NodeId> find(std::string_view label) const;
    /// Throws ConfigError for unknown labels.
    NodeId at(std::string_view label) const;

    static bool label_less(std::string_view x, std::string_view y);

private:
    std::vector<std::string> labels_;
};

struct Neighbor {
    NodeId node;
    std::uint64_t activity;  ///< links between the owner and this neighbor
};

/// Immutable link stream L = (T, V, E). Links are kept sorted by time and
/// indexed by node (adjacency with pair activities) and by pair (timestamps).
class LinkStream {
public:
    /// Sorts `links` by time. Throws ConfigError if a link falls outside
    /// `interval` or references a node outside `nodes`.
    LinkStream(std::shared_ptr<const NodeTable> nodes, Interval interval, std::vector<Link> links);

    const Interval& interval() const noexcept { return interval_; }
    const NodeTable& nodes() const noexcept { return *nodes_; }
    const std::shared_ptr<const NodeTable>& node_table() const noexcept { return nodes_; }
    std::span<const Link> links() const noexcept { return links_; }
    std::size_t size() const noexcept { return links_.size(); }
    bool empty() const noexcept { return links_.empty(); }

    /// Neighbors of `n` sorted by id; empty for ids outside the table.
    std::span<const Neighbor> adjacency(NodeId n) const noexcept;
    /// Sorted timestamps of the links on `p`.
    std::span<const Timestamp> pair_times(NodePair p) const noexcept;
    const PairCounts& activities() const noexcept { return activity_; }

    /// Smallest positive gap between distinct timestamps, or the interval
    /// length when there is none.
    double min_positive_gap() const noexcept { return min_gap_; }

    /// Convenience for tests and tools: builds the node table from the
    /// labels present in `links` plus `universe`.
    struct LabeledLink {
        Timestamp t;
        std::string u;
        std::string v;
    };
    static LinkStream from_labeled(const std::vector<LabeledLink>& links,
                                   std::optional<Interval> interval = std::nullopt,
                                   const std::vector<std::string>& universe = {});

private:
    std::shared_ptr<const NodeTable> nodes_;
    Interval interval_;
    std::vector<Link> links_;
    std::vector<std::vector<Neighbor>> adjacency_;
    boost::container::flat_map<NodePair, std::vector<Timestamp>> times_;
    PairCounts activity_;
    double min_gap_ = 0.0;
};

struct LoadOptions {
    std::optional<Interval> interval;
    std::vector<std::string> node_universe;
};

/// Parses `t u v` lines. Blank lines and lines starting with '#' are skipped.
LinkStream load_stream(std::istream& in, const LoadOptions& options = {});
LinkStream load_stream_file(const std::filesystem::path& path, const LoadOptions& options = {});
/// One node label per line; '#' comments and blank lines skipped.
std::vector<std::string> load_node_universe(const std::filesystem::path& path);

/// Links with window.start <= t <= window.end. The node table is shared.
LinkStream slice(const LinkStream& stream, const Interval& window);

std::vector<NodeId> neighborhood(const LinkStream& stream, NodeId node);
std::uint64_t pair_activity(const LinkStream& stream, NodePair pair);

/// Pairs with at least one link plus pairs with at least one common
/// neighbor. Every implemented metric is zero outside this set.
PairSet candidate_pairs(const LinkStream& stream);

struct HistogramBin {
    Timestamp start;
    std::uint64_t count;

    bool operator==(const HistogramBin&) const = default;
};

/// Bins [start + i*g, start + (i+1)*g), the last one closed at the interval end.
std::vector<HistogramBin> activity_histogram(const LinkStream& stream, double granularity);

}  // namespace lspred
