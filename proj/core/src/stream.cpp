#include "lspred/stream.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

#include "lspred/errors.hpp"

namespace lspred {

namespace {

constexpr const char* kModule = "stream_core";

std::optional<long long> as_integer(std::string_view s) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i >= s.size()) break;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

NodePair NodePair::of(NodeId u, NodeId v) {
    if (u == v) throw ConfigError(kModule, "a node pair needs two distinct nodes");
    return u < v ? NodePair(u, v) : NodePair(v, u);
}

Interval::Interval(Timestamp start, Timestamp end) : start_(start), end_(end) {
    if (!(start <= end) || !std::isfinite(start) || !std::isfinite(end)) {
        throw ConfigError(kModule, "invalid interval [" + std::to_string(start) + ", " +
                                       std::to_string(end) + "]");
    }
}

// ---------------------------------------------------------------------------
// NodeTable

bool NodeTable::label_less(std::string_view x, std::string_view y) {
    const auto ix = as_integer(x);
    const auto iy = as_integer(y);
    if (ix && iy) return *ix < *iy || (*ix == *iy && x < y);
    if (ix.has_value() != iy.has_value()) return ix.has_value();
    return x < y;
}

NodeTable::NodeTable(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end(),
              [](const std::string& x, const std::string& y) { return label_less(x, y); });
    labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
    if (labels_.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw ConfigError(kModule, "too many nodes");
    }
}

std::optional<NodeId> NodeTable::find(std::string_view label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                               [](const std::string& x, std::string_view y) { return label_less(x, y); });
    if (it == labels_.end() || *it != label) return std::nullopt;
    return NodeId{static_cast<std::uint32_t>(it - labels_.begin())};
}

NodeId NodeTable::at(std::string_view label) const {
    if (auto id = find(label)) return *id;
    throw ConfigError(kModule, "unknown node '" + std::string(label) + "'");
}

// ---------------------------------------------------------------------------
// LinkStream

LinkStream::LinkStream(std::shared_ptr<const NodeTable> nodes, Interval interval, std::vector<Link> links)
    : nodes_(std::move(nodes)), interval_(interval), links_(std::move(links)) {
    if (!nodes_) throw ConfigError(kModule, "link stream requires a node table");
    std::stable_sort(links_.begin(), links_.end(),
                     [](const Link& x, const Link& y) { return x.t < y.t; });

    const std::size_t n = nodes_->size();
    std::vector<std::pair<NodePair, Timestamp>> by_pair;
    by_pair.reserve(links_.size());
    for (const Link& l : links_) {
        if (!interval_.contains(l.t)) {
            throw ConfigError(kModule, "link at t=" + std::to_string(l.t) + " lies outside the stream interval");
        }
        if (l.pair.b().value >= n) throw ConfigError(kModule, "link references a node outside the node table");
        by_pair.emplace_back(l.pair, l.t);
    }
    std::stable_sort(by_pair.begin(), by_pair.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });

    adjacency_.assign(n, {});
    std::vector<std::pair<NodePair, std::vector<Timestamp>>> times;
    std::vector<std::pair<NodePair, std::uint64_t>> counts;
    for (std::size_t i = 0; i < by_pair.size();) {
        std::size_t j = i;
        std::vector<Timestamp> ts;
        while (j < by_pair.size() && by_pair[j].first == by_pair[i].first) ts.push_back(by_pair[j++].second);
        const NodePair p = by_pair[i].first;
        const auto count = static_cast<std::uint64_t>(ts.size());
        adjacency_[p.a().value].push_back({p.b(), count});
        adjacency_[p.b().value].push_back({p.a(), count});
        counts.emplace_back(p, count);
        times.emplace_back(p, std::move(ts));
        i = j;
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(), [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    }
    times_.insert(boost::container::ordered_unique_range, std::make_move_iterator(times.begin()),
        std::make_move_iterator(times.end()));
    activity_.insert(boost::container::ordered_unique_range, std::make_move_iterator(counts.begin()),
        std::make_move_iterator(counts.end()));

    min_gap_ = interval_.length();
    bool found = false;
    for (std::size_t i = 1; i < links_.size(); ++i) {
        const double gap = links_[i].t - links_[i - 1].t;
        if (gap > 0 && (!found || gap < min_gap_)) {
            min_gap_ = gap;
            found = true;
        }
    }
}

std::span<const Neighbor> LinkStream::adjacency(NodeId n) const noexcept {
    if (n.value >= adjacency_.size()) return {};
    return adjacency_[n.value];
}

std::span<const Timestamp> LinkStream::pair_times(NodePair p) const noexcept {
    auto it = times_.find(p);
    if (it == times_.end()) return {};
    return it->second;
}

LinkStream LinkStream::from_labeled(const std::vector<LabeledLink>& links, std::optional<Interval> interval,
                                    const std::vector<std::string>& universe) {
    std::vector<std::string> labels = universe;
    for (const auto& l : links) {
        labels.push_back(l.u);
        labels.push_back(l.v);
    }
    auto table = std::make_shared<const NodeTable>(std::move(labels));
    std::vector<Link> out;
    out.reserve(links.size());
    Timestamp lo = std::numeric_limits<Timestamp>::infinity();
    Timestamp hi = -lo;
    for (const auto& l : links) {
        out.push_back({l.t, NodePair::of(table->at(l.u), table->at(l.v))});
        lo = std::min(lo, l.t);
        hi = std::max(hi, l.t);
    }
    if (!interval) {
        if (out.empty()) throw ConfigError(kModule, "cannot infer the interval of an empty stream");
        interval = Interval(lo, hi);
    }
    return LinkStream(std::move(table), *interval, std::move(out));
}

// ---------------------------------------------------------------------------
// Loading

LinkStream load_stream(std::istream& in, const LoadOptions& options) {
    std::vector<LinkStream::LabeledLink> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto fields = split_ws(body);
        if (fields.size() != 3) {
            throw ParseError(kModule, "expected 't u v', got " + std::to_string(fields.size()) + " fields", line_no);
        }
        double t = 0;
        auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), t);
        if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size() || !std::isfinite(t)) {
            throw ParseError(kModule, "unparseable timestamp '" + std::string(fields[0]) + "'", line_no);
        }
        if (fields[1] == fields[2]) {
            throw ParseError(kModule, "self-interaction on node '" + std::string(fields[1]) + "' rejected", line_no);
        }
        raw.push_back({t, std::string(fields[1]), std::string(fields[2])});
    }
    if (raw.empty()) throw ParseError(kModule, "input contains no links");
    return LinkStream::from_labeled(raw, options.interval, options.node_universe);
}

LinkStream load_stream_file(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw ParseError(kModule, "cannot open " + path.string());
    return load_stream(in, options);
}

std::vector<std::string> load_node_universe(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(kModule, "cannot open " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        out.emplace_back(body);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Queries

LinkStream slice(const LinkStream& stream, const Interval& window) {
    const auto links = stream.links();
    auto lo = std::lower_bound(links.begin(), links.end(), window.start(),
                               [](const Link& l, Timestamp t) { return l.t < t; });
    auto hi = std::upper_bound(lo, links.end(), window.end(),
                               [](Timestamp t, const Link& l) { return t < l.t; });
    return LinkStream(stream.node_table(), window, std::vector<Link>(lo, hi));
}

std::vector<NodeId> neighborhood(const LinkStream& stream, NodeId node) {
    std::vector<NodeId> out;
    for (const Neighbor& nb : stream.adjacency(node)) out.push_back(nb.node);
    return out;
}

std::uint64_t pair_activity(const LinkStream& stream, NodePair pair) {
    auto it = stream.activities().find(pair);
    return it == stream.activities().end() ? 0 : it->second;
}

PairSet candidate_pairs(const LinkStream& stream) {
    PairSet out;
    for (const auto& [pair, count] : stream.activities()) out.push_back(pair);
    const std::size_t n = stream.nodes().size();
    for (std::uint32_t w = 0; w < n; ++w) {
        const auto adj = stream.adjacency(NodeId{w});
        for (std::size_t i = 0; i < adj.size(); ++i) {
            for (std::size_t j = i + 1; j < adj.size(); ++j) out.push_back(NodePair::of(adj[i].node, adj[j].node));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<HistogramBin> activity_histogram(const LinkStream& stream, double granularity) {
    if (!(granularity > 0) || !std::isfinite(granularity)) {
        throw ConfigError(kModule, "histogram granularity must be positive");
    }
    const Interval& iv = stream.interval();
    const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(iv.length() / granularity)));
    std::vector<HistogramBin> out(bins);
    for (std::size_t i = 0; i < bins; ++i) out[i].start = iv.start() + static_cast<double>(i) * granularity;
    for (const Link& l : stream.links()) {
        auto idx = static_cast<std::size_t>(std::floor((l.t - iv.start()) / granularity));
        ++out[std::min(idx, bins - 1)].count;
    }
    return out;
}

}  // namespace lspred
