#pragma once

#include <random>
#include <string>
#include <vector>

#include "lspred/stream.hpp"
#include "oracle.hpp"

namespace fixtures {

inline oracle::Stream s1() {
    return {0, 10, {{1, "a", "b"}, {2, "a", "c"}, {3, "b", "c"}, {4, "a", "b"}, {9, "a", "b"}}};
}

inline oracle::Stream s2() {
    return {0,
            10,
            {{1, "a", "b"}, {2, "a", "c"}, {3, "b", "c"}, {4, "a", "b"}, {5, "b", "c"}, {6, "a", "c"}, {9, "a", "b"}}};
}

inline lspred::LinkStream build(const oracle::Stream& s, const std::vector<std::string>& universe = {}) {
    std::vector<lspred::LinkStream::LabeledLink> links;
    for (const auto& l : s.links) links.push_back({l.t, l.u, l.v});
    return lspred::LinkStream::from_labeled(links, lspred::Interval(s.start, s.end), universe);
}

inline lspred::NodePair pair(const lspred::LinkStream& s, const std::string& u, const std::string& v) {
    return lspred::NodePair::of(s.nodes().at(u), s.nodes().at(v));
}

inline oracle::Key key(const lspred::LinkStream& s, lspred::NodePair p) {
    return oracle::key(s.nodes().label(p.a()), s.nodes().label(p.b()));
}

/// Up to `max_nodes` nodes and `max_links` links on [0, 1000]. Half of the
/// timestamps are integers so that ties and zero gaps occur.
inline oracle::Stream random_stream(std::mt19937_64& rng, int max_nodes = 20, int max_links = 200) {
    std::uniform_int_distribution<int> n_nodes(2, max_nodes);
    std::uniform_int_distribution<int> n_links(1, max_links);
    const int n = n_nodes(rng);
    const int m = n_links(rng);
    std::uniform_int_distribution<int> node(0, n - 1);
    std::uniform_real_distribution<double> time(0.0, 1000.0);
    std::bernoulli_distribution integral(0.5);
    oracle::Stream s{0, 1000, {}};
    while (static_cast<int>(s.links.size()) < m) {
        const int u = node(rng);
        const int v = node(rng);
        if (u == v) continue;
        double t = time(rng);
        if (integral(rng)) t = std::floor(t);
        s.links.push_back({t, "n" + std::to_string(u), "n" + std::to_string(v)});
    }
    return s;
}

/// A stream that repeats the same pattern every `period` seconds for
/// `periods` periods. Pair activities per period are 1, 2 and 4, so every
/// ratio that appears during allocation is a power of two.
inline oracle::Stream periodic(double period = 100.0, int periods = 3) {
    const std::vector<std::pair<double, oracle::Key>> pattern{
        {10, {"a", "b"}}, {20, {"a", "c"}}, {25, {"a", "c"}}, {40, {"c", "d"}},
        {50, {"c", "d"}}, {60, {"c", "d"}}, {70, {"c", "d"}},
    };
    oracle::Stream s{0, period * periods, {}};
    for (int p = 0; p < periods; ++p) {
        for (const auto& [offset, k] : pattern) s.links.push_back({p * period + offset, k.first, k.second});
    }
    return s;
}

}  // namespace fixtures
