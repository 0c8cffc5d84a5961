#include "lspred/metrics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <utility>

#include "lspred/errors.hpp"

namespace lspred {

namespace {

constexpr const char* kModule = "metrics";

std::atomic<std::uint64_t> g_scoring_passes{0};

struct KindName {
    MetricKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 10> kPlainNames{{
    {MetricKind::CN, "CN"},
    {MetricKind::JI, "JI"},
    {MetricKind::SI, "SI"},
    {MetricKind::AA, "AA"},
    {MetricKind::RA, "RA"},
    {MetricKind::WCN, "WCN"},
    {MetricKind::WSI, "WSI"},
    {MetricKind::WAA, "WAA"},
    {MetricKind::WRA, "WRA"},
    {MetricKind::PAE, "PAE"},
}};

std::string format_parameter(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

// Per-stream quantities shared by every pair scored in one pass.
class Scorer {
public:
    explicit Scorer(const LinkStream& stream) : stream_(stream) {
        const std::size_t n = stream.nodes().size();
        strength_.assign(n, 0.0);
        log_activity_.assign(n, 0.0);
        for (std::uint32_t w = 0; w < n; ++w) {
            for (const Neighbor& nb : stream.adjacency(NodeId{w})) {
                strength_[w] += static_cast<double>(nb.activity);
                log_activity_[w] += std::log(static_cast<double>(nb.activity));
            }
        }
    }

    double operator()(const MetricId& id, NodePair p) const {
        switch (id.family()) {
            case MetricFamily::Structural:
            case MetricFamily::Hybrid:
                return neighborhood_score(id.kind(), p);
            case MetricFamily::Temporal:
                return temporal(id, p);
        }
        return 0.0;
    }

private:
    double neighborhood_score(MetricKind kind, NodePair p) const {
        const auto nu = stream_.adjacency(p.a());
        const auto nv = stream_.adjacency(p.b());
        double common = 0.0;
        double acc = 0.0;
        // Merge of the two sorted neighbor lists.
        for (std::size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
            if (nu[i].node < nv[j].node) {
                ++i;
            } else if (nv[j].node < nu[i].node) {
                ++j;
            } else {
                const std::uint32_t w = nu[i].node.value;
                const auto deg_w = static_cast<double>(stream_.adjacency(nu[i].node).size());
                const auto a_uw = static_cast<double>(nu[i].activity);
                const auto a_vw = static_cast<double>(nv[j].activity);
                common += 1.0;
                switch (kind) {
                    case MetricKind::AA:
                        if (deg_w > 1.0) acc += 1.0 / std::log(deg_w);
                        break;
                    case MetricKind::RA:
                        acc += 1.0 / deg_w;
                        break;
                    case MetricKind::WCN:
                        acc += a_uw * a_vw;
                        break;
                    case MetricKind::WSI:
                        acc += a_uw + a_vw;
                        break;
                    case MetricKind::WAA:
                        if (log_activity_[w] > 0.0) acc += 1.0 / log_activity_[w];
                        break;
                    case MetricKind::WRA:
                        acc += 1.0 / strength_[w];
                        break;
                    default:
                        break;
                }
                ++i;
                ++j;
            }
        }
        const auto du = static_cast<double>(nu.size());
        const auto dv = static_cast<double>(nv.size());
        switch (kind) {
            case MetricKind::CN:
                return common;
            case MetricKind::JI: {
                const double uni = du + dv - common;
                return uni > 0.0 ? common / uni : 0.0;
            }
            case MetricKind::SI:
                return du + dv > 0.0 ? 2.0 * common / (du + dv) : 0.0;
            case MetricKind::WSI: {
                const double denom = strength_[p.a().value] + strength_[p.b().value];
                return denom > 0.0 ? acc / denom : 0.0;
            }
            default:
                return acc;
        }
    }

    double temporal(const MetricId& id, NodePair p) const {
        const auto times = stream_.pair_times(p);
        const Timestamp omega = stream_.interval().end();
        switch (id.kind()) {
            case MetricKind::PAE:
                return static_cast<double>(times.size());
            case MetricKind::PAE_DELTA_S: {
                auto lo = std::lower_bound(times.begin(), times.end(), omega - id.parameter());
                auto hi = std::upper_bound(times.begin(), times.end(), omega);
                return static_cast<double>(hi - lo);
            }
            case MetricKind::PAE_K_L: {
                const auto m = static_cast<std::size_t>(
                    std::upper_bound(times.begin(), times.end(), omega) - times.begin());
                if (m == 0) return 0.0;
                const std::size_t k = std::min(m, static_cast<std::size_t>(id.parameter()));
                double denom = omega - times[m - k];
                if (!(denom > 0.0)) denom = stream_.min_positive_gap();
                return static_cast<double>(k) / denom;
            }
            default:
                return 0.0;
        }
    }

    const LinkStream& stream_;
    std::vector<double> strength_;
    std::vector<double> log_activity_;
};

}  // namespace

// ---------------------------------------------------------------------------
// MetricId

MetricId::MetricId(MetricKind kind, double parameter) : kind_(kind), parameter_(parameter) {
    switch (kind) {
        case MetricKind::PAE_DELTA_S:
            if (!(parameter > 0.0) || !std::isfinite(parameter)) {
                throw ConfigError(kModule, "PAE delta must be a positive duration");
            }
            break;
        case MetricKind::PAE_K_L:
            if (!(parameter >= 1.0) || parameter != std::floor(parameter) || parameter > 1e9) {
                throw ConfigError(kModule, "PAE k must be an integer >= 1");
            }
            break;
        default:
            if (parameter != 0.0) throw ConfigError(kModule, "metric takes no parameter");
    }
}

MetricFamily MetricId::family() const noexcept {
    switch (kind_) {
        case MetricKind::CN:
        case MetricKind::JI:
        case MetricKind::SI:
        case MetricKind::AA:
        case MetricKind::RA:
            return MetricFamily::Structural;
        case MetricKind::WCN:
        case MetricKind::WSI:
        case MetricKind::WAA:
        case MetricKind::WRA:
            return MetricFamily::Hybrid;
        default:
            return MetricFamily::Temporal;
    }
}

std::string MetricId::name() const {
    switch (kind_) {
        case MetricKind::PAE_DELTA_S:
            return "PAE" + format_parameter(parameter_) + "S";
        case MetricKind::PAE_K_L:
            return "PAE" + format_parameter(parameter_) + "L";
        default:
            for (const auto& kn : kPlainNames) {
                if (kn.kind == kind_) return std::string(kn.name);
            }
    }
    return "?";
}

MetricId MetricId::parse(std::string_view name) {
    for (const auto& kn : kPlainNames) {
        if (kn.name == name) return MetricId(kn.kind);
    }
    if (name.size() > 4 && name.substr(0, 3) == "PAE") {
        const char suffix = name.back();
        const auto body = name.substr(3, name.size() - 4);
        double value = 0;
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
        if (ec == std::errc{} && ptr == body.data() + body.size()) {
            if (suffix == 'S') return MetricId(MetricKind::PAE_DELTA_S, value);
            if (suffix == 'L') return MetricId(MetricKind::PAE_K_L, value);
        }
    }
    throw ConfigError(kModule, "unknown metric '" + std::string(name) + "'");
}

std::vector<MetricId> default_metrics() {
    return {
        MetricId(MetricKind::CN),  MetricId(MetricKind::JI),  MetricId(MetricKind::SI),
        MetricId(MetricKind::AA),  MetricId(MetricKind::RA),  MetricId(MetricKind::WCN),
        MetricId(MetricKind::WSI), MetricId(MetricKind::WAA), MetricId(MetricKind::WRA),
        MetricId(MetricKind::PAE), MetricId(MetricKind::PAE_K_L, 10),
        MetricId(MetricKind::PAE_DELTA_S, 100), MetricId(MetricKind::PAE_DELTA_S, 1000),
        MetricId(MetricKind::PAE_DELTA_S, 10000),
    };
}

std::vector<MetricId> reduced_metrics() {
    return {
        MetricId(MetricKind::CN),  MetricId(MetricKind::SI),
        MetricId(MetricKind::WCN), MetricId(MetricKind::PAE),
        MetricId(MetricKind::PAE_K_L, 10), MetricId(MetricKind::PAE_DELTA_S, 1000),
        MetricId(MetricKind::PAE_DELTA_S, 10000),
    };
}

double ScoreTable::normalized_at(NodePair p) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), p);
    if (it == pairs.end() || *it != p) return 0.0;
    return normalized[static_cast<std::size_t>(it - pairs.begin())];
}

// ---------------------------------------------------------------------------
// Scoring

double structural_score(MetricKind kind, const LinkStream& stream, NodePair pair) {
    const MetricId id(kind);
    if (id.family() != MetricFamily::Structural) throw ConfigError(kModule, id.name() + " is not structural");
    return Scorer(stream)(id, pair);
}

double hybrid_score(MetricKind kind, const LinkStream& stream, NodePair pair) {
    const MetricId id(kind);
    if (id.family() != MetricFamily::Hybrid) throw ConfigError(kModule, id.name() + " is not hybrid");
    return Scorer(stream)(id, pair);
}

double temporal_score(const MetricId& id, const LinkStream& stream, NodePair pair) {
    if (id.family() != MetricFamily::Temporal) throw ConfigError(kModule, id.name() + " is not temporal");
    return Scorer(stream)(id, pair);
}

double score(const MetricId& id, const LinkStream& stream, NodePair pair) { return Scorer(stream)(id, pair); }

Normalized normalize(std::span<const double> scores) {
    Normalized out;
    out.values.assign(scores.begin(), scores.end());
    for (double v : scores) out.max = std::max(out.max, v);
    if (out.max > 0.0) {
        for (double& v : out.values) v /= out.max;
    } else {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        out.max = 0.0;
    }
    return out;
}

std::vector<ScoreTable> score_all(const LinkStream& stream, std::span<const MetricId> metrics, const PairSet& pairs) {
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        for (std::size_t j = i + 1; j < metrics.size(); ++j) {
            if (metrics[i] == metrics[j]) throw ConfigError(kModule, "duplicate metric " + metrics[i].name());
        }
    }
    std::vector<ScoreTable> out;
    if (metrics.empty()) return out;
    const Scorer scorer(stream);
    out.reserve(metrics.size());
    for (const MetricId& id : metrics) {
        ScoreTable table{id, pairs, {}, {}, 0.0};
        table.raw.reserve(pairs.size());
        for (NodePair p : pairs) table.raw.push_back(scorer(id, p));
        auto norm = normalize(table.raw);
        table.normalized = std::move(norm.values);
        table.normalization_max = norm.max;
        out.push_back(std::move(table));
        g_scoring_passes.fetch_add(1, std::memory_order_relaxed);
    }
    return out;
}

std::uint64_t scoring_passes() noexcept { return g_scoring_passes.load(std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// Correlation

CorrelationMatrix::CorrelationMatrix(std::vector<MetricId> metrics, std::vector<std::optional<double>> values)
    : metrics_(std::move(metrics)), values_(std::move(values)) {
    if (values_.size() != metrics_.size() * metrics_.size()) {
        throw ConfigError(kModule, "correlation matrix shape mismatch");
    }
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ConfigError(kModule, "pearson: length mismatch");
    const auto n = static_cast<double>(x.size());
    if (x.empty()) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(std::span<const ScoreTable> tables) {
    if (tables.size() < 2) throw ConfigError(kModule, "correlation needs at least two tables");
    for (const auto& t : tables) {
        if (t.pairs != tables.front().pairs) throw ConfigError(kModule, "correlation over mismatched pair sets");
    }
    const std::size_t n = tables.size();
    std::vector<MetricId> ids;
    for (const auto& t : tables) ids.push_back(t.metric);
    std::vector<std::optional<double>> values(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto r = pearson(tables[i].raw, tables[j].raw);
            values[i * n + j] = r;
            values[j * n + i] = r;
        }
    }
    return CorrelationMatrix(std::move(ids), std::move(values));
}

}  // namespace lspred
