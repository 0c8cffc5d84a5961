#include "lspred/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <unistd.h>

#include "json_report.hpp"
#include "lspred/errors.hpp"

namespace lspred {

namespace {

constexpr const char* kModule = "io";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += fmt::format(".tmp.{}", ::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw PipelineError(kModule, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw PipelineError(kModule, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string score_tables_csv(std::span<const ScoreTable> tables, const NodeTable& nodes) {
    std::string out = "metric,u,v,raw,normalized\n";
    for (const auto& t : tables) {
        const auto name = t.metric.name();
        for (std::size_t i = 0; i < t.pairs.size(); ++i) {
            out += fmt::format("{},{},{},{},{}\n", name, nodes.label(t.pairs[i].a()), nodes.label(t.pairs[i].b()),
                               format_number(t.raw[i]), format_number(t.normalized[i]));
        }
    }
    return out;
}

std::string correlation_csv(const CorrelationMatrix& m) {
    std::string out = "metric";
    for (const auto& id : m.metrics()) out += "," + id.name();
    out += "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += m.metrics()[i].name();
        for (std::size_t j = 0; j < m.size(); ++j) {
            const auto v = m.at(i, j);
            out += "," + (v ? format_number(*v) : std::string("NA"));
        }
        out += "\n";
    }
    return out;
}

std::string predictions_csv(const ActivityPrediction& prediction, const NodeTable& nodes,
                            const std::vector<std::string>& weight_lines) {
    std::string out = "# N=" + format_number(prediction.total) + "\n";
    for (const auto& w : weight_lines) out += "# weights " + w + "\n";
    out += "u,v,predicted_count\n";
    for (const auto& [pair, count] : prediction.counts) {
        out += fmt::format("{},{},{}\n", nodes.label(pair.a()), nodes.label(pair.b()), format_number(count));
    }
    return out;
}

ActivityPrediction read_predictions_csv(std::istream& in, const NodeTable& nodes) {
    std::vector<std::pair<NodePair, double>> seq;
    std::optional<double> declared_total;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            const auto rest = trim(body.substr(1));
            if (rest.rfind("N=", 0) == 0) {
                declared_total = parse_double(rest.substr(2));
                if (!declared_total) throw ParseError(kModule, "bad N comment", line_no);
            }
            continue;
        }
        if (!header_seen && body.rfind("u,v", 0) == 0) {
            header_seen = true;
            continue;
        }
        std::array<std::string_view, 3> f{};
        std::size_t pos = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto comma = body.find(',', pos);
            if ((k < 2) != (comma != std::string_view::npos)) {
                throw ParseError(kModule, "expected 'u,v,predicted_count'", line_no);
            }
            f[k] = trim(body.substr(pos, k < 2 ? comma - pos : std::string_view::npos));
            pos = comma + 1;
        }
        const auto u = nodes.find(f[0]);
        const auto v = nodes.find(f[1]);
        if (!u || !v) throw ParseError(kModule, "unknown node in prediction", line_no);
        if (*u == *v) throw ParseError(kModule, "self pair in prediction", line_no);
        const auto count = parse_double(f[2]);
        if (!count || *count < 0.0) throw ParseError(kModule, "predicted count must be a non-negative number", line_no);
        seq.emplace_back(NodePair::of(*u, *v), *count);
    }
    std::sort(seq.begin(), seq.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (seq[i].first == seq[i - 1].first) throw ParseError(kModule, "duplicate pair in prediction file");
    }
    ActivityPrediction out;
    double sum = 0.0;
    for (const auto& [p, c] : seq) sum += c;
    out.counts.insert(boost::container::ordered_unique_range, std::make_move_iterator(seq.begin()),
        std::make_move_iterator(seq.end()));
    out.total = declared_total.value_or(sum);
    return out;
}

ActivityPrediction read_predictions_file(const std::filesystem::path& path, const NodeTable& nodes) {
    std::ifstream in(path);
    if (!in) throw ParseError(kModule, "cannot open " + path.string());
    return read_predictions_csv(in, nodes);
}

std::string trace_csv(const OptimizeResult& result, const std::vector<std::string>& column_names) {
    std::string out = "restart,iteration,objective,step";
    for (const auto& c : column_names) out += "," + c;
    out += "\n";
    for (const auto& r : result.restarts) {
        for (const auto& row : r.trace) {
            out += fmt::format("{},{},{},{}", row.restart, row.iteration, format_number(row.objective),
                               format_number(row.step));
            for (double a : row.alphas) out += "," + format_number(a);
            out += "\n";
        }
    }
    return out;
}

std::string weights_csv(const std::vector<MetricId>& metrics, const WeightVector& best, const WeightVector& mean,
                        const std::vector<double>& stddev) {
    std::string out = "metric,alpha,mean,std\n";
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        out += fmt::format("{},{},{},{}\n", metrics[i].name(), format_number(best.get(metrics[i])),
                           format_number(mean.get(metrics[i])),
                           format_number(i < stddev.size() ? stddev[i] : 0.0));
    }
    return out;
}

std::string summary_csv(const EvaluationReport& report, const std::string& label) {
    std::string out = "label,f_score,precision,recall,tp,fp,fn,predicted,actual\n";
    auto row = [&out](const std::string& name, const EvaluationReport& r) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", name, format_number(r.f_score),
                           format_number(r.precision), format_number(r.recall), format_number(r.confusion.tp),
                           format_number(r.confusion.fp), format_number(r.confusion.fn),
                           format_number(r.predicted_total), format_number(r.actual_total));
    };
    row(label, report);
    for (const auto& [name, sub] : report.breakdowns) row(label + "/" + name, sub);
    return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "alpha,f_all,f_new,f_recurrent,degenerate\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{}\n", format_number(r.alpha), format_number(r.f_all), format_number(r.f_new),
                           format_number(r.f_recurrent), r.degenerate ? 1 : 0);
    }
    return out;
}

std::string histogram_csv(std::span<const HistogramBin> bins) {
    std::string out = "bin_start,count\n";
    for (const auto& b : bins) out += fmt::format("{},{}\n", format_number(b.start), b.count);
    return out;
}

std::string report_json(const EvaluationReport& report) { return detail::to_json(report).dump(2) + "\n"; }

}  // namespace lspred
