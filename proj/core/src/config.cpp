#include "lspred/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lspred/errors.hpp"

namespace lspred {

namespace {

constexpr const char* kModule = "pipeline_cli";

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"experiment", {"name"}},
        {"data", {"path", "node_universe", "start", "end"}},
        {"schedule",
         {"start", "duration", "training_start", "training_end", "validation_end", "prediction_start",
          "prediction_end"}},
        {"metrics", {"list"}},
        {"learner",
         {"restarts", "max_iterations", "initial_step", "step_shrink", "min_step", "fd_epsilon", "seed",
          "objective"}},
        {"classes", {"enabled", "k", "mode"}},
        {"sweep", {"metric_a", "metric_b", "points", "categories"}},
        {"output", {"directory", "formats"}},
    };
    return keys;
}

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

double to_double(const std::string& text, const std::string& ctx) {
    double v = 0;
    const auto s = boost::trim_copy(text);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(kModule, ctx + ": not a number: " + text);
    return v;
}

long long to_integer(const std::string& text, const std::string& ctx) {
    long long v = 0;
    const auto s = boost::trim_copy(text);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(kModule, ctx + ": not an integer: " + text);
    return v;
}

bool to_bool(const std::string& text, const std::string& ctx) {
    const auto s = boost::to_lower_copy(boost::trim_copy(text));
    if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
    if (s == "false" || s == "no" || s == "0" || s == "off") return false;
    throw ConfigError(kModule, ctx + ": not a boolean: " + text);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(", \t"), boost::token_compress_on);
    parts.erase(std::remove_if(parts.begin(), parts.end(), [](const std::string& p) { return p.empty(); }),
                parts.end());
    return parts;
}

std::vector<MetricId> parse_metric_list(const std::string& text) {
    const auto t = boost::to_lower_copy(boost::trim_copy(text));
    if (t == "default" || t == "all") return default_metrics();
    if (t == "reduced") return reduced_metrics();
    std::vector<MetricId> out;
    for (const auto& name : split_list(text)) out.push_back(MetricId::parse(name));
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
    std::filesystem::path p(boost::trim_copy(value));
    return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::string number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (dataset.empty()) throw ConfigError(kModule, "[data] path is required");
    if (metrics.empty()) throw ConfigError(kModule, "[metrics] list must not be empty");
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        for (std::size_t j = i + 1; j < metrics.size(); ++j) {
            if (metrics[i] == metrics[j]) throw ConfigError(kModule, "duplicate metric " + metrics[i].name());
        }
    }
    schedule.validate();
    learner.validate();
    if (classes.k < 1) throw ConfigError(kModule, "[classes] k must be >= 1");
    if (sweep.points < 1) throw ConfigError(kModule, "[sweep] points must be >= 1");
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(kModule, std::string("malformed config: ") + e.what());
    }

    for (const auto& [section, body] : tree) {
        auto known = known_keys().find(section);
        if (known == known_keys().end()) {
            if (body.empty()) throw ConfigError(kModule, "top-level keys are not allowed: " + section);
            throw ConfigError(kModule, "unknown section [" + section + "]");
        }
        for (const auto& [key, value] : body) {
            if (!known->second.count(key)) throw ConfigError(kModule, "unknown key " + where(section, key));
        }
    }

    auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(section + "." + key, '.'))) {
            return boost::trim_copy(*v);
        }
        return std::nullopt;
    };

    ExperimentConfig cfg;
    if (auto v = get("experiment", "name")) cfg.name = *v;

    if (auto v = get("data", "path")) cfg.dataset = resolve(base_dir, *v);
    if (auto v = get("data", "node_universe"); v && !v->empty()) cfg.node_universe = resolve(base_dir, *v);
    {
        const auto s = get("data", "start");
        const auto e = get("data", "end");
        if (s.has_value() != e.has_value()) throw ConfigError(kModule, "[data] start and end go together");
        if (s) cfg.data_interval = Interval(to_double(*s, where("data", "start")), to_double(*e, where("data", "end")));
    }

    // Schedule: either equal periods from `start` + `duration`, or explicit bounds.
    const auto start = get("schedule", "start");
    const auto duration = get("schedule", "duration");
    if (start || duration) {
        if (!start || !duration) throw ConfigError(kModule, "[schedule] start and duration go together");
        const double s = to_double(*start, where("schedule", "start"));
        const double d = to_double(*duration, where("schedule", "duration"));
        cfg.schedule = PeriodSchedule{Interval(s, s + d), Interval(s + d, s + 2 * d), Interval(s + 2 * d, s + 3 * d)};
    } else {
        auto req = [&](const char* key) {
            auto v = get("schedule", key);
            if (!v) throw ConfigError(kModule, std::string("[schedule] missing ") + key);
            return to_double(*v, where("schedule", key));
        };
        const double a1 = req("training_start");
        const double o1 = req("training_end");
        const double o2 = req("validation_end");
        const double a3 = get("schedule", "prediction_start")
                              ? to_double(*get("schedule", "prediction_start"), where("schedule", "prediction_start"))
                              : o2;
        const double o3 = req("prediction_end");
        cfg.schedule = PeriodSchedule{Interval(a1, o1), Interval(o1, o2), Interval(a3, o3)};
    }

    if (auto v = get("metrics", "list")) cfg.metrics = parse_metric_list(*v);

    if (auto v = get("learner", "restarts")) cfg.learner.restarts = static_cast<int>(to_integer(*v, "restarts"));
    if (auto v = get("learner", "max_iterations")) {
        cfg.learner.max_iterations = static_cast<int>(to_integer(*v, "max_iterations"));
    }
    if (auto v = get("learner", "initial_step")) cfg.learner.initial_step = to_double(*v, "initial_step");
    if (auto v = get("learner", "step_shrink")) cfg.learner.step_shrink = to_double(*v, "step_shrink");
    if (auto v = get("learner", "min_step")) cfg.learner.min_step = to_double(*v, "min_step");
    if (auto v = get("learner", "fd_epsilon")) cfg.learner.fd_epsilon = to_double(*v, "fd_epsilon");
    if (auto v = get("learner", "seed")) cfg.learner.seed = static_cast<std::uint64_t>(to_integer(*v, "seed"));
    if (auto v = get("learner", "objective")) {
        if (*v == "overall_f") {
            cfg.learner.objective = Objective::OverallF;
        } else if (*v == "macro_f") {
            cfg.learner.objective = Objective::MacroF;
        } else {
            throw ConfigError(kModule, "[learner] objective must be overall_f or macro_f");
        }
    }

    if (auto v = get("classes", "enabled")) cfg.classes.enabled = to_bool(*v, where("classes", "enabled"));
    if (auto v = get("classes", "k")) {
        const auto k = to_integer(*v, where("classes", "k"));
        if (k < 1) throw ConfigError(kModule, "[classes] k must be >= 1");
        cfg.classes.k = static_cast<std::uint64_t>(k);
    }
    if (auto v = get("classes", "mode")) {
        if (*v == "joint") {
            cfg.classes.mode = ClassTraining::Joint;
        } else if (*v == "independent") {
            cfg.classes.mode = ClassTraining::Independent;
        } else {
            throw ConfigError(kModule, "[classes] mode must be joint or independent");
        }
    }

    if (auto v = get("sweep", "metric_a")) cfg.sweep.metric_a = MetricId::parse(*v);
    if (auto v = get("sweep", "metric_b")) cfg.sweep.metric_b = MetricId::parse(*v);
    if (auto v = get("sweep", "points")) {
        const auto n = to_integer(*v, where("sweep", "points"));
        if (n < 1) throw ConfigError(kModule, "[sweep] points must be >= 1");
        cfg.sweep.points = static_cast<std::size_t>(n);
    }
    if (auto v = get("sweep", "categories")) cfg.sweep.categories = to_bool(*v, where("sweep", "categories"));

    cfg.output_dir = resolve(base_dir, get("output", "directory").value_or("out"));
    if (auto v = get("output", "formats")) {
        cfg.write_json = cfg.write_csv = false;
        for (const auto& f : split_list(*v)) {
            if (f == "json") {
                cfg.write_json = true;
            } else if (f == "csv") {
                cfg.write_csv = true;
            } else {
                throw ConfigError(kModule, "[output] unknown format " + f);
            }
        }
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, bool apply_env) {
    std::ifstream in(path);
    if (!in) throw ConfigError(kModule, "cannot open config " + path.string());
    auto base = std::filesystem::absolute(path).parent_path();
    auto cfg = parse_config(in, base);
    if (apply_env) {
        if (const char* dir = std::getenv("LSPRED_OUTPUT_DIR"); dir && *dir) {
            cfg.output_dir = std::filesystem::absolute(dir);
        }
        if (const char* seed = std::getenv("LSPRED_SEED"); seed && *seed) {
            cfg.learner.seed = static_cast<std::uint64_t>(to_integer(seed, "LSPRED_SEED"));
        }
    }
    return cfg;
}

std::string to_ini(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "[experiment]\nname = " << c.name << "\n\n";
    os << "[data]\npath = " << c.dataset.string() << "\n";
    if (c.node_universe) os << "node_universe = " << c.node_universe->string() << "\n";
    if (c.data_interval) {
        os << "start = " << number(c.data_interval->start()) << "\nend = " << number(c.data_interval->end()) << "\n";
    }
    os << "\n[schedule]\n"
       << "training_start = " << number(c.schedule.training.start()) << "\n"
       << "training_end = " << number(c.schedule.training.end()) << "\n"
       << "validation_end = " << number(c.schedule.validation.end()) << "\n"
       << "prediction_start = " << number(c.schedule.prediction.start()) << "\n"
       << "prediction_end = " << number(c.schedule.prediction.end()) << "\n\n";
    os << "[metrics]\nlist = ";
    for (std::size_t i = 0; i < c.metrics.size(); ++i) os << (i ? ", " : "") << c.metrics[i].name();
    os << "\n\n[learner]\n"
       << "restarts = " << c.learner.restarts << "\n"
       << "max_iterations = " << c.learner.max_iterations << "\n"
       << "initial_step = " << number(c.learner.initial_step) << "\n"
       << "step_shrink = " << number(c.learner.step_shrink) << "\n"
       << "min_step = " << number(c.learner.min_step) << "\n"
       << "fd_epsilon = " << number(c.learner.fd_epsilon) << "\n"
       << "seed = " << c.learner.seed << "\n"
       << "objective = " << (c.learner.objective == Objective::OverallF ? "overall_f" : "macro_f") << "\n\n";
    os << "[classes]\nenabled = " << (c.classes.enabled ? "true" : "false") << "\nk = " << c.classes.k
       << "\nmode = " << (c.classes.mode == ClassTraining::Joint ? "joint" : "independent") << "\n\n";
    os << "[sweep]\n";
    if (c.sweep.metric_a) os << "metric_a = " << c.sweep.metric_a->name() << "\n";
    if (c.sweep.metric_b) os << "metric_b = " << c.sweep.metric_b->name() << "\n";
    os << "points = " << c.sweep.points << "\ncategories = " << (c.sweep.categories ? "true" : "false") << "\n\n";
    os << "[output]\ndirectory = " << c.output_dir.string() << "\nformats = ";
    if (c.write_json) os << "json" << (c.write_csv ? ", " : "");
    if (c.write_csv) os << "csv";
    os << "\n";
    return os.str();
}

}  // namespace lspred
