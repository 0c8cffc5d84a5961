#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "lspred/config.hpp"
#include "lspred/errors.hpp"
#include "lspred/io.hpp"
#include "lspred/pipeline.hpp"

using namespace lspred;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class PipelineTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("lspred_pipeline_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        std::ofstream out(dir_ / "links.txt");
        for (const auto& l : fixtures::periodic(100, 3).links) out << l.t << " " << l.u << " " << l.v << "\n";
    }

    fs::path write_config(const std::string& extra, const std::string& name = "c.ini") const {
        const auto path = dir_ / name;
        std::ofstream(path) << "[data]\npath = links.txt\nstart = 0\nend = 300\n"
                               "[schedule]\nstart = 0\nduration = 100\n"
                               "[learner]\nrestarts = 2\nmax_iterations = 40\n"
                            << extra;
        return path;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(PipelineTest, PeriodicStreamIsPredictedExactly) {
    const auto cfg = load_config(write_config("[metrics]\nlist = PAE\n"), false);
    const auto r = run_experiment(cfg);
    ASSERT_TRUE(r.report.has_value());
    EXPECT_EQ(r.report->f_score, 1.0);
    EXPECT_EQ(r.prediction_budget, 7.0);
    EXPECT_EQ(r.training_links, 7u);
    ASSERT_TRUE(r.realizations.has_value());
    EXPECT_EQ(r.realizations->count, 2u);
    EXPECT_NE(r.report->find("category:new"), nullptr);
    EXPECT_NE(r.report->find("class:C3"), nullptr);
}

TEST_F(PipelineTest, MissingGroundTruthNeedsPredictOnly) {
    auto cfg = load_config(write_config("[metrics]\nlist = PAE, CN\n"), false);
    cfg.schedule.prediction = Interval(300, 400);
    EXPECT_THROW(run_experiment(cfg), PipelineError);
    const auto r = run_experiment(cfg, RunMode::PredictOnly);
    EXPECT_FALSE(r.report.has_value());
    EXPECT_EQ(r.prediction.total, 7.0);
    EXPECT_THROW(evaluate_predictions(cfg, r.prediction), PipelineError);
}

TEST_F(PipelineTest, OutputsAreDeterministic) {
    const auto a = load_config(write_config("[metrics]\nlist = reduced\n[output]\ndirectory = a\n", "a.ini"), false);
    const auto b = load_config(write_config("[metrics]\nlist = reduced\n[output]\ndirectory = b\n", "b.ini"), false);
    const auto wa = write_experiment(run_experiment(a));
    const auto wb = write_experiment(run_experiment(b));
    ASSERT_EQ(wa.size(), wb.size());
    for (std::size_t i = 0; i < wa.size(); ++i) {
        EXPECT_EQ(wa[i].filename(), wb[i].filename());
        if (wa[i].extension() == ".csv") EXPECT_EQ(slurp(wa[i]), slurp(wb[i])) << wa[i];
    }
}

TEST_F(PipelineTest, EvaluatingOwnPredictionsReproducesReport) {
    const auto cfg = load_config(write_config("[metrics]\nlist = reduced\n"), false);
    const auto r = run_experiment(cfg);
    write_experiment(r);
    const auto data = load_experiment_data(cfg);
    const auto p = read_predictions_file(cfg.output_dir / "predictions.csv", data.stream.nodes());
    const auto again = evaluate_predictions(cfg, p);
    EXPECT_EQ(report_json(again), report_json(*r.report));
}

TEST_F(PipelineTest, GroundTruthFileScoresOne) {
    const auto cfg = load_config(write_config(""), false);
    const auto data = load_experiment_data(cfg);
    const auto target = slice(data.stream, cfg.schedule.prediction);
    ActivityPrediction p;
    for (const auto& [pair, c] : target.activities()) {
        p.counts.emplace(pair, static_cast<double>(c));
        p.total += static_cast<double>(c);
    }
    EXPECT_EQ(evaluate_predictions(cfg, p).f_score, 1.0);
}

TEST_F(PipelineTest, ClassedRunWritesPerClassWeights) {
    const auto cfg = load_config(write_config("[metrics]\nlist = reduced\n[classes]\nenabled = true\nk = 1\n"), false);
    const auto r = run_experiment(cfg);
    ASSERT_TRUE(r.classed.has_value());
    const auto written = write_experiment(r);
    for (const char* f : {"weights_C1.csv", "weights_C2.csv", "weights_C3.csv", "trace.csv", "report.json",
                          "resolved.ini", "summary.csv"}) {
        EXPECT_TRUE(fs::exists(cfg.output_dir / f)) << f;
    }
    const auto header = slurp(cfg.output_dir / "trace.csv").substr(0, 40);
    EXPECT_EQ(header.rfind("restart,iteration,objective,step,C", 0), 0u);
}

TEST_F(PipelineTest, WarnsAboutWindowsBelowResolution) {
    const auto s = fixtures::build({0, 1000, {{0, "a", "b"}, {120, "a", "c"}, {240, "b", "c"}}});
    const std::vector<MetricId> metrics{MetricId::parse("PAE100S"), MetricId::parse("PAE1000S")};
    const auto w = resolution_warnings(s, metrics);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_NE(w[0].find("PAE100S"), std::string::npos);
}

#ifdef LSPRED_CLI
namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LSPRED_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_F(PipelineTest, CliExitCodes) {
    const auto good = write_config("[metrics]\nlist = PAE, CN\n");
    EXPECT_EQ(run_cli("run " + good.string()), 0);
    EXPECT_EQ(run_cli("histogram " + good.string() + " --granularity 50 -o -"), 0);
    EXPECT_EQ(run_cli("correlate " + good.string() + " -o -"), 0);
    EXPECT_EQ(run_cli("score " + good.string() + " -o -"), 0);
    EXPECT_EQ(run_cli("sweep " + good.string() + " --metric-a PAE --metric-b CN --points 5 -o -"), 0);
    EXPECT_EQ(run_cli("evaluate " + (dir_ / "out" / "predictions.csv").string() + " " + good.string() + " -o -"), 0);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("run " + good.string() + " --no-such-flag"), 2);
    EXPECT_EQ(run_cli("histogram " + good.string() + " --granularity 0"), 3);
    EXPECT_EQ(run_cli("run " + write_config("[bogus]\nx = 1\n", "bad.ini").string()), 3);
    std::ofstream(dir_ / "broken.txt") << "1 a\n";
    const auto broken = dir_ / "broken.ini";
    std::ofstream(broken) << "[data]\npath = broken.txt\n[schedule]\nstart = 0\nduration = 1\n";
    EXPECT_EQ(run_cli("run " + broken.string()), 4);
    const auto future = dir_ / "future.ini";
    std::ofstream(future) << "[data]\npath = links.txt\n[schedule]\nstart = 1000\nduration = 100\n";
    EXPECT_EQ(run_cli("run " + future.string()), 5);
}
#endif
