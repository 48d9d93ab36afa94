#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qfiwb/experiments.hpp"

using namespace qfiwb;

namespace {
ExperimentConfig config(const std::string& experiment, const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, experiment);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST(Config, RejectsUnknownKeysAndValues) {
  EXPECT_THROW(config("ghz-baseline", "nn = 3\n"), ConfigError);
  EXPECT_THROW(config("ghz-baseline", "n_min = three\n"), ConfigError);
  EXPECT_THROW(config("ghz-baseline", "n_min = 0\n"), ConfigError);
  EXPECT_THROW(config("ghz-baseline", "n_min = 3\nn_min = 4\n"), ConfigError);
  EXPECT_THROW(config("ghz-baseline", "experiment = gme-scan\n"), ConfigError);
  EXPECT_THROW(config("no-such-thing", ""), ConfigError);
  EXPECT_THROW(config("ghz-baseline", "c = nan\n"), ConfigError);
}

TEST(Config, ParsesTypedValues) {
  const auto c = config("result2-verify", "# comment\n\nseed = 99\nthreads = 2\nc_list = 1.2, 1.5\nout = results\n");
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.threads, 2);
  EXPECT_EQ(c.out_dir, "results");
  EXPECT_EQ(c.reals("c_list", {}), (std::vector<double>{1.2, 1.5}));
  EXPECT_EQ(c.integer("trials", 7), 7);
}

TEST(Experiments, AllRegisteredNamesRun) {
  // Small configurations: every driver must run and pass.
  const std::map<std::string, std::string> small = {
      {"ghz-baseline", ""},
      {"lemma1-montecarlo", "trials = 2000\n"},
      {"lemma3-montecarlo", "trials = 2000\n"},
      {"concentration", "n = 8\ntrials = 500\neps = 0.5\n"},
      {"prop4-audit", "trials = 20\n"},
      {"prop5-audit", "trials = 20\nn_max = 3\n"},
      {"result1-demo", "hamiltonians = 3\nstates = 20\n"},
      {"result3-demo", "hamiltonians = 3\nstates = 20\n"},
      {"thm11-check", "trials = 10\n"},
      {"gme-scan", "n_min = 2\nn_max = 3\nstates = 2\ncovering_angle = 0.1\n"},
      {"result2-verify", "trials = 50\ncap_n_max = 6\n"},
      {"table-census", "random_graphs = 20\n"},
      {"scaling-report", "n_max = 16\n"},
      {"net-audit", "trials = 20\nstates = 10\n"},
      {"bound-sweep", ""},
  };
  ASSERT_EQ(small.size(), registered_experiments().size());
  for (const auto& name : registered_experiments()) {
    const auto r = run_experiment(config(name, small.at(name)));
    EXPECT_TRUE(r.pass) << name << ": " << r.summary.dump();
    EXPECT_FALSE(r.rows.empty()) << name;
    for (const auto& row : r.rows) ASSERT_EQ(row.size(), r.header.size()) << name;
  }
}

TEST(Experiments, DeclaredCsvHeaders) {
  using H = std::vector<std::string>;
  EXPECT_EQ(run_experiment(config("lemma3-montecarlo", "trials = 10\n")).header,
            (H{"seed", "trial", "n", "d", "family", "qfi", "closed_form", "abs_dev"}));
  EXPECT_EQ(run_experiment(config("bound-sweep", "n_max = 8\n")).header,
            (H{"n", "d", "log_prefactor", "log_exponential", "log_total", "vacuous"}));
  EXPECT_EQ(run_experiment(config("table-census", "random_graphs = 1\n")).header,
            (H{"shape", "n", "k", "s", "disjoint", "connected", "all", "norm1_sq", "norm2_sq"}));
  EXPECT_EQ(run_experiment(config("net-audit", "trials = 5\nstates = 2\n")).header,
            (H{"trial", "distance_to_net", "eps", "pass"}));
  EXPECT_EQ(run_experiment(config("gme-scan", "n_min = 2\nn_max = 2\nstates = 1\n")).header,
            (H{"seed", "n", "c", "gme_estimate", "threshold", "qfi_state", "qfi_sym", "qfi_cap",
               "hypothesis_established"}));
}

TEST(Experiments, OutputIsDeterministicAcrossThreadCounts) {
  const auto dir = std::filesystem::temp_directory_path() / "qfiwb_determinism";
  std::filesystem::remove_all(dir);
  std::ostringstream log;
  auto a = config("lemma1-montecarlo", "trials = 500\nthreads = 1\n");
  a.out_dir = (dir / "a").string();
  auto b = config("lemma1-montecarlo", "trials = 500\nthreads = 3\n");
  b.out_dir = (dir / "b").string();
  EXPECT_EQ(run_and_write(a, log), 0);
  EXPECT_EQ(run_and_write(b, log), 0);
  const auto csv_a = slurp(dir / "a" / "lemma1-montecarlo.csv");
  EXPECT_EQ(csv_a, slurp(dir / "b" / "lemma1-montecarlo.csv"));
  EXPECT_NE(csv_a.find("seed,trial,n,d,family,qfi,closed_form,abs_dev\n"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "a" / "lemma1-montecarlo.json"));
}

TEST(Experiments, GhzRowsAreRecomputable) {
  const auto r = run_experiment(config("ghz-baseline", "n_min = 2\n"));
  // n = 2 row under the +/- basis is reported, not asserted.
  EXPECT_EQ(r.rows[1][1], "plus_minus");
  EXPECT_EQ(r.rows[1][5], "false");
  EXPECT_NEAR(std::stod(r.rows[1][2]), 4.0, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(Experiments, ShapeKeySelectsPresets) {
  const auto r = run_experiment(config("scaling-report", "shape = ring\nn_max = 10\n"));
  ASSERT_FALSE(r.rows.empty());
  for (const auto& row : r.rows) EXPECT_EQ(row[0], "ring");
  EXPECT_THROW(run_experiment(config("scaling-report", "shape = blob\n")), ConfigError);
}
