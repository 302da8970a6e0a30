#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mcalloc/harness.hpp"

using namespace mcalloc;
namespace fs = std::filesystem;

namespace {

RunConfig quick(std::size_t n) {
  RunConfig c;
  c.n_scenarios = n;
  c.base_seed = 17;
  c.stochastic_reps = 2;
  c.record_timing = false;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mcalloc_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, RoundTrip) {
  RunConfig c = quick(12);
  c.cases = {CaseLabel::II};
  c.contexts = {Context::Utility};
  c.algorithms = {Algorithm::GS, Algorithm::FECA};
  c.generator.n_tenants = 5;
  c.generator.radio.epsilon = 0.02;
  c.settings.auction.quotas.tenant_quota = 5;
  c.out_dir = "somewhere";
  c.workers = 3;
  RunConfig back;
  apply_config_text(config_to_text(c), back);
  EXPECT_EQ(config_to_text(back), config_to_text(c));
  EXPECT_EQ(back.n_scenarios, 12u);
  EXPECT_EQ(back.cases, c.cases);
  EXPECT_EQ(back.algorithms, c.algorithms);
  EXPECT_EQ(back.generator.n_tenants, 5);
  EXPECT_EQ(back.generator.radio.epsilon, 0.02);
  EXPECT_FALSE(back.record_timing);
}

TEST(Config, Errors) {
  RunConfig c;
  EXPECT_THROW(apply_config_text("bogus = 1\n", c), std::invalid_argument);
  EXPECT_THROW(apply_config_text("scenarios = many\n", c), std::invalid_argument);
  EXPECT_THROW(apply_config_text("algorithms = GS, XYZ\n", c), std::invalid_argument);
  EXPECT_THROW(apply_config_text("no equals sign\n", c), std::invalid_argument);
  apply_config_text("# comment\n\nscenarios = 3  # trailing\nalgorithms = gs, ca\n", c);
  EXPECT_EQ(c.n_scenarios, 3u);
  EXPECT_EQ(c.algorithms, (std::vector<Algorithm>{Algorithm::GS, Algorithm::CA}));
  RunConfig bad;
  bad.n_scenarios = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Seeds, Scheme) {
  EXPECT_EQ(scenario_seed(17, 0), 17u);
  EXPECT_EQ(scenario_seed(17, 5), 17u ^ 5u);
  const auto a = task_seed(1, 0, CaseLabel::I, Context::Capacity, Algorithm::R, 0);
  EXPECT_EQ(a, task_seed(1, 0, CaseLabel::I, Context::Capacity, Algorithm::R, 0));
  EXPECT_NE(a, task_seed(1, 0, CaseLabel::I, Context::Capacity, Algorithm::R, 1));
  EXPECT_NE(a, task_seed(1, 0, CaseLabel::II, Context::Capacity, Algorithm::R, 0));
  EXPECT_NE(a, task_seed(1, 0, CaseLabel::I, Context::Utility, Algorithm::R, 0));
  EXPECT_NE(a, task_seed(1, 1, CaseLabel::I, Context::Capacity, Algorithm::R, 0));
  EXPECT_NE(a, task_seed(1, 0, CaseLabel::I, Context::Capacity, Algorithm::SR1, 0));
}

TEST(Sweep, OneRecordPerCaseAndContext) {
  RunConfig c = quick(1);
  c.algorithms = {Algorithm::SR2};
  const RunResult r = run_sweep(c);
  EXPECT_TRUE(r.faults.empty());
  ASSERT_EQ(r.records.size(), 6u);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.algorithm, "SR2");
    EXPECT_EQ(rec.scenario_seed, 17u);
  }
  EXPECT_EQ(r.records[0].case_label, CaseLabel::I);
  EXPECT_EQ(r.records[1].context, Context::Utility);
  EXPECT_EQ(r.records[5].case_label, CaseLabel::III);
}

TEST(Sweep, DeterministicAndWorkerIndependent) {
  RunConfig c = quick(4);
  const std::string serial = records_to_csv(run_sweep(c).records);
  EXPECT_EQ(serial, records_to_csv(run_sweep(c).records));
  c.workers = 3;
  std::size_t calls = 0;
  const std::string parallel = records_to_csv(run_sweep(c, [&](std::size_t done, std::size_t total) {
                                                ++calls;
                                                EXPECT_LE(done, total);
                                              }).records);
  EXPECT_EQ(parallel, serial);
  EXPECT_EQ(calls, 12u);
}

TEST(Sweep, StochasticRecordsAreRepetitionMeans) {
  RunConfig one = quick(1);
  one.cases = {CaseLabel::I};
  one.contexts = {Context::Capacity};
  one.algorithms = {Algorithm::R};
  one.stochastic_reps = 1;
  RunConfig many = one;
  many.stochastic_reps = 5;
  const auto a = run_sweep(one).records;
  const auto b = run_sweep(many).records;
  ASSERT_EQ(a.size(), 1u);
  ASSERT_EQ(b.size(), 1u);
  // The first repetition's stream is shared, the mean differs.
  EXPECT_NE(a[0].tc_mbps, b[0].tc_mbps);
}

TEST(RecordsCsv, RoundTrip) {
  RunConfig c = quick(2);
  c.record_timing = true;
  const auto records = run_sweep(c).records;
  const std::string text = records_to_csv(records);
  EXPECT_EQ(text.substr(0, text.find('\n')), kRecordsHeader);
  const auto back = records_from_csv(text);
  ASSERT_EQ(back.size(), records.size());
  EXPECT_EQ(records_to_csv(back), text);
  EXPECT_EQ(back[3].f_c, records[3].f_c);
  EXPECT_THROW(records_from_csv("not,a,header\n"), std::invalid_argument);
  EXPECT_THROW(records_from_csv(std::string(kRecordsHeader) + "\n1,I,capacity\n"), std::invalid_argument);
}

TEST(Export, FileCountAndValues) {
  RunConfig c = quick(3);
  c.cases = {CaseLabel::I, CaseLabel::III};
  c.algorithms = {Algorithm::GS, Algorithm::WS};
  const auto rows = aggregate(run_sweep(c).records);
  const fs::path dir = scratch("export");
  export_aggregates(rows, dir);
  std::size_t plots = 0;
  for (const auto& e : fs::directory_iterator(dir / "plots")) plots += e.is_regular_file() ? 1 : 0;
  EXPECT_EQ(plots, kAllMetrics.size() * 2 * 2);
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir / "scatter_tu_vs_f.csv"));
  const std::string tc = slurp(dir / "plots" / "tc_I_capacity.csv");
  EXPECT_EQ(tc.substr(0, tc.find('\n')), "algorithm,median,q1,q3,whisker_lo,whisker_hi,outliers");
  EXPECT_NE(tc.find("GS,"), std::string::npos);
  EXPECT_NE(tc.find("WS,"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Run, WritesArtifactsAndReproduces) {
  RunConfig c = quick(2);
  c.algorithms = {Algorithm::ORR, Algorithm::CA};
  c.out_dir = scratch("run_a").string();
  const RunResult r = run(c);
  EXPECT_TRUE(r.faults.empty());
  const fs::path dir = c.out_dir;
  for (const char* f : {"manifest.json", "run.cfg", "records.csv", "summary.csv", "scatter_tu_vs_f.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_FALSE(fs::exists(dir / "faults.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_TRUE(manifest.contains("version"));

  // Re-run from the saved configuration alone.
  RunConfig again;
  apply_config_text(slurp(dir / "run.cfg"), again);
  again.out_dir = scratch("run_b").string();
  run(again);
  EXPECT_EQ(slurp(fs::path(again.out_dir) / "records.csv"), slurp(dir / "records.csv"));

  const auto rows = aggregate_directory(dir);
  EXPECT_EQ(rows.size(), 2u * 3u * 2u);
  fs::remove_all(dir);
  fs::remove_all(again.out_dir);
}
