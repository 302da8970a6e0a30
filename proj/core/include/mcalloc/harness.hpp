#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mcalloc/algorithms.hpp"
#include "mcalloc/metrics.hpp"
#include "mcalloc/scenario.hpp"

namespace mcalloc {

std::string_view version();

struct RunConfig {
  std::size_t n_scenarios = 1000;
  std::uint64_t base_seed = 1;
  std::vector<CaseLabel> cases{CaseLabel::I, CaseLabel::II, CaseLabel::III};
  std::vector<Context> contexts{Context::Capacity, Context::Utility};
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  int stochastic_reps = 10;
  GeneratorConfig generator;
  AlgorithmSettings settings;
  std::string out_dir = "results";
  int workers = 1;  // 0: one per hardware thread
  // When false, wall_time_s is written as 0 so whole record files are
  // byte-identical across runs.
  bool record_timing = true;

  // Throws std::invalid_argument.
  void validate() const;
};

// Flat "key = value" document, '#' starts a comment. Lists are
// comma-separated. Unknown keys and malformed values throw
// std::invalid_argument. Keys present override fields of `cfg`.
void apply_config_text(std::string_view text, RunConfig& cfg);
// Applies a single key/value pair with the same rules.
void apply_config_value(std::string_view key, std::string_view value, RunConfig& cfg);
// Serializes every key; apply_config_text(config_to_text(c)) reproduces c.
std::string config_to_text(const RunConfig& cfg);

struct FaultRecord {
  std::uint64_t scenario_seed = 0;
  CaseLabel case_label = CaseLabel::I;
  Context context = Context::Capacity;
  std::string algorithm;
  std::string message;
};

struct RunResult {
  std::vector<MetricRecord> records;
  std::vector<FaultRecord> faults;
};

// Seed of scenario i: base_seed XOR i.
std::uint64_t scenario_seed(std::uint64_t base_seed, std::size_t index);
// Stream for one allocator call.
std::uint64_t task_seed(std::uint64_t base_seed, std::size_t index, CaseLabel case_label,
                        Context context, Algorithm algorithm, int rep);

// In-memory sweep. Records are ordered by (scenario, case, context,
// algorithm) in config order regardless of the worker count. `progress`, if
// set, is called after each finished (scenario, case) task from the worker
// thread that ran it, under a lock.
RunResult run_sweep(const RunConfig& cfg,
                    const std::function<void(std::size_t done, std::size_t total)>& progress = {});

// Records CSV with the fixed header below.
inline constexpr std::string_view kRecordsHeader =
    "scenario_seed,case,context,algorithm,tc_mbps,tu,f_c,f_u,mc_mbps,mu,n_outage,"
    "overcapacity_mbps,wall_time_s";
std::string records_to_csv(const std::vector<MetricRecord>& records);
// Throws std::invalid_argument on a malformed document.
std::vector<MetricRecord> records_from_csv(std::string_view text);

std::string summary_to_csv(const std::vector<SummaryRow>& rows);

// Writes summary.csv, scatter_tu_vs_f.csv and plots/<metric>_<case>_<context>.csv.
void export_aggregates(const std::vector<SummaryRow>& rows, const std::filesystem::path& dir);

// Full run: manifest.json and run.cfg, then records.csv, faults.csv (when
// any), and the aggregate files. Returns the result; a nonzero fault count
// should fail the caller.
RunResult run(const RunConfig& cfg,
              const std::function<void(std::size_t done, std::size_t total)>& progress = {});

// Re-aggregates dir/records.csv in place.
std::vector<SummaryRow> aggregate_directory(const std::filesystem::path& dir);

}  // namespace mcalloc
