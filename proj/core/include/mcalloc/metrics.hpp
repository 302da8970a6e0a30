#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcalloc/assignment.hpp"
#include "mcalloc/scenario.hpp"

namespace mcalloc {

struct MetricRecord {
  std::uint64_t scenario_seed = 0;
  CaseLabel case_label = CaseLabel::I;
  Context context = Context::Capacity;
  std::string algorithm;

  double tc_mbps = 0.0;
  double tu = 0.0;
  double f_c = 0.0;  // product of capacities, unnormalized
  double f_u = 0.0;
  double mc_mbps = 0.0;
  double mu = 0.0;
  // Integral for a single run; a mean when repetitions are averaged.
  double n_outage = 0.0;
  double overcapacity_mbps = 0.0;
  double wall_time_s = 0.0;
};

// Per-tenant capacity rho_k(S_k).
std::vector<double> tenant_capacities(const Scenario& scenario, const Assignment& assignment);

// All metrics of an assignment. Labels are copied from the scenario (seed,
// case); algorithm and context are left for the caller. Throws
// std::invalid_argument if the assignment's shape does not match.
MetricRecord evaluate(const Scenario& scenario, const Assignment& assignment);

// Field-wise mean of repeated runs; labels come from the first record.
MetricRecord average_records(std::span<const MetricRecord> records);

enum class Metric { TC, TU, FC, FU, MC, MU, NOutage, Overcapacity, WallTime };
inline constexpr std::array<Metric, 9> kAllMetrics{Metric::TC, Metric::TU,      Metric::FC,
                                                   Metric::FU, Metric::MC,      Metric::MU,
                                                   Metric::NOutage, Metric::Overcapacity,
                                                   Metric::WallTime};

std::string_view to_string(Metric m);
double metric_value(const MetricRecord& r, Metric m);

// Quantile by linear interpolation between order statistics. `sorted` must be
// ascending and nonempty; p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

struct BoxStats {
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_lo = 0.0;  // most extreme points within 1.5 IQR of the box
  double whisker_hi = 0.0;
  std::vector<double> outliers;  // ascending
};

// Throws std::invalid_argument on empty input.
BoxStats box_stats(std::span<const double> values);

struct SummaryRow {
  std::string algorithm;
  CaseLabel case_label = CaseLabel::I;
  Context context = Context::Capacity;
  std::size_t count = 0;
  std::array<BoxStats, kAllMetrics.size()> stats;

  const BoxStats& at(Metric m) const { return stats[static_cast<std::size_t>(m)]; }
};

// F_C is divided by this factor in summaries.
inline constexpr double kFcReportScale = 1e6;

// Groups by (case, context, algorithm) in order of first appearance and
// summarizes every metric. Throws std::invalid_argument on empty input.
std::vector<SummaryRow> aggregate(std::span<const MetricRecord> records);

}  // namespace mcalloc
