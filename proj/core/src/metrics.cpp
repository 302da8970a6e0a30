#include "mcalloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "mcalloc/radio.hpp"
#include "mcalloc/valuation.hpp"

namespace mcalloc {

std::vector<double> tenant_capacities(const Scenario& scenario, const Assignment& assignment) {
  if (assignment.n_tenants() != scenario.n_tenants() ||
      assignment.n_channels() != scenario.n_channels()) {
    throw std::invalid_argument("assignment shape does not match scenario");
  }
  std::vector<double> caps(static_cast<std::size_t>(scenario.n_tenants()));
  for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
    caps[k] = rho(k, assignment.channels_of(k), scenario);
  }
  return caps;
}

MetricRecord evaluate(const Scenario& scenario, const Assignment& assignment) {
  const std::vector<double> caps = tenant_capacities(scenario, assignment);
  MetricRecord r;
  r.scenario_seed = scenario.seed();
  r.case_label = scenario.case_label();
  r.f_c = 1.0;
  r.f_u = 1.0;
  r.mc_mbps = std::numeric_limits<double>::infinity();
  r.mu = std::numeric_limits<double>::infinity();
  for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
    const Tenant& t = scenario.tenant(k);
    const double c = caps[k];
    const double u = utility(c, utility_params(t));
    r.tc_mbps += c;
    r.tu += u;
    r.f_c *= c;
    r.f_u *= u;
    r.mc_mbps = std::min(r.mc_mbps, c);
    r.mu = std::min(r.mu, u);
    if (c < t.c_min_mbps) r.n_outage += 1.0;
    r.overcapacity_mbps += std::max(0.0, c - t.c_max_mbps);
  }
  if (scenario.n_tenants() == 0) {
    r.mc_mbps = 0.0;
    r.mu = 0.0;
  }
  return r;
}

MetricRecord average_records(std::span<const MetricRecord> records) {
  if (records.empty()) throw std::invalid_argument("average_records: no records");
  MetricRecord out = records.front();
  for (Metric m : kAllMetrics) {
    double sum = 0.0;
    for (const MetricRecord& r : records) sum += metric_value(r, m);
    const double mean = sum / static_cast<double>(records.size());
    switch (m) {
      case Metric::TC: out.tc_mbps = mean; break;
      case Metric::TU: out.tu = mean; break;
      case Metric::FC: out.f_c = mean; break;
      case Metric::FU: out.f_u = mean; break;
      case Metric::MC: out.mc_mbps = mean; break;
      case Metric::MU: out.mu = mean; break;
      case Metric::NOutage: out.n_outage = mean; break;
      case Metric::Overcapacity: out.overcapacity_mbps = mean; break;
      case Metric::WallTime: out.wall_time_s = mean; break;
    }
  }
  return out;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::TC: return "tc";
    case Metric::TU: return "tu";
    case Metric::FC: return "f_c";
    case Metric::FU: return "f_u";
    case Metric::MC: return "mc";
    case Metric::MU: return "mu";
    case Metric::NOutage: return "n_outage";
    case Metric::Overcapacity: return "overcapacity";
    case Metric::WallTime: return "wall_time";
  }
  return "?";
}

double metric_value(const MetricRecord& r, Metric m) {
  switch (m) {
    case Metric::TC: return r.tc_mbps;
    case Metric::TU: return r.tu;
    case Metric::FC: return r.f_c;
    case Metric::FU: return r.f_u;
    case Metric::MC: return r.mc_mbps;
    case Metric::MU: return r.mu;
    case Metric::NOutage: return r.n_outage;
    case Metric::Overcapacity: return r.overcapacity_mbps;
    case Metric::WallTime: return r.wall_time_s;
  }
  return 0.0;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("box_stats: empty group");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  BoxStats s;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  s.median = quantile_sorted(v, 0.5);
  s.q1 = quantile_sorted(v, 0.25);
  s.q3 = quantile_sorted(v, 0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_lo = s.q1;
  s.whisker_hi = s.q3;
  for (double x : v) {
    if (x < lo_fence || x > hi_fence) {
      s.outliers.push_back(x);
    } else {
      s.whisker_lo = std::min(s.whisker_lo, x);
      s.whisker_hi = std::max(s.whisker_hi, x);
    }
  }
  return s;
}

std::vector<SummaryRow> aggregate(std::span<const MetricRecord> records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  using Key = std::tuple<int, int, std::string>;
  std::map<Key, std::size_t> index;
  std::vector<std::vector<const MetricRecord*>> groups;
  std::vector<SummaryRow> rows;
  for (const MetricRecord& r : records) {
    const Key key{static_cast<int>(r.case_label), static_cast<int>(r.context), r.algorithm};
    auto [it, fresh] = index.try_emplace(key, groups.size());
    if (fresh) {
      groups.emplace_back();
      SummaryRow row;
      row.algorithm = r.algorithm;
      row.case_label = r.case_label;
      row.context = r.context;
      rows.push_back(std::move(row));
    }
    groups[it->second].push_back(&r);
  }
  std::vector<double> values;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    rows[g].count = groups[g].size();
    for (Metric m : kAllMetrics) {
      values.clear();
      const double scale = m == Metric::FC ? 1.0 / kFcReportScale : 1.0;
      for (const MetricRecord* r : groups[g]) values.push_back(metric_value(*r, m) * scale);
      rows[g].stats[static_cast<std::size_t>(m)] = box_stats(values);
    }
  }
  return rows;
}

}  // namespace mcalloc
