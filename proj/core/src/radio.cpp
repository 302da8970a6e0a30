#include "mcalloc/radio.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mcalloc/scenario.hpp"

namespace mcalloc {

namespace {

constexpr int kMaxBisectionIterations = 200;
constexpr double kRelativeBracketTolerance = 1e-12;
constexpr double kUpperBracketLimit = 0x1p1000;

}  // namespace

void RadioParams::validate() const {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth_hz must be positive");
  if (!(ref_distance_m > 0.0)) throw std::invalid_argument("ref_distance_m must be positive");
  if (!(path_loss_exponent > 0.0)) throw std::invalid_argument("path_loss_exponent must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

double RadioParams::rician_ref_linear() const { return db_to_linear(rician_ref_db); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double path_loss_db(double d_m, const RadioParams& params) {
  if (!(d_m > 0.0)) {
    throw std::domain_error("path_loss_db: distance must be positive, got " + std::to_string(d_m));
  }
  return params.ref_path_loss_db +
         10.0 * params.path_loss_exponent * std::log10(d_m / params.ref_distance_m);
}

double mean_sir_linear(double tx_power_dbm, double d_m, const RadioParams& params) {
  const double sir_db = tx_power_dbm - path_loss_db(d_m, params) - params.interference_power_dbm;
  return db_to_linear(sir_db);
}

double outage_prob_single(double gamma_th, const LinkState& link) {
  if (!(gamma_th > 0.0)) {
    throw std::domain_error("outage_prob_single: threshold must be positive");
  }
  if (link.mean_sir_linear <= 0.0) return 1.0;
  const double denom = gamma_th + link.mean_sir_linear;
  return (gamma_th / denom) * std::exp(-link.rician_linear * link.mean_sir_linear / denom);
}

double outage_prob_multi(double gamma_th, std::span<const LinkState> links) {
  double p = 1.0;
  for (const LinkState& l : links) p *= outage_prob_single(gamma_th, l);
  return p;
}

double outage_threshold(std::span<const LinkState> links, double epsilon) {
  // Links without signal contribute a factor of exactly 1.
  std::vector<LinkState> live;
  live.reserve(links.size());
  for (const LinkState& l : links) {
    if (l.mean_sir_linear > 0.0) live.push_back(l);
  }
  if (live.empty()) return 0.0;

  // P_out -> 0 as the threshold -> 0 and -> 1 as it grows, so [0, hi] brackets
  // the root once P_out(hi) > epsilon.
  double lo = 0.0;
  double hi = 1.0;
  while (outage_prob_multi(hi, live) <= epsilon) {
    lo = hi;
    hi *= 2.0;
    if (hi > kUpperBracketLimit) {
      throw NumericalFault("outage_threshold: no upper bracket below 2^1000");
    }
  }
  for (int it = 0; it < kMaxBisectionIterations; ++it) {
    if (hi - lo <= kRelativeBracketTolerance * hi) return lo;
    const double mid = 0.5 * (lo + hi);
    if (outage_prob_multi(mid, live) > epsilon) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw NumericalFault("outage_threshold: bisection did not converge in " +
                       std::to_string(kMaxBisectionIterations) + " iterations");
}

double outage_capacity(std::span<const LinkState> links, const RadioParams& params) {
  const double gamma = outage_threshold(links, params.epsilon);
  if (gamma <= 0.0) return 0.0;
  // log1p keeps precision for the near-zero thresholds of Rayleigh links.
  return params.bandwidth_hz * std::log1p(gamma) / std::numbers::ln2 / 1e6;
}

double rho(TenantId tenant, ChannelSet channels, const Scenario& scenario) {
  LinkState buf[kMaxChannels];
  std::size_t n = 0;
  channels.for_each([&](ChannelId m) { buf[n++] = scenario.channel_link(tenant, m); });
  return outage_capacity(std::span<const LinkState>(buf, n), scenario.params());
}

}  // namespace mcalloc
