#pragma once

#include <span>
#include <stdexcept>

#include "mcalloc/types.hpp"

namespace mcalloc {

class Scenario;

// Thrown when a numerical routine fails to meet its convergence contract.
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadioParams {
  double bandwidth_hz = 20e6;
  double ref_distance_m = 15.0;
  double ref_path_loss_db = 70.28;
  double path_loss_exponent = 2.0;
  double interference_power_dbm = -50.0;
  double epsilon = 1e-9;       // outage probability target
  // K for unobstructed links, in dB. The default is 10*log10(14.1), i.e. a
  // linear K of 14.1; reading 14.1 as dB (linear 25.7) gives capacities far
  // above the reference results.
  double rician_ref_db = 11.492191126553799;

  void validate() const;
  double rician_ref_linear() const;
};

// Link between one tenant and one base station, linear scale.
struct LinkState {
  double mean_sir_linear = 0.0;
  double rician_linear = 0.0;
};

double db_to_linear(double db);

// Log-distance path loss in dB.
double path_loss_db(double d_m, const RadioParams& params);

// Local mean SIR (linear) at distance d_m from a transmitter of the given power.
double mean_sir_linear(double tx_power_dbm, double d_m, const RadioParams& params);

// Outage probability of one Rician/Rayleigh link at SIR threshold gamma_th.
double outage_prob_single(double gamma_th, const LinkState& link);

// Joint outage of independent links under selection combining (product).
// An empty set is in outage with certainty.
double outage_prob_multi(double gamma_th, std::span<const LinkState> links);

// Largest SIR threshold whose joint outage probability does not exceed
// epsilon, found by bracketed bisection. Returns 0 when no link carries
// signal. Throws NumericalFault if the bracket cannot be closed.
double outage_threshold(std::span<const LinkState> links, double epsilon);

// Epsilon-outage capacity in Mbps.
double outage_capacity(std::span<const LinkState> links, const RadioParams& params);

// Connectivity function: outage capacity (Mbps) tenant k achieves on the given
// channel set. Depends only on the set, never on other tenants' channels.
double rho(TenantId tenant, ChannelSet channels, const Scenario& scenario);

}  // namespace mcalloc
