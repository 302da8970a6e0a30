#pragma once

#include <cstdint>
#include <vector>

#include "mcalloc/radio.hpp"
#include "mcalloc/types.hpp"

namespace mcalloc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct BaseStation {
  BsId id = 0;
  Point position;
  double tx_power_dbm = 0.0;
  int num_channels = 0;
};

struct Channel {
  ChannelId id = 0;
  BsId bs_id = 0;
};

struct Tenant {
  TenantId id = 0;
  Point position;
  double c_min_mbps = 0.0;
  double c_max_mbps = 0.0;
};

using Matrix = std::vector<std::vector<double>>;

// Immutable world model handed to every allocator.
//
// Construction validates the parts and precomputes the tenant x BS link table
// and the tenant x channel single-connectivity capacity matrix.
class Scenario {
 public:
  Scenario(RadioParams params, std::vector<BaseStation> base_stations, std::vector<Channel> channels,
           std::vector<Tenant> tenants, Matrix rician_mask, std::uint64_t seed, CaseLabel case_label);

  const RadioParams& params() const { return params_; }
  const std::vector<BaseStation>& base_stations() const { return base_stations_; }
  const std::vector<Channel>& channels() const { return channels_; }
  const std::vector<Tenant>& tenants() const { return tenants_; }
  // tenant x BS matrix of linear Rician factors.
  const Matrix& rician_mask() const { return rician_mask_; }
  std::uint64_t seed() const { return seed_; }
  CaseLabel case_label() const { return case_label_; }

  int n_tenants() const { return static_cast<int>(tenants_.size()); }
  int n_channels() const { return static_cast<int>(channels_.size()); }
  int n_base_stations() const { return static_cast<int>(base_stations_.size()); }
  ChannelSet all_channels() const { return ChannelSet::first_n(n_channels()); }

  const Tenant& tenant(TenantId k) const;
  const Channel& channel(ChannelId m) const;
  BsId bs_of(ChannelId m) const { return channel(m).bs_id; }

  double distance(TenantId k, BsId i) const;
  const LinkState& link(TenantId k, BsId i) const;
  const LinkState& channel_link(TenantId k, ChannelId m) const { return link(k, bs_of(m)); }

  // rho(k, {m}), cached at construction.
  double single_link_capacity(TenantId k, ChannelId m) const;
  const Matrix& single_link_capacities() const { return single_capacity_; }

 private:
  void check_tenant(TenantId k) const;

  RadioParams params_;
  std::vector<BaseStation> base_stations_;
  std::vector<Channel> channels_;
  std::vector<Tenant> tenants_;
  Matrix rician_mask_;
  std::uint64_t seed_;
  CaseLabel case_label_;

  std::vector<LinkState> links_;  // row-major n_T x n_BS
  Matrix single_capacity_;        // n_T x n_ch
};

// Fresh computation of rho(k, {m}) for every tenant-channel pair.
Matrix single_link_capacity_matrix(const Scenario& scenario);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Randomized scenario family. Defaults reproduce the reference setup:
// 100 x 50 m hall, 8 wall-mounted BSs, 6 tenants, at most 20 channels.
struct GeneratorConfig {
  double width_m = 100.0;
  double height_m = 50.0;
  int n_base_stations = 8;
  int n_tenants = 6;
  Interval tx_power_dbm{15.0, 25.0};
  std::vector<int> channels_per_bs_choices{1, 2, 3};
  int channel_cap = 20;
  Interval c_min_mbps{0.1, 0.2};
  Interval c_max_mbps{15.0, 25.0};
  CaseLabel outage_case = CaseLabel::I;
  RadioParams radio;

  double case_fraction() const { return suppressed_fraction(outage_case); }
  void validate() const;
};

// Deterministic in (config, seed). Draw order: per BS (perimeter position,
// transmit power, channel count), then per tenant (x, y, C_min, C_max), then
// the outage mask. The mask comes last, so one seed yields the same geometry
// in every outage case.
Scenario generate(const GeneratorConfig& config, std::uint64_t seed);

}  // namespace mcalloc
