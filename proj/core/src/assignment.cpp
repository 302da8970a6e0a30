#include "mcalloc/assignment.hpp"

#include <string>

namespace mcalloc {

Assignment::Assignment(int n_tenants, int n_channels) {
  if (n_tenants < 0 || n_channels < 0 || n_channels > kMaxChannels) {
    throw std::invalid_argument("Assignment: bad dimensions");
  }
  rows_.assign(static_cast<std::size_t>(n_tenants), ChannelSet{});
  owner_.assign(static_cast<std::size_t>(n_channels), -1);
}

Assignment Assignment::from_matrix(const std::vector<std::vector<int>>& matrix, int n_channels) {
  Assignment a(static_cast<int>(matrix.size()), n_channels);
  for (std::size_t k = 0; k < matrix.size(); ++k) {
    if (static_cast<int>(matrix[k].size()) != n_channels) {
      throw std::invalid_argument("Assignment: ragged matrix");
    }
    for (int m = 0; m < n_channels; ++m) {
      const int v = matrix[k][m];
      if (v != 0 && v != 1) throw std::invalid_argument("Assignment: entries must be 0 or 1");
      if (v == 1) {
        if (a.is_assigned(m)) {
          throw std::invalid_argument("Assignment: channel " + std::to_string(m) +
                                      " assigned to more than one tenant");
        }
        a.assign(static_cast<TenantId>(k), m);
      }
    }
  }
  return a;
}

void Assignment::check_tenant(TenantId k) const {
  if (k < 0 || k >= n_tenants()) throw std::out_of_range("Assignment: tenant " + std::to_string(k));
}

void Assignment::check_channel(ChannelId m) const {
  if (m < 0 || m >= n_channels()) throw std::out_of_range("Assignment: channel " + std::to_string(m));
}

void Assignment::assign(TenantId k, ChannelId m) {
  check_tenant(k);
  check_channel(m);
  if (owner_[m] >= 0) {
    throw std::logic_error("Assignment: channel " + std::to_string(m) + " already held by tenant " +
                           std::to_string(owner_[m]));
  }
  owner_[m] = k;
  rows_[k].insert(m);
}

void Assignment::assign_all(TenantId k, ChannelSet channels) {
  channels.for_each([&](ChannelId m) { assign(k, m); });
}

TenantId Assignment::owner(ChannelId m) const {
  check_channel(m);
  return owner_[m];
}

ChannelSet Assignment::channels_of(TenantId k) const {
  check_tenant(k);
  return rows_[k];
}

ChannelSet Assignment::assigned() const {
  ChannelSet s;
  for (ChannelSet r : rows_) s = s | r;
  return s;
}

std::vector<std::vector<int>> Assignment::matrix() const {
  std::vector<std::vector<int>> out(rows_.size(), std::vector<int>(owner_.size(), 0));
  for (std::size_t m = 0; m < owner_.size(); ++m) {
    if (owner_[m] >= 0) out[owner_[m]][m] = 1;
  }
  return out;
}

}  // namespace mcalloc
