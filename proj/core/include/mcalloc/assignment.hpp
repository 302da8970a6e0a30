#pragma once

#include <vector>

#include "mcalloc/types.hpp"

namespace mcalloc {

// Binary tenant x channel assignment matrix. Every channel goes to at most one
// tenant; the class refuses any operation that would break this.
class Assignment {
 public:
  Assignment(int n_tenants, int n_channels);

  // Throws std::invalid_argument if the matrix has a column sum above 1 or
  // entries other than 0/1.
  static Assignment from_matrix(const std::vector<std::vector<int>>& matrix, int n_channels);

  int n_tenants() const { return static_cast<int>(rows_.size()); }
  int n_channels() const { return static_cast<int>(owner_.size()); }

  // Throws std::logic_error if m is already assigned.
  void assign(TenantId k, ChannelId m);
  void assign_all(TenantId k, ChannelSet channels);

  bool is_assigned(ChannelId m) const { return owner(m) >= 0; }
  // Owning tenant, or -1.
  TenantId owner(ChannelId m) const;
  ChannelSet channels_of(TenantId k) const;
  int at(TenantId k, ChannelId m) const { return channels_of(k).contains(m) ? 1 : 0; }

  ChannelSet assigned() const;
  ChannelSet unassigned() const { return ChannelSet::first_n(n_channels()) - assigned(); }

  std::vector<std::vector<int>> matrix() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  void check_tenant(TenantId k) const;
  void check_channel(ChannelId m) const;

  std::vector<ChannelSet> rows_;
  std::vector<TenantId> owner_;
};

}  // namespace mcalloc
