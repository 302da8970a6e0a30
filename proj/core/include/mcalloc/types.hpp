#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcalloc {

using TenantId = int;
using ChannelId = int;
using BsId = int;

// Channel ids are dense indices, so a subset fits in one machine word.
inline constexpr int kMaxChannels = 64;

// Set of channel ids in [0, kMaxChannels).
class ChannelSet {
 public:
  constexpr ChannelSet() = default;
  constexpr explicit ChannelSet(std::uint64_t bits) : bits_(bits) {}

  static ChannelSet single(ChannelId m) { return ChannelSet{bit(m)}; }
  // {0, 1, ..., n-1}
  static ChannelSet first_n(int n);
  static ChannelSet of(const std::vector<ChannelId>& ids);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  bool contains(ChannelId m) const { return (bits_ & bit(m)) != 0; }

  void insert(ChannelId m) { bits_ |= bit(m); }
  void erase(ChannelId m) { bits_ &= ~bit(m); }
  ChannelSet with(ChannelId m) const { return ChannelSet{bits_ | bit(m)}; }
  ChannelSet without(ChannelId m) const { return ChannelSet{bits_ & ~bit(m)}; }

  constexpr bool intersects(ChannelSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(ChannelSet o) const { return (bits_ & ~o.bits_) == 0; }

  // Ids in ascending order.
  std::vector<ChannelId> ids() const;

  friend constexpr ChannelSet operator|(ChannelSet a, ChannelSet b) { return ChannelSet{a.bits_ | b.bits_}; }
  friend constexpr ChannelSet operator&(ChannelSet a, ChannelSet b) { return ChannelSet{a.bits_ & b.bits_}; }
  friend constexpr ChannelSet operator-(ChannelSet a, ChannelSet b) { return ChannelSet{a.bits_ & ~b.bits_}; }
  friend constexpr bool operator==(ChannelSet, ChannelSet) = default;

  // Visit members in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    std::uint64_t b = bits_;
    while (b != 0) {
      f(static_cast<ChannelId>(std::countr_zero(b)));
      b &= b - 1;
    }
  }

 private:
  static std::uint64_t bit(ChannelId m) {
    if (m < 0 || m >= kMaxChannels) {
      throw std::out_of_range("channel id " + std::to_string(m) + " outside [0, 64)");
    }
    return std::uint64_t{1} << m;
  }

  std::uint64_t bits_ = 0;
};

// Whether allocators score raw outage capacity or the saturating utility.
enum class Context { Capacity, Utility };

std::string_view to_string(Context c);
Context parse_context(std::string_view s);

// Outage case: share of tenant-BS pairs whose Rician factor is forced to 0.
enum class CaseLabel { I, II, III };

std::string_view to_string(CaseLabel c);
CaseLabel parse_case(std::string_view s);
double suppressed_fraction(CaseLabel c);

}  // namespace mcalloc
