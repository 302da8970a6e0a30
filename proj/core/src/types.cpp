#include "mcalloc/types.hpp"

namespace mcalloc {

ChannelSet ChannelSet::first_n(int n) {
  if (n < 0 || n > kMaxChannels) {
    throw std::out_of_range("ChannelSet::first_n: " + std::to_string(n));
  }
  if (n == kMaxChannels) return ChannelSet{~std::uint64_t{0}};
  return ChannelSet{(std::uint64_t{1} << n) - 1};
}

ChannelSet ChannelSet::of(const std::vector<ChannelId>& ids) {
  ChannelSet s;
  for (ChannelId m : ids) s.insert(m);
  return s;
}

std::vector<ChannelId> ChannelSet::ids() const {
  std::vector<ChannelId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](ChannelId m) { out.push_back(m); });
  return out;
}

std::string_view to_string(Context c) {
  return c == Context::Capacity ? "capacity" : "utility";
}

Context parse_context(std::string_view s) {
  if (s == "capacity") return Context::Capacity;
  if (s == "utility") return Context::Utility;
  throw std::invalid_argument("unknown context '" + std::string(s) + "'");
}

std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::I: return "I";
    case CaseLabel::II: return "II";
    case CaseLabel::III: return "III";
  }
  return "?";
}

CaseLabel parse_case(std::string_view s) {
  if (s == "I") return CaseLabel::I;
  if (s == "II") return CaseLabel::II;
  if (s == "III") return CaseLabel::III;
  throw std::invalid_argument("unknown case '" + std::string(s) + "'");
}

double suppressed_fraction(CaseLabel c) {
  switch (c) {
    case CaseLabel::I: return 0.0;
    case CaseLabel::II: return 0.25;
    case CaseLabel::III: return 0.5;
  }
  return 0.0;
}

}  // namespace mcalloc
