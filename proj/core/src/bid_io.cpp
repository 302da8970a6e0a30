#include "mcalloc/bid_io.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

namespace mcalloc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  std::string tmp(s);
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size();
}

bool parse_int(std::string_view s, long& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

}  // namespace

std::string bid_matrix_to_csv(const BidMatrix& matrix, bool header) {
  std::string out;
  if (header) {
    for (int m = 0; m < matrix.n_channels; ++m) out += fmt::format("ch{},", m + 1);
    out += "value,bidder\n";
  }
  for (const Bid& b : matrix.bids) {
    for (int m = 0; m < matrix.n_channels; ++m) out += b.bundle.contains(m) ? "1," : "0,";
    out += fmt::format("{},{}\n", b.value, b.bidder + 1);
  }
  return out;
}

BidMatrix bid_matrix_from_csv(std::string_view text) {
  BidMatrix matrix;
  matrix.n_channels = -1;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool first_content = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line);
    if (cells.size() < 3) {
      throw std::invalid_argument(fmt::format("bid csv line {}: need at least 3 columns", line_no));
    }
    double probe = 0.0;
    if (first_content && !parse_double(cells.front(), probe)) {
      first_content = false;
      matrix.n_channels = static_cast<int>(cells.size()) - 2;
      continue;
    }
    first_content = false;
    const int n = static_cast<int>(cells.size()) - 2;
    if (matrix.n_channels < 0) matrix.n_channels = n;
    if (n != matrix.n_channels) {
      throw std::invalid_argument(fmt::format("bid csv line {}: expected {} columns, got {}", line_no,
                                              matrix.n_channels + 2, cells.size()));
    }
    if (n > kMaxChannels) throw std::invalid_argument("bid csv: too many channel columns");
    Bid bid;
    for (int m = 0; m < n; ++m) {
      if (cells[m] == "1") {
        bid.bundle.insert(m);
      } else if (cells[m] != "0") {
        throw std::invalid_argument(
            fmt::format("bid csv line {}: channel column {} must be 0 or 1", line_no, m + 1));
      }
    }
    if (!parse_double(cells[n], bid.value)) {
      throw std::invalid_argument(fmt::format("bid csv line {}: bad value '{}'", line_no, cells[n]));
    }
    long bidder = 0;
    if (!parse_int(cells[n + 1], bidder) || bidder < 1) {
      throw std::invalid_argument(
          fmt::format("bid csv line {}: bidder must be a positive integer", line_no));
    }
    bid.bidder = static_cast<TenantId>(bidder - 1);
    matrix.bids.push_back(bid);
  }
  if (matrix.n_channels < 0) matrix.n_channels = 0;
  return matrix;
}

}  // namespace mcalloc
