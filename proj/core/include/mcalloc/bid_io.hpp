#pragma once

#include <string>
#include <string_view>

#include "mcalloc/alloc_auction.hpp"

namespace mcalloc {

// CSV layout: one row per bid, n_channels 0/1 columns, then value, then the
// bidder as a 1-based id.
std::string bid_matrix_to_csv(const BidMatrix& matrix, bool header = true);

// Inverse of bid_matrix_to_csv. A non-numeric first row is taken as a header;
// blank lines and lines starting with '#' are skipped. Throws
// std::invalid_argument on malformed input.
BidMatrix bid_matrix_from_csv(std::string_view text);

}  // namespace mcalloc
