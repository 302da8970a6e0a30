#pragma once

#include <array>
#include <string_view>

#include "mcalloc/alloc_auction.hpp"
#include "mcalloc/alloc_baseline.hpp"
#include "mcalloc/assignment.hpp"
#include "mcalloc/rng.hpp"
#include "mcalloc/scenario.hpp"

namespace mcalloc {

enum class Algorithm { R, SR1, SR2, WS, ORR, GS, MRM, MRGS, TTC, CA, FECA };

inline constexpr std::array<Algorithm, 11> kAllAlgorithms{
    Algorithm::R,   Algorithm::SR1, Algorithm::SR2,  Algorithm::WS,  Algorithm::ORR, Algorithm::GS,
    Algorithm::MRM, Algorithm::MRGS, Algorithm::TTC, Algorithm::CA, Algorithm::FECA};

std::string_view to_string(Algorithm a);
// Case-insensitive. Throws std::invalid_argument for unknown names.
Algorithm parse_algorithm(std::string_view s);

// R, SR1 and SR2 ignore the context and are averaged over repetitions.
bool is_stochastic(Algorithm a);

struct AlgorithmSettings {
  BaselineConfig baseline;
  int gs_quota = 4;
  int mrm_quota = 4;
  AuctionConfig auction;
};

Assignment run_algorithm(Algorithm a, const Scenario& scenario, Context context,
                         const AlgorithmSettings& settings, Rng& rng);

}  // namespace mcalloc
