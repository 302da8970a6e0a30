#include "mcalloc/algorithms.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

#include "mcalloc/alloc_matching.hpp"

namespace mcalloc {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::R: return "R";
    case Algorithm::SR1: return "SR1";
    case Algorithm::SR2: return "SR2";
    case Algorithm::WS: return "WS";
    case Algorithm::ORR: return "ORR";
    case Algorithm::GS: return "GS";
    case Algorithm::MRM: return "MRM";
    case Algorithm::MRGS: return "MRGS";
    case Algorithm::TTC: return "TTC";
    case Algorithm::CA: return "CA";
    case Algorithm::FECA: return "FECA";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view s) {
  std::string upper(s);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == upper) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

bool is_stochastic(Algorithm a) {
  return a == Algorithm::R || a == Algorithm::SR1 || a == Algorithm::SR2;
}

Assignment run_algorithm(Algorithm a, const Scenario& scenario, Context context,
                         const AlgorithmSettings& settings, Rng& rng) {
  switch (a) {
    case Algorithm::R: return allocate_random(scenario, settings.baseline, rng);
    case Algorithm::SR1: return allocate_sr1(scenario, settings.baseline, rng);
    case Algorithm::SR2: return allocate_sr2(scenario, settings.baseline, rng);
    case Algorithm::WS: return allocate_ws(scenario, context, rng);
    case Algorithm::ORR: return allocate_orr(scenario, context, rng);
    case Algorithm::GS: return allocate_gs(scenario, context, settings.gs_quota, rng);
    case Algorithm::MRM: {
      const auto mins = fairness_minimums(scenario, context);
      return allocate_mrm(scenario, context, mins, settings.mrm_quota, rng);
    }
    case Algorithm::MRGS: return allocate_mrgs(scenario, context, rng);
    case Algorithm::TTC: return allocate_ttc(scenario, context, rng);
    case Algorithm::CA: return allocate_ca(scenario, context, settings.auction, rng);
    case Algorithm::FECA: return allocate_feca(scenario, context, settings.auction, rng);
  }
  throw std::invalid_argument("run_algorithm: bad algorithm");
}

}  // namespace mcalloc
