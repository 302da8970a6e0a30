#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mcalloc/alloc_auction.hpp"
#include "mcalloc/bid_io.hpp"
#include "mcalloc/harness.hpp"
#include "mcalloc/scenario_io.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_run(const std::string& config_path, const std::vector<std::pair<std::string, std::string>>& overrides,
            bool quiet) {
  mcalloc::RunConfig cfg;
  if (!config_path.empty()) mcalloc::apply_config_text(read_text(config_path), cfg);
  for (const auto& [key, value] : overrides) mcalloc::apply_config_value(key, value, cfg);
  cfg.validate();

  std::size_t last_pct = 101;
  auto progress = [&](std::size_t done, std::size_t total) {
    if (quiet) return;
    const std::size_t pct = done * 100 / total;
    if (pct != last_pct) {
      last_pct = pct;
      std::cerr << fmt::format("\r{:3d}% ({}/{})", pct, done, total) << std::flush;
    }
  };
  const mcalloc::RunResult result = mcalloc::run(cfg, progress);
  if (!quiet) std::cerr << '\n';
  std::cout << fmt::format("{} records written to {}\n", result.records.size(), cfg.out_dir);
  if (!result.faults.empty()) {
    std::cerr << fmt::format("{} faults, see {}/faults.csv\n", result.faults.size(), cfg.out_dir);
    return 2;
  }
  return 0;
}

int cmd_solve_wdp(const std::string& path) {
  const mcalloc::BidMatrix matrix = mcalloc::bid_matrix_from_csv(read_text(path));
  int n_bidders = 0;
  for (const auto& b : matrix.bids) n_bidders = std::max(n_bidders, b.bidder + 1);
  const mcalloc::AuctionOutcome out = mcalloc::solve_bid_matrix(matrix, n_bidders);
  std::cout << fmt::format("objective: {}\n", out.objective);
  std::string accepted;
  for (std::size_t i : out.accepted) accepted += fmt::format("{}{}", accepted.empty() ? "" : ",", i + 1);
  std::cout << "accepted bids: " << accepted << '\n';
  for (int k = 0; k < n_bidders; ++k) {
    std::string chans;
    out.assignment.channels_of(k).for_each(
        [&](int m) { chans += fmt::format("{}{}", chans.empty() ? "" : ",", m + 1); });
    std::cout << fmt::format("bidder {}: {{{}}}\n", k + 1, chans);
  }
  std::string free;
  out.assignment.unassigned().for_each(
      [&](int m) { free += fmt::format("{}{}", free.empty() ? "" : ",", m + 1); });
  std::cout << "unassigned channels: " << free << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-connectivity channel allocation simulator"};
  app.set_version_flag("--version", std::string(mcalloc::version()));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Monte Carlo sweep");
  std::string config_path;
  run->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  std::vector<std::pair<std::string, std::string>> overrides;
  auto add_override = [&](const std::string& flag, const std::string& key, const std::string& help) {
    run->add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); }, help);
  };
  add_override("--scenarios", "scenarios", "number of scenarios");
  add_override("--seed", "seed", "base seed");
  add_override("--cases", "cases", "comma list of I,II,III");
  add_override("--contexts", "contexts", "comma list of capacity,utility");
  add_override("--algorithms", "algorithms", "comma list, e.g. GS,CA,FECA");
  add_override("--reps", "reps", "repetitions for R/SR1/SR2");
  add_override("--out", "out", "output directory");
  add_override("--workers", "workers", "worker threads, 0 = all cores");
  std::vector<std::string> sets;
  run->add_option("--set", sets, "extra key=value override, repeatable");
  bool no_timing = false;
  run->add_flag("--no-timing", no_timing, "write wall_time_s as 0");
  bool quiet = false;
  run->add_flag("-q,--quiet", quiet, "no progress output");

  auto* agg = app.add_subcommand("aggregate", "Recompute summaries from records.csv");
  std::string in_dir;
  agg->add_option("--in", in_dir, "run directory")->required()->check(CLI::ExistingDirectory);

  auto* dump = app.add_subcommand("dump-scenario", "Print a generated scenario as JSON");
  std::uint64_t dump_seed = 1;
  std::string dump_case = "I";
  dump->add_option("--seed", dump_seed, "scenario seed");
  dump->add_option("--case", dump_case, "I, II or III");

  auto* wdp = app.add_subcommand("solve-wdp", "Solve a winner determination problem from a bid CSV");
  std::string bids_path;
  wdp->add_option("--bids", bids_path, "bid matrix CSV")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value");
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
      }
      if (no_timing) overrides.emplace_back("timing", "false");
      return cmd_run(config_path, overrides, quiet);
    }
    if (*agg) {
      const auto rows = mcalloc::aggregate_directory(in_dir);
      std::cout << fmt::format("{} summary rows written to {}\n", rows.size(), in_dir);
      return 0;
    }
    if (*dump) {
      mcalloc::GeneratorConfig gen;
      gen.outage_case = mcalloc::parse_case(dump_case);
      std::cout << mcalloc::scenario_to_json(mcalloc::generate(gen, dump_seed)) << '\n';
      return 0;
    }
    if (*wdp) return cmd_solve_wdp(bids_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
