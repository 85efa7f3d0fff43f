// Acceptance suite: one test per criterion, each printing a single
// [PASS]/[FAIL] line. Several criteria are full-horizon Monte Carlo
// reproductions of published table values and take minutes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "banditsim/harness.hpp"
#include "banditsim/theory.hpp"
#include "test_support.hpp"

namespace {

using banditsim::ArmId;
using banditsim::ExperimentData;
using banditsim::FiniteInstance;
using banditsim::Policy;
using banditsim::Preset;
using banditsim::PullLog;
using banditsim::RegretLedger;
using banditsim::Rng;
using banditsim::RunConfig;

bool report(int criterion, const std::string& what, bool ok) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what
            << std::endl;
  return ok;
}

RunConfig find_cell(const Preset& preset, const std::string& instance, const std::string& algo,
                    std::size_t memory_size) {
  for (const banditsim::PresetCell& cell : preset.cells) {
    if (cell.config.instance == instance && cell.config.algo == algo &&
        cell.config.memory_size == memory_size) {
      return cell.config;
    }
  }
  throw std::runtime_error("preset cell not found");
}

struct PaperCell {
  const char* instance;
  const char* algo;
  std::size_t memory_size;
  double mean;  // published mean
  double se;    // published standard error
};

// |ours - published| <= 3 sqrt(se_ours^2 + se_published^2)
bool consistent_with(const banditsim::AggregateStats& ours, const PaperCell& cell,
                     std::string* detail) {
  const double band = 3.0 * std::sqrt(ours.se * ours.se + cell.se * cell.se);
  const double gap = std::fabs(ours.mean - cell.mean);
  *detail = std::string(cell.instance) + "/" + cell.algo + "/M" +
            std::to_string(cell.memory_size) + ": ours " + std::to_string(ours.mean / 1e5) +
            "e5 (se " + std::to_string(ours.se / 1e5) + "e5) vs published " +
            std::to_string(cell.mean / 1e5) + "e5 (se " + std::to_string(cell.se / 1e5) +
            "e5), gap " + std::to_string(gap / 1e5) + "e5, 3se band " +
            std::to_string(band / 1e5) + "e5";
  return gap <= band;
}

// Criterion 2 and criterion 9 share the same full-size preset cell; run it
// once serially and once in parallel.
struct Table2CellData {
  RunConfig config;
  ExperimentData serial;
  ExperimentData parallel;
};

const Table2CellData& table2_cell() {
  static const Table2CellData data = [] {
    Table2CellData d;
    d.config = find_cell(banditsim::make_preset("table2"), "I1", "qucbm", 2);
    d.serial = banditsim::run_experiment_data(d.config, 1);
    d.parallel = banditsim::run_experiment_data(d.config, 2);
    return d;
  }();
  return data;
}

TEST(Acceptance, Criterion1Table1Reproduction) {
  const Preset table1 = banditsim::make_preset("table1");
  const PaperCell cells[] = {
      {"I1", "qucbm", 2, 1.84e5, 0.17e5},
      {"I2", "qucbm", 2, 0.41e5, 0.02e5},
      {"I4", "qtsm", 10, 0.30e5, 0.02e5},
      {"I1", "qmossm", 10, 1.69e5, 0.15e5},
  };
  bool ok = true;
  std::string summary;
  for (const PaperCell& cell : cells) {
    const RunConfig config = find_cell(table1, cell.instance, cell.algo, cell.memory_size);
    const ExperimentData data = banditsim::run_experiment_data(config);
    std::string detail;
    const bool cell_ok = consistent_with(data.regret_star_stats, cell, &detail);
    std::cout << "  " << (cell_ok ? "ok   " : "MISS ") << detail << std::endl;
    ok = ok && cell_ok;
  }
  EXPECT_TRUE(report(1, "table-1 cells statistically consistent (alpha=0.347, 20 runs)", ok));
}

TEST(Acceptance, Criterion2Table2Reproduction) {
  const PaperCell cell = {"I1", "qucbm", 2, 3.69e5, 0.34e5};
  std::string detail;
  const bool ok = consistent_with(table2_cell().parallel.regret_star_stats, cell, &detail);
  std::cout << "  " << detail << std::endl;
  EXPECT_TRUE(report(2, "table-2 cell statistically consistent (alpha=0.205, 20 runs)", ok));
}

TEST(Acceptance, Criterion3ScheduleOracleEquivalence) {
  struct Config {
    std::size_t num_arms;
    std::size_t memory;
    std::uint64_t horizon;
  };
  const Config configs[] = {{100, 2, 1000000}, {10, 4, 100000}, {3, 2, 10000}};
  bool ok = true;
  for (const Config& c : configs) {
    const FiniteInstance inst = banditsim::make_linear_instance(c.num_arms);
    RegretLedger ledger;
    Rng rng(1);
    banditsim::UcbmTrace trace;
    const banditsim::UcbmResult result =
        run_ucbm(inst, c.memory, Policy::ucb1(), c.horizon, ledger, rng, &trace);

    const std::uint64_t expected = banditsim::subphase_count(c.num_arms, c.memory);
    std::map<int, std::uint64_t> subphases;
    std::map<int, bool> truncated;
    int last_phase = 0;
    for (const banditsim::SubphaseRecord& rec : trace.subphases) {
      subphases[rec.phase] += 1;
      const std::uint64_t full =
          banditsim::subphase_budget(static_cast<std::uint64_t>(rec.phase), c.memory);
      if (rec.budget != full) truncated[rec.phase] = true;
      last_phase = std::max(last_phase, rec.phase);
    }
    for (const auto& [phase, count] : subphases) {
      const bool completed = phase != last_phase || (count == expected && !truncated[phase]);
      if (completed && count != expected) ok = false;
    }
    const std::uint64_t bound = banditsim::phase_count_bound(c.num_arms, c.memory, c.horizon);
    if (static_cast<std::uint64_t>(result.phases_started) > bound) ok = false;
    std::cout << "  K=" << c.num_arms << " M=" << c.memory << " T=" << c.horizon << ": "
              << result.phases_started << " phases (bound " << bound << "), h0 " << expected
              << std::endl;
  }
  EXPECT_TRUE(report(3, "traces show exactly h0 sub-phases per completed phase, phases <= x0", ok));
}

TEST(Acceptance, Criterion4MemoryBoundInvariant) {
  bool ok = true;
  auto check = [&](const char* instance, const char* algo, std::size_t m) {
    RunConfig config;
    config.instance = instance;
    config.algo = algo;
    config.memory_size = m;
    config.alpha = 0.347;
    config.horizon = 1000000;
    config.runs = 1;
    config.base_seed = 5;
    const ExperimentData data = banditsim::run_experiment_data(config);
    const std::size_t observed = data.runs[0].max_memory_slots;
    const std::size_t limit = std::string(algo) == "ucb1" ? 100 : m;
    std::cout << "  " << instance << "/" << algo << "/M" << m << ": max slots " << observed
              << " (limit " << limit << ")" << std::endl;
    if (observed > limit) ok = false;
  };
  check("B100L", "ucbm", 2);
  check("B100L", "tsm", 2);
  check("B100L", "mossm", 2);
  check("B100L", "ucbm", 10);
  check("B100L", "ucb1", 100);
  check("I1", "qucbm", 2);
  check("I2", "qtsm", 2);
  check("I1", "qmossm", 10);
  EXPECT_TRUE(report(4, "instrumented store never exceeds M slots over 1e6-pull runs", ok));
}

TEST(Acceptance, Criterion5UnconstrainedEquivalence) {
  const FiniteInstance instances[] = {
      banditsim::make_linear_instance(10),
      banditsim::make_alpha_instance(10, 0.3),
      banditsim::make_linear_instance(100),
  };
  bool ok = true;
  for (const FiniteInstance& inst : instances) {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      RegretLedger engine_ledger;
      Rng engine_rng(seed);
      PullLog engine_log;
      const banditsim::UcbmResult result =
          run_ucbm(inst, inst.num_arms(), Policy::ucb1(), 100000, engine_ledger, engine_rng,
                   nullptr, &engine_log);
      RegretLedger plain_ledger;
      Rng plain_rng(seed);
      PullLog plain_log;
      const std::vector<ArmId> ids = inst.arm_ids();
      banditsim::run_forecaster<const FiniteInstance>(
          ids, 100000, Policy::ucb1(), inst, plain_ledger, inst.mu_star(), plain_rng, &plain_log);
      if (!result.unconstrained || engine_log != plain_log ||
          engine_ledger.regret_star() != plain_ledger.regret_star()) {
        ok = false;
      }
    }
  }
  EXPECT_TRUE(report(5, "M >= K pull traces bit-identical to the plain forecaster (3x3)", ok));
}

TEST(Acceptance, Criterion6SublinearityOnLinearHundredArms) {
  constexpr double kThreshold = 1.225e5;  // 25% of the uniform-random pseudo-regret 0.49e6
  bool ok = true;
  for (const char* algo : {"ucbm", "tsm", "mossm"}) {
    RunConfig config;
    config.instance = "B100L";
    config.algo = algo;
    config.memory_size = 2;
    config.horizon = 1000000;
    config.runs = 50;
    config.base_seed = 100;
    const ExperimentData data = banditsim::run_experiment_data(config);
    std::cout << "  " << algo << ": mean regret " << data.regret_star_stats.mean / 1e5
              << "e5 (se " << data.regret_star_stats.se / 1e5 << "e5), threshold "
              << kThreshold / 1e5 << "e5" << std::endl;
    if (!(data.regret_star_stats.mean < kThreshold)) ok = false;
  }
  EXPECT_TRUE(report(6, "B100L/M=2 mean regret at 1e6 below 1.225e5 for all three engines", ok));
}

TEST(Acceptance, Criterion7SimpleRegretBudgetSweep) {
  const FiniteInstance inst({0.9, 0.1});
  auto wrong_rate = [&](std::uint64_t budget) {
    int wrong = 0;
    for (int seed = 0; seed < 200; ++seed) {
      RegretLedger ledger;
      Rng rng(static_cast<std::uint64_t>(seed) + 1);
      const std::vector<ArmId> arms = {1, 2};
      if (banditsim::run_forecaster<const FiniteInstance>(arms, budget, Policy::ucb1(), inst,
                                                          ledger, inst.mu_star(), rng) != 1u) {
        ++wrong;
      }
    }
    return wrong / 200.0;
  };
  const double r8 = wrong_rate(8);
  const double r64 = wrong_rate(64);
  const double r512 = wrong_rate(512);
  std::cout << "  wrong-recommendation rates: budget 8 -> " << r8 << ", 64 -> " << r64
            << ", 512 -> " << r512 << std::endl;
  const bool ok = r8 >= r64 && r64 >= r512 && r512 < 0.02;
  EXPECT_TRUE(report(7, "wrong-recommendation rate shrinks over budgets {8,64,512}, ends < 2%", ok));
}

TEST(Acceptance, Criterion8OracleUnitValues) {
  bool ok = true;
  if (banditsim::subphase_count(100, 2) != 99) ok = false;
  if (banditsim::phase_count_bound(100, 2, 1000000) != 14) ok = false;
  const double gamma = banditsim::gamma_constant();
  if (!(gamma > 0.53 && gamma < 0.531)) ok = false;

  // Monte Carlo agreement of the empty-set probability, 2000 trials
  constexpr double kRho = 0.5;
  const std::uint64_t n1 = banditsim::qrm_schedule(0.347, 2, 1).arm_target;
  int misses = 0;
  constexpr int kTrials = 2000;
  for (int trial = 0; trial < kTrials; ++trial) {
    banditsim::ArmReservoir res(banditsim::MeanPrior::Uniform, 1.0);
    Rng rng(static_cast<std::uint64_t>(trial) + 1);
    const double mu_rho = banditsim::quantile_mu_rho(res, kRho);
    bool hit = false;
    for (std::uint64_t i = 0; i < n1; ++i) {
      if (res.true_mean(banditsim::sample_arm(res, rng)) >= mu_rho) hit = true;
    }
    if (!hit) ++misses;
  }
  const double expected = banditsim::pr_empty(kRho, n1);
  const double freq = static_cast<double>(misses) / kTrials;
  const double se = banditsim::testing::binomial_standard_error(expected, kTrials);
  std::cout << "  h0(100,2) = " << banditsim::subphase_count(100, 2)
            << ", x0(100,2,1e6) = " << banditsim::phase_count_bound(100, 2, 1000000)
            << ", gamma = " << gamma << ", pr_empty mc " << freq << " vs " << expected
            << " (3se " << 3.0 * se << ")" << std::endl;
  if (std::fabs(freq - expected) > 3.0 * se) ok = false;
  EXPECT_TRUE(report(8, "h0/x0/gamma unit values and pr_empty Monte Carlo agreement", ok));
}

TEST(Acceptance, Criterion9DeterminismSerialVsParallel) {
  const Table2CellData& cell = table2_cell();
  const std::string serial_csv = per_run_csv(cell.config, cell.serial);
  const std::string parallel_csv = per_run_csv(cell.config, cell.parallel);
  const bool ok = serial_csv == parallel_csv &&
                  aggregate_csv(cell.config, cell.serial) ==
                      aggregate_csv(cell.config, cell.parallel);
  EXPECT_TRUE(report(9, "table-2 preset cell rerun: serial and parallel CSV byte-identical", ok));
}

}  // namespace
