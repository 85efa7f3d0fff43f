// bandit-sim: experiment runner for the bounded arm-memory bandit toolkit.
//
//   bandit-sim run    --instance B100L --algo ucbm --M 2 --horizon 1000000
//                     --runs 100 --seed 1 --out out.csv
//   bandit-sim preset table1 --out-dir results/
//   bandit-sim oracle subphases 100 2
//
// Replicates run in parallel (BANDIT_THREADS, default: all cores); output
// bytes are independent of the thread count.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banditsim/harness.hpp"
#include "banditsim/theory.hpp"

namespace {

void print_bound(const char* name, const banditsim::BoundReport& report) {
  std::printf("%s = %.17g\n", name, report.value);
  for (const banditsim::BoundTerm& term : report.terms) {
    std::printf("  %s term = %.17g\n", term.name.c_str(), term.value);
  }
}

double arg_as_double(const std::vector<std::string>& args, std::size_t i, const char* name) {
  if (i >= args.size()) {
    throw banditsim::UsageError(std::string("missing oracle argument <") + name + ">");
  }
  char* end = nullptr;
  const double v = std::strtod(args[i].c_str(), &end);
  if (end == nullptr || *end != '\0') {
    throw banditsim::UsageError(std::string("bad numeric argument for <") + name + ">: " + args[i]);
  }
  return v;
}

std::uint64_t arg_as_u64(const std::vector<std::string>& args, std::size_t i, const char* name) {
  const double v = arg_as_double(args, i, name);
  if (v < 0) throw banditsim::UsageError(std::string("<") + name + "> must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

int run_oracle(const std::vector<std::string>& args) {
  if (args.empty()) {
    throw banditsim::UsageError(
        "oracle name required: subphases | phase-bound | finite-bound | quantile-bound | "
        "gamma | r-star | pr-empty | qrm-schedule");
  }
  const std::string& name = args[0];
  if (name == "subphases") {
    std::printf("%llu\n", static_cast<unsigned long long>(banditsim::subphase_count(
                              arg_as_u64(args, 1, "K"), arg_as_u64(args, 2, "M"))));
  } else if (name == "phase-bound") {
    std::printf("%llu\n", static_cast<unsigned long long>(banditsim::phase_count_bound(
                              arg_as_u64(args, 1, "K"), arg_as_u64(args, 2, "M"),
                              arg_as_u64(args, 3, "T"))));
  } else if (name == "finite-bound") {
    print_bound("finite_regret_bound",
                banditsim::finite_regret_bound(arg_as_u64(args, 1, "K"), arg_as_u64(args, 2, "M"),
                                               arg_as_u64(args, 3, "T")));
  } else if (name == "quantile-bound") {
    print_bound("quantile_regret_bound",
                banditsim::quantile_regret_bound(
                    arg_as_double(args, 1, "rho"), arg_as_u64(args, 2, "M"),
                    arg_as_u64(args, 3, "T"), arg_as_double(args, 4, "alpha")));
  } else if (name == "gamma") {
    const banditsim::GammaMax g = banditsim::gamma_constant_detail();
    std::printf("gamma = %.17g (maximizer x = %.17g)\n", g.value, g.arg);
  } else if (name == "r-star") {
    std::printf("%d\n", banditsim::r_star(arg_as_double(args, 1, "rho"),
                                          arg_as_double(args, 2, "alpha"),
                                          arg_as_double(args, 3, "B")));
  } else if (name == "pr-empty") {
    std::printf("%.17g\n",
                banditsim::pr_empty(arg_as_double(args, 1, "rho"), arg_as_u64(args, 2, "n")));
  } else if (name == "qrm-schedule") {
    const banditsim::QrmScheduleEntry e = banditsim::qrm_schedule(
        arg_as_double(args, 1, "alpha"), static_cast<std::size_t>(arg_as_u64(args, 2, "M")),
        static_cast<int>(arg_as_u64(args, 3, "r")));
    std::printf("B = %llu, t_r = %llu, n_r = %llu\n",
                static_cast<unsigned long long>(e.base_horizon),
                static_cast<unsigned long long>(e.round_horizon),
                static_cast<unsigned long long>(e.arm_target));
  } else {
    throw banditsim::UsageError("unknown oracle '" + name +
                                "' (valid: subphases, phase-bound, finite-bound, quantile-bound, "
                                "gamma, r-star, pr-empty, qrm-schedule)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded arm-memory multi-armed bandit simulator"};
  app.require_subcommand(1);

  banditsim::RunConfig config;
  double rho = -1.0;
  std::string trace_path;
  CLI::App* run = app.add_subcommand("run", "Run one experiment configuration");
  run->add_option("--instance", config.instance, "Instance tag: B<K>L, B<K>A<alpha>, I1..I4")
      ->required();
  run->add_option("--algo", config.algo,
                  "Algorithm tag: " + banditsim::valid_algorithm_tags())
      ->required();
  run->add_option("--M", config.memory_size, "Arm memory size")->required();
  run->add_option("--eta", config.eta, "UCB1 exploration scale (default 1.0)");
  run->add_option("--alpha", config.alpha,
                  "Round exponent for quantile algorithms (default 0.205)");
  run->add_option("--rho", rho, "Also track quantile regret against mu_rho");
  run->add_option("--horizon", config.horizon, "Total pulls per run")->required();
  run->add_option("--runs", config.runs, "Replicate count")->required();
  run->add_option("--seed", config.base_seed, "Base seed; run i uses seed+i")->required();
  run->add_option("--out", config.out, "Per-run CSV path (aggregate goes to *.agg.csv)")
      ->required();
  run->add_option("--trace", trace_path,
                  "Optional schedule trace CSV (sub-phases for finite algorithms, rounds for "
                  "quantile algorithms)");

  std::string preset_name;
  std::string out_dir;
  CLI::App* preset = app.add_subcommand("preset", "Run a named experiment preset");
  preset->add_option("name", preset_name, "Preset name (omit to list)");
  preset->add_option("--out-dir", out_dir, "Directory for the preset's CSV files");

  CLI::App* oracle = app.add_subcommand("oracle", "Print closed-form schedule quantities");
  oracle->allow_extras();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (rho >= 0.0) config.rho = rho;
      banditsim::run_experiment(config, 0, trace_path);
      std::cout << "wrote " << config.out << " and " << banditsim::aggregate_path_for(config.out)
                << "\n";
      return 0;
    }
    if (preset->parsed()) {
      if (preset_name.empty()) {
        for (const banditsim::Preset& p : banditsim::list_presets()) {
          std::cout << p.name << ": " << p.summary << " (" << p.cells.size() << " cells)\n";
        }
        return 0;
      }
      if (out_dir.empty()) throw banditsim::UsageError("preset needs --out-dir");
      banditsim::run_preset(preset_name, out_dir);
      std::cout << "wrote preset '" << preset_name << "' results to " << out_dir << "\n";
      return 0;
    }
    if (oracle->parsed()) {
      return run_oracle(oracle->remaining());
    }
  } catch (const banditsim::BanditError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
