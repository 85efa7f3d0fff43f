#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "banditsim/errors.hpp"
#include "banditsim/forecaster.hpp"
#include "banditsim/instance.hpp"
#include "banditsim/qrm.hpp"
#include "banditsim/regret.hpp"
#include "banditsim/reservoir.hpp"
#include "banditsim/ucbm.hpp"

namespace banditsim {

// ---------------------------------------------------------------------------
// Tags

enum class AlgorithmTag { Ucbm, Tsm, Mossm, Ucb1, Qucbm, Qtsm, Qmossm };

inline const std::vector<std::pair<std::string, AlgorithmTag>>& algorithm_tags() {
  static const std::vector<std::pair<std::string, AlgorithmTag>> tags = {
      {"ucbm", AlgorithmTag::Ucbm},   {"tsm", AlgorithmTag::Tsm},
      {"mossm", AlgorithmTag::Mossm}, {"ucb1", AlgorithmTag::Ucb1},
      {"qucbm", AlgorithmTag::Qucbm}, {"qtsm", AlgorithmTag::Qtsm},
      {"qmossm", AlgorithmTag::Qmossm}};
  return tags;
}

inline std::string valid_algorithm_tags() {
  std::string out;
  for (const auto& [name, tag] : algorithm_tags()) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

inline AlgorithmTag parse_algorithm(const std::string& text) {
  for (const auto& [name, tag] : algorithm_tags()) {
    if (name == text) return tag;
  }
  throw UsageError("unknown algorithm '" + text + "' (valid: " + valid_algorithm_tags() + ")");
}

inline bool is_quantile_algorithm(AlgorithmTag tag) {
  return tag == AlgorithmTag::Qucbm || tag == AlgorithmTag::Qtsm || tag == AlgorithmTag::Qmossm;
}

// Instance tags: B<K>L, B<K>A<alpha> (finite) and I1..I4 (reservoirs).
struct InstanceSpec {
  enum class Kind { Linear, Alpha, Reservoir };
  Kind kind = Kind::Linear;
  std::size_t num_arms = 0;   // finite kinds
  double alpha = 0.0;         // Alpha kind
  MeanPrior prior = MeanPrior::Uniform;  // Reservoir kind
  double mu_star = 1.0;                  // Reservoir kind
};

inline InstanceSpec parse_instance(const std::string& text) {
  static const char* kValid = "B<K>L, B<K>A<alpha>, I1, I2, I3, I4";
  InstanceSpec spec;
  if (text.size() == 2 && text[0] == 'I') {
    spec.kind = InstanceSpec::Kind::Reservoir;
    switch (text[1]) {
      case '1': spec.prior = MeanPrior::Beta05_2; spec.mu_star = 1.0; return spec;
      case '2': spec.prior = MeanPrior::Uniform;  spec.mu_star = 1.0; return spec;
      case '3': spec.prior = MeanPrior::Beta05_2; spec.mu_star = 0.6; return spec;
      case '4': spec.prior = MeanPrior::Uniform;  spec.mu_star = 0.6; return spec;
      default: break;
    }
  }
  if (text.size() >= 3 && text[0] == 'B') {
    std::size_t pos = 1;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > 1) {
      const std::size_t num_arms = std::stoull(text.substr(1, pos - 1));
      if (pos == text.size() - 1 && text[pos] == 'L') {
        spec.kind = InstanceSpec::Kind::Linear;
        spec.num_arms = num_arms;
        return spec;
      }
      if (pos < text.size() - 1 && text[pos] == 'A') {
        char* end = nullptr;
        const std::string tail = text.substr(pos + 1);
        const double alpha = std::strtod(tail.c_str(), &end);
        if (end != nullptr && *end == '\0' && alpha > 0.0) {
          spec.kind = InstanceSpec::Kind::Alpha;
          spec.num_arms = num_arms;
          spec.alpha = alpha;
          return spec;
        }
      }
    }
  }
  throw UsageError("unknown instance '" + text + "' (valid: " + std::string(kValid) + ")");
}

inline FiniteInstance build_finite_instance(const InstanceSpec& spec) {
  switch (spec.kind) {
    case InstanceSpec::Kind::Linear: return make_linear_instance(spec.num_arms);
    case InstanceSpec::Kind::Alpha: return make_alpha_instance(spec.num_arms, spec.alpha);
    default: throw UsageError("instance is not finite");
  }
}

// ---------------------------------------------------------------------------
// Configs and results

struct RunConfig {
  std::string instance;
  std::string algo;
  std::size_t memory_size = 2;  // M
  double eta = 1.0;
  double alpha = 0.205;         // qrm rounds schedule
  std::optional<double> rho;    // track quantile regret when set
  std::uint64_t horizon = 0;
  std::size_t runs = 1;
  std::uint64_t base_seed = 0;
  std::vector<std::uint64_t> checkpoints;  // empty: default grid
  std::string out;
};

struct CheckpointRow {
  std::uint64_t t = 0;
  double regret_star = 0.0;
  std::optional<double> regret_rho;
};

struct RunResult {
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  double final_regret_star = 0.0;
  std::optional<double> final_regret_rho;
  std::vector<CheckpointRow> checkpoints;
  std::size_t max_memory_slots = 0;
  UcbmTrace subphase_trace;           // populated when tracing a finite algorithm
  std::vector<RoundRecord> rounds;    // populated when tracing a quantile algorithm
};

struct AggregateStats {
  std::size_t n = 0;
  double mean = 0.0;
  double se = 0.0;  // sample stdev / sqrt(n); 0 for n = 1
};

inline AggregateStats aggregate(const std::vector<double>& values) {
  AggregateStats stats;
  stats.n = values.size();
  if (values.empty()) return stats;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    const double sample_var = ss / static_cast<double>(values.size() - 1);
    stats.se = std::sqrt(sample_var) / std::sqrt(static_cast<double>(values.size()));
  }
  return stats;
}

struct ExperimentData {
  std::vector<RunResult> runs;
  AggregateStats regret_star_stats;
  std::optional<AggregateStats> regret_rho_stats;
};

// ---------------------------------------------------------------------------
// Execution

inline void validate_config(const RunConfig& config) {
  const AlgorithmTag algo = parse_algorithm(config.algo);
  const InstanceSpec spec = parse_instance(config.instance);
  if (config.horizon < 1) throw UsageError("horizon must be >= 1");
  if (config.runs < 1) throw UsageError("runs must be >= 1");
  if (config.memory_size < 1) throw UsageError("M must be >= 1");
  const bool quantile = is_quantile_algorithm(algo);
  if (quantile && spec.kind != InstanceSpec::Kind::Reservoir) {
    throw UsageError("algorithm '" + config.algo + "' needs a reservoir instance (I1..I4)");
  }
  if (!quantile && spec.kind == InstanceSpec::Kind::Reservoir) {
    throw UsageError("algorithm '" + config.algo + "' needs a finite instance (B<K>L / B<K>A<a>)");
  }
  if (config.rho.has_value() && !quantile) {
    throw UsageError("--rho only applies to quantile algorithms (qucbm/qtsm/qmossm)");
  }
  if (quantile && (!(config.alpha > 0.0) || !(config.alpha < 1.0))) {
    throw UsageError("alpha must lie in (0,1)");
  }
}

inline Policy policy_for(AlgorithmTag algo, double eta) {
  switch (algo) {
    case AlgorithmTag::Ucbm:
    case AlgorithmTag::Ucb1:
    case AlgorithmTag::Qucbm:
      return Policy::ucb1(eta);
    case AlgorithmTag::Tsm:
    case AlgorithmTag::Qtsm:
      return Policy::thompson();
    case AlgorithmTag::Mossm:
    case AlgorithmTag::Qmossm:
      return Policy::moss();
  }
  throw UsageError("unknown algorithm tag");
}

inline RunResult execute_single_run(const RunConfig& config, std::size_t run_id,
                                    bool keep_trace = false) {
  const AlgorithmTag algo = parse_algorithm(config.algo);
  const InstanceSpec spec = parse_instance(config.instance);
  RunResult result;
  result.run_id = run_id;
  result.seed = config.base_seed + run_id;
  Rng rng(result.seed);
  const std::vector<std::uint64_t> grid =
      config.checkpoints.empty() ? default_checkpoint_grid(config.horizon) : config.checkpoints;
  RegretLedger ledger(grid);

  if (is_quantile_algorithm(algo)) {
    ArmReservoir reservoir(spec.prior, spec.mu_star);
    std::optional<double> mu_rho;
    if (config.rho.has_value()) mu_rho = quantile_mu_rho(reservoir, *config.rho);
    const Policy policy = policy_for(algo, config.eta);
    QrmResult qrm = run_qrm(reservoir, config.memory_size, config.alpha, policy, config.horizon,
                            ledger, rng, mu_rho);
    result.max_memory_slots = qrm.max_memory_slots;
    if (keep_trace) result.rounds = std::move(qrm.rounds);
  } else {
    const FiniteInstance instance = build_finite_instance(spec);
    const Policy policy = policy_for(algo, config.eta);
    if (algo == AlgorithmTag::Ucb1) {
      SimRun<const FiniteInstance> run{instance, ledger, rng, instance.mu_star(), std::nullopt,
                                       nullptr};
      BoundedArmMemory memory(instance.num_arms());
      const std::vector<ArmId> ids = instance.arm_ids();
      run_forecaster(memory, ids, config.horizon, policy, run);
      result.max_memory_slots = memory.high_water();
    } else {
      UcbmTrace trace;
      const UcbmResult engine = run_ucbm(instance, config.memory_size, policy, config.horizon,
                                         ledger, rng, keep_trace ? &trace : nullptr);
      result.max_memory_slots = engine.max_memory_slots;
      if (keep_trace) result.subphase_trace = std::move(trace);
    }
  }

  result.final_regret_star = ledger.regret_star();
  result.final_regret_rho = ledger.regret_rho();
  result.checkpoints.reserve(ledger.checkpoints().size());
  for (const Checkpoint& c : ledger.checkpoints()) {
    result.checkpoints.push_back(CheckpointRow{c.t, c.regret_star, c.regret_rho});
  }
  return result;
}

inline std::size_t configured_thread_count() {
  if (const char* env = std::getenv("BANDIT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs the replicates (seed_i = base_seed + i), fanning out over threads.
// Every replicate is a pure function of its seed, so the thread count never
// changes any result; rows are merged in run_id order.
inline ExperimentData run_experiment_data(const RunConfig& config, std::size_t threads = 0,
                                          bool keep_trace = false) {
  validate_config(config);
  if (threads == 0) threads = configured_thread_count();
  threads = std::min(threads, config.runs);

  ExperimentData data;
  data.runs.resize(config.runs);
  if (threads <= 1) {
    for (std::size_t i = 0; i < config.runs; ++i) {
      data.runs[i] = execute_single_run(config, i, keep_trace);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= config.runs || failed.load()) return;
          try {
            data.runs[i] = execute_single_run(config, i, keep_trace);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            failed.store(true);
            return;
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<double> stars;
  stars.reserve(config.runs);
  for (const RunResult& r : data.runs) stars.push_back(r.final_regret_star);
  data.regret_star_stats = aggregate(stars);
  if (config.rho.has_value()) {
    std::vector<double> rhos;
    rhos.reserve(config.runs);
    for (const RunResult& r : data.runs) rhos.push_back(r.final_regret_rho.value_or(0.0));
    data.regret_rho_stats = aggregate(rhos);
  }
  return data;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// Per-run file: one row per checkpoint per run. alpha is blank for finite
// algorithms, regret_rho is blank when no quantile reference was tracked.
inline std::string per_run_csv(const RunConfig& config, const ExperimentData& data) {
  const bool quantile = is_quantile_algorithm(parse_algorithm(config.algo));
  std::string out = "run_id,seed,instance,algo,M,eta,alpha,checkpoint_t,regret_star,regret_rho\n";
  for (const RunResult& run : data.runs) {
    for (const CheckpointRow& row : run.checkpoints) {
      out += std::to_string(run.run_id);
      out += ',';
      out += std::to_string(run.seed);
      out += ',';
      out += config.instance;
      out += ',';
      out += config.algo;
      out += ',';
      out += std::to_string(config.memory_size);
      out += ',';
      out += format_double(config.eta);
      out += ',';
      if (quantile) out += format_double(config.alpha);
      out += ',';
      out += std::to_string(row.t);
      out += ',';
      out += format_double(row.regret_star);
      out += ',';
      if (row.regret_rho.has_value()) out += format_double(*row.regret_rho);
      out += '\n';
    }
  }
  return out;
}

inline std::string aggregate_csv_header() {
  return "instance,algo,M,eta,alpha,n,mean_regret_star,se_regret_star\n";
}

inline std::string aggregate_csv_row(const RunConfig& config, const ExperimentData& data) {
  const bool quantile = is_quantile_algorithm(parse_algorithm(config.algo));
  std::string out;
  out += config.instance;
  out += ',';
  out += config.algo;
  out += ',';
  out += std::to_string(config.memory_size);
  out += ',';
  out += format_double(config.eta);
  out += ',';
  if (quantile) out += format_double(config.alpha);
  out += ',';
  out += std::to_string(data.regret_star_stats.n);
  out += ',';
  out += format_double(data.regret_star_stats.mean);
  out += ',';
  out += format_double(data.regret_star_stats.se);
  out += '\n';
  return out;
}

inline std::string aggregate_csv(const RunConfig& config, const ExperimentData& data) {
  return aggregate_csv_header() + aggregate_csv_row(config, data);
}

// Sub-phase trace rows for finite engines; window and pulls are
// ';'-joined lists.
inline std::string subphase_trace_csv(const ExperimentData& data) {
  std::string out = "run_id,phase,subphase,window,budget,pulls,recommended\n";
  for (const RunResult& run : data.runs) {
    for (const SubphaseRecord& rec : run.subphase_trace.subphases) {
      out += std::to_string(run.run_id);
      out += ',';
      out += std::to_string(rec.phase);
      out += ',';
      out += std::to_string(rec.subphase);
      out += ',';
      for (std::size_t i = 0; i < rec.window.size(); ++i) {
        if (i > 0) out += ';';
        out += std::to_string(rec.window[i]);
      }
      out += ',';
      out += std::to_string(rec.budget);
      out += ',';
      for (std::size_t i = 0; i < rec.pulls.size(); ++i) {
        if (i > 0) out += ';';
        out += std::to_string(rec.pulls[i]);
      }
      out += ',';
      out += std::to_string(rec.recommended);
      out += '\n';
    }
  }
  return out;
}

// Round trace rows for quantile engines.
inline std::string round_trace_csv(const ExperimentData& data) {
  std::string out = "run_id,round,t_r,n_r,regret_star\n";
  for (const RunResult& run : data.runs) {
    for (const RoundRecord& rec : run.rounds) {
      out += std::to_string(run.run_id);
      out += ',';
      out += std::to_string(rec.round);
      out += ',';
      out += std::to_string(rec.round_horizon);
      out += ',';
      out += std::to_string(rec.arm_target);
      out += ',';
      out += format_double(rec.regret_star_end);
      out += '\n';
    }
  }
  return out;
}

inline std::string aggregate_path_for(const std::string& per_run_path) {
  const std::filesystem::path p(per_run_path);
  std::filesystem::path agg = p;
  agg.replace_extension();
  agg += ".agg.csv";
  return agg.string();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + path);
  file << content;
}

// Spec entry point: run the replicates and persist per-run + aggregate CSV.
// Returns the data so callers can chain on it.
inline ExperimentData run_experiment(const RunConfig& config, std::size_t threads = 0,
                                     const std::string& trace_path = "") {
  const bool keep_trace = !trace_path.empty();
  ExperimentData data = run_experiment_data(config, threads, keep_trace);
  if (config.out.empty()) throw UsageError("run_experiment needs an output path");
  write_text_file(config.out, per_run_csv(config, data));
  write_text_file(aggregate_path_for(config.out), aggregate_csv(config, data));
  if (keep_trace) {
    const bool quantile = is_quantile_algorithm(parse_algorithm(config.algo));
    write_text_file(trace_path,
                    quantile ? round_trace_csv(data) : subphase_trace_csv(data));
  }
  return data;
}

// ---------------------------------------------------------------------------
// Presets

struct PresetCell {
  std::string file_stem;
  RunConfig config;
};

struct Preset {
  std::string name;
  std::string summary;
  std::vector<PresetCell> cells;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig2", "fig3", "table1", "table2",
                                                 "appendix-k10"};
  return names;
}

namespace detail {

inline std::string trim_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline std::string cell_stem(const std::string& preset, const RunConfig& config) {
  std::string stem = preset + "_" + config.instance + "_" + config.algo + "_M" +
                     std::to_string(config.memory_size);
  if (config.eta != 1.0) stem += "_eta" + trim_number(config.eta);
  return stem;
}

inline void add_cell(Preset& preset, RunConfig config) {
  PresetCell cell;
  cell.file_stem = cell_stem(preset.name, config);
  cell.config = std::move(config);
  preset.cells.push_back(std::move(cell));
}

}  // namespace detail

inline Preset make_preset(const std::string& name) {
  constexpr std::uint64_t kHorizon = 1000000;
  Preset preset;
  preset.name = name;

  auto finite_config = [&](const std::string& instance, const std::string& algo, std::size_t m,
                           double eta, std::size_t runs) {
    RunConfig c;
    c.instance = instance;
    c.algo = algo;
    c.memory_size = m;
    c.eta = eta;
    c.horizon = kHorizon;
    c.runs = runs;
    c.base_seed = 1;
    return c;
  };
  auto quantile_config = [&](const std::string& instance, const std::string& algo, std::size_t m,
                             double alpha) {
    RunConfig c;
    c.instance = instance;
    c.algo = algo;
    c.memory_size = m;
    c.alpha = alpha;
    c.horizon = kHorizon;
    c.runs = 20;
    c.base_seed = 1;
    return c;
  };

  if (name == "fig2") {
    preset.summary = "K=100 finite instances, M=2, T=1e6, 100 runs";
    for (const std::string instance : {"B100L", "B100A0.3", "B100A0.6"}) {
      for (const std::string algo : {"ucbm", "tsm", "mossm"}) {
        detail::add_cell(preset, finite_config(instance, algo, 2, 1.0, 100));
      }
    }
    return preset;
  }
  if (name == "fig3") {
    preset.summary = "B100L with arm memory sweep M in {2,5,10,20,50,100}, T=1e6, 100 runs";
    for (const std::size_t m : {2, 5, 10, 20, 50, 100}) {
      detail::add_cell(preset, finite_config("B100L", "ucbm", m, 1.0, 100));
      detail::add_cell(preset, finite_config("B100L", "ucbm", m, 0.2, 100));
      detail::add_cell(preset, finite_config("B100L", "tsm", m, 1.0, 100));
      detail::add_cell(preset, finite_config("B100L", "mossm", m, 1.0, 100));
    }
    return preset;
  }
  if (name == "table1" || name == "table2") {
    const double alpha = (name == "table1") ? 0.347 : 0.205;
    preset.summary = "reservoir instances I1..I4, alpha=" + detail::trim_number(alpha) +
                     ", M in {2,10}, T=1e6, 20 runs";
    for (const std::string instance : {"I1", "I2", "I3", "I4"}) {
      for (const std::string algo : {"qucbm", "qtsm", "qmossm"}) {
        for (const std::size_t m : {2, 10}) {
          detail::add_cell(preset, quantile_config(instance, algo, m, alpha));
        }
      }
    }
    return preset;
  }
  if (name == "appendix-k10") {
    preset.summary = "K=10 finite instances, M=2, T=1e6, 100 runs";
    for (const std::string instance : {"B10L", "B10A0.3", "B10A0.6"}) {
      for (const std::string algo : {"ucbm", "tsm", "mossm"}) {
        detail::add_cell(preset, finite_config(instance, algo, 2, 1.0, 100));
      }
    }
    return preset;
  }
  std::string valid;
  for (const std::string& n : preset_names()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw UsageError("unknown preset '" + name + "' (valid: " + valid + ")");
}

inline std::vector<Preset> list_presets() {
  std::vector<Preset> presets;
  for (const std::string& name : preset_names()) presets.push_back(make_preset(name));
  return presets;
}

// Run a list of cells, writing per-run and aggregate files per cell plus one
// combined aggregate table named after the preset.
inline void run_preset_cells(Preset preset, const std::string& out_dir,
                             std::size_t threads = 0) {
  std::filesystem::create_directories(out_dir);
  std::string combined = aggregate_csv_header();
  for (PresetCell& cell : preset.cells) {
    cell.config.out = (std::filesystem::path(out_dir) / (cell.file_stem + ".csv")).string();
    const ExperimentData data = run_experiment(cell.config, threads);
    combined += aggregate_csv_row(cell.config, data);
  }
  write_text_file((std::filesystem::path(out_dir) / (preset.name + "_aggregate.csv")).string(),
                  combined);
}

inline void run_preset(const std::string& name, const std::string& out_dir,
                       std::size_t threads = 0) {
  run_preset_cells(make_preset(name), out_dir, threads);
}

}  // namespace banditsim
