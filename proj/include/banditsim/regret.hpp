#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "banditsim/errors.hpp"

namespace banditsim {

struct Checkpoint {
  std::uint64_t t = 0;
  double regret_star = 0.0;
  std::optional<double> regret_rho;
};

// Default checkpoint grid: 1000 * 2^k up to the horizon, plus the horizon
// itself. Matches log-scale regret curves.
inline std::vector<std::uint64_t> default_checkpoint_grid(std::uint64_t horizon) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t t = 1000; t <= horizon && t >= 1000; t *= 2) grid.push_back(t);
  if (grid.empty() || grid.back() != horizon) grid.push_back(horizon);
  return grid;
}

// Cumulative pseudo-regret bookkeeping for one simulation run. regret_star
// accumulates mu_star - mu_{a_t}; regret_rho (when a quantile reference is
// supplied) accumulates mu_rho - mu_{a_t} and may decrease.
class RegretLedger {
 public:
  RegretLedger() = default;
  explicit RegretLedger(std::vector<std::uint64_t> checkpoint_grid)
      : grid_(std::move(checkpoint_grid)) {
    std::sort(grid_.begin(), grid_.end());
    grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());
    while (!grid_.empty() && grid_.front() == 0) grid_.erase(grid_.begin());
  }

  std::uint64_t t() const { return t_; }
  double regret_star() const { return regret_star_; }
  std::optional<double> regret_rho() const { return regret_rho_; }
  const std::vector<Checkpoint>& checkpoints() const { return checkpoints_; }

  friend void record_pull(RegretLedger& ledger, double true_mean, double mu_star,
                          std::optional<double> mu_rho);

 private:
  std::uint64_t t_ = 0;
  double regret_star_ = 0.0;
  std::optional<double> regret_rho_;
  std::vector<std::uint64_t> grid_;
  std::size_t next_grid_ = 0;
  std::vector<Checkpoint> checkpoints_;
};

inline void record_pull(RegretLedger& ledger, double true_mean, double mu_star,
                        std::optional<double> mu_rho = std::nullopt) {
  if (true_mean > mu_star) {
    throw InconsistentInstanceError("pulled mean " + std::to_string(true_mean) +
                                    " exceeds mu_star " + std::to_string(mu_star));
  }
  ledger.t_ += 1;
  ledger.regret_star_ += mu_star - true_mean;
  if (mu_rho.has_value()) {
    ledger.regret_rho_ = ledger.regret_rho_.value_or(0.0) + (*mu_rho - true_mean);
  }
  while (ledger.next_grid_ < ledger.grid_.size() &&
         ledger.t_ >= ledger.grid_[ledger.next_grid_]) {
    ledger.checkpoints_.push_back(
        Checkpoint{ledger.grid_[ledger.next_grid_], ledger.regret_star_, ledger.regret_rho_});
    ledger.next_grid_ += 1;
  }
}

}  // namespace banditsim
