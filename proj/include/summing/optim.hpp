#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "summing/spaces.hpp"

namespace summing {

struct SearchConfig {
  int restarts = 64;
  int iterations = 500;
  double initial_step = 0.5;
  double step_decay = 0.97;
  double smoothing = 1e-8;
  std::uint64_t seed = 0;

  void validate() const;
  // Lighter configuration for dual-ball sups nested inside a family search.
  // Same seed, fewer restarts: its restarts are a prefix of this config's.
  SearchConfig inner() const;
  // inner() with a long iteration budget, for re-evaluating reported values.
  SearchConfig certify() const;
};

struct OracleValue {
  double value = 0.0;
  std::string provenance;
};

// Certified lower bound on a sup: `value` is the objective re-evaluated at
// `witness`.
struct EstimateReport {
  double value = 0.0;
  std::vector<double> witness;
  std::optional<OracleValue> oracle;
  long evaluations = 0;
  std::uint64_t seed = 0;
  int degenerate_restarts = 0;
  int best_restart = -1;
  std::size_t family_size = 0;
};

// Seed of restart `index` under `master`; independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct BallObjective {
  std::function<double(std::span<const double>)> value;
  // Ascent direction of the smoothed objective (any positive multiple of the
  // gradient).  Central differences on `value` when empty.
  std::function<void(std::span<const double> x, double eps, std::span<double> grad)> gradient;
  // Convex objectives are maximized with linear-maximization steps over the
  // ball (monotone), and exactly by vertex enumeration on l_1 / l_inf balls.
  bool convex = false;
  // Deterministic starting points, used before the random restarts.
  std::vector<std::vector<double>> starts;
};

// Multi-start ascent over the unit ball of `space`.
EstimateReport maximize_over_ball(const BallObjective& objective, const NormedSpace& space,
                                  const SearchConfig& config);

struct RatioValue {
  double lhs = 0.0;
  double rhs = 0.0;
  // Implementation scratch, e.g. the dual maximizer found for rhs.
  std::vector<double> aux;

  double ratio() const { return lhs / rhs; }
};

// A scale-invariant ratio over families of k vectors, stored flat (k * dim).
struct FamilyRatio {
  // Certified evaluation; defines the reported value.
  std::function<RatioValue(std::span<const double> family)> evaluate;
  // Cheaper evaluation steering the ascent; `evaluate` when empty.
  std::function<RatioValue(std::span<const double> family)> surrogate;
  // Gradient of log(surrogate ratio) given its evaluation at `family`.
  // Central differences when empty.
  std::function<void(std::span<const double> family, const RatioValue& at, std::span<double> grad)> gradient;
  // Rescales a family so that rhs = 1; divides by rhs when empty.
  std::function<void(std::span<double> family, const RatioValue& at)> normalize;
  std::vector<std::vector<double>> starts;
};

EstimateReport maximize_family_ratio(const FamilyRatio& ratio, const NormedSpace& space, std::size_t k,
                                     const SearchConfig& config);

// sup over the unit ball of `ball` of sum_i exp(log_coeffs_i) |<vectors_i, x>|^theta,
// returned as a log together with the maximizer.  Exact on l_1 / l_inf balls
// when theta >= 1.
struct PairingSup {
  double log_value = 0.0;
  std::vector<double> argmax;
  long evaluations = 0;
};
PairingSup sup_pairing_sum(std::span<const std::vector<double>> vectors, std::span<const double> log_coeffs,
                           double theta, const NormedSpace& ball, const SearchConfig& config,
                           std::span<const std::vector<double>> warm_starts = {}, bool pair_starts = true,
                           bool member_starts = true);

}  // namespace summing
