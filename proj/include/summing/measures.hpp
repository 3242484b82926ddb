#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace summing {

// Finite measure carried by finitely many atoms.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(std::vector<double> weights);

  static AtomicMeasure counting(std::size_t atoms);
  // n atoms of mass 1/n.
  static AtomicMeasure uniform_probability(std::size_t atoms);

  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double total_mass() const noexcept;
  double min_weight() const noexcept;

  // Splits every atom into two halves; atom i becomes atoms 2i and 2i+1.
  AtomicMeasure refine() const;

  bool operator==(const AtomicMeasure& other) const = default;

 private:
  std::vector<double> weights_;
};

// A scalar function g on the atoms, i.e. an element of L_q(nu).
struct ScalarWeighting {
  std::vector<double> values;
};

// (sum_i w_i |g_i|^p)^(1/p) for p in [1, inf).
double lp_norm(const AtomicMeasure& measure, std::span<const double> g, double p);

// Least C with ||g||_{L_s} <= C ||g||_{L_r} for every g, 1 <= r < s < inf.
// On atoms this is (min_i w_i)^(1/s - 1/r).
double embedding_constant(const AtomicMeasure& measure, double s, double r);

}  // namespace summing
