#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "summing/numerics.hpp"

namespace summing {

// Weighted sequence space l_r^n with norm (sum_i w_i |x_i|^r)^(1/r), and
// max_i w_i |x_i| when r = inf.  Duality is the plain pairing sum_i x_i y_i.
class NormedSpace {
 public:
  NormedSpace(std::size_t dim, double exponent, std::vector<double> weights = {});

  static NormedSpace lp(std::size_t dim, double exponent) { return NormedSpace(dim, exponent); }

  std::size_t dim() const noexcept { return dim_; }
  double exponent() const noexcept { return exponent_; }
  bool is_inf() const noexcept { return std::isinf(exponent_); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  bool unit_weights() const noexcept;

  double norm(std::span<const double> x) const;

  // Space with the conjugate exponent whose norm is the dual norm under the
  // plain pairing.
  NormedSpace dual() const;

  // Per-coordinate factors s with norm(x) = ||s * x||_r (unweighted).
  const std::vector<double>& scale() const noexcept { return scale_; }

  bool operator==(const NormedSpace& other) const = default;

 private:
  std::size_t dim_;
  double exponent_;
  std::vector<double> weights_;
  std::vector<double> scale_;
};

double conjugate_exponent(double r);

struct DualPoint {
  std::vector<double> coordinates;
  NormedSpace host;
};

// x' in the dual unit sphere with <x, x'> = norm(x).  Ties at r = inf go to
// the lowest index.
DualPoint norming_functional(const NormedSpace& space, std::span<const double> x);

// x if norm(x) <= 1, else x / norm(x).
std::vector<double> retract_to_ball(const NormedSpace& space, std::span<const double> x);

}  // namespace summing
