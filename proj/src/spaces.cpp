#include "summing/spaces.hpp"

#include <algorithm>
#include <string>

#include "summing/errors.hpp"

namespace summing {

double conjugate_exponent(double r) {
  if (r < 1.0) throw ParameterError("conjugate_exponent: exponent must be >= 1");
  if (r == 1.0) return kInf;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

NormedSpace::NormedSpace(std::size_t dim, double exponent, std::vector<double> weights)
    : dim_(dim), exponent_(exponent), weights_(std::move(weights)) {
  if (dim_ == 0) throw InputError("NormedSpace: dimension must be positive");
  if (!(exponent_ >= 1.0)) throw ParameterError("NormedSpace: exponent must lie in [1, inf]");
  if (weights_.empty()) weights_.assign(dim_, 1.0);
  if (weights_.size() != dim_)
    throw InputError("NormedSpace: expected " + std::to_string(dim_) + " weights, got " +
                     std::to_string(weights_.size()));
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("NormedSpace: weights must be positive and finite");
  }
  scale_.resize(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    scale_[i] = is_inf() ? weights_[i] : std::pow(weights_[i], 1.0 / exponent_);
}

bool NormedSpace::unit_weights() const noexcept {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

double NormedSpace::norm(std::span<const double> x) const {
  if (x.size() != dim_)
    throw InputError("norm: vector has length " + std::to_string(x.size()) + ", space has dimension " +
                     std::to_string(dim_));
  return power_norm(x, weights_, exponent_);
}

NormedSpace NormedSpace::dual() const {
  const double rc = conjugate_exponent(exponent_);
  std::vector<double> w(dim_);
  for (std::size_t i = 0; i < dim_; ++i) w[i] = std::isinf(rc) ? 1.0 / scale_[i] : std::pow(scale_[i], -rc);
  return NormedSpace(dim_, rc, std::move(w));
}

DualPoint norming_functional(const NormedSpace& space, std::span<const double> x) {
  const double n = space.norm(x);
  if (n == 0.0) throw InputError("norming_functional: zero vector has no norming functional");
  const auto& s = space.scale();
  std::vector<double> y(space.dim(), 0.0);
  const double r = space.exponent();
  if (space.is_inf()) {
    std::size_t best = 0;
    double top = -1.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const double z = std::abs(s[i] * x[i]);
      if (z > top) {
        top = z;
        best = i;
      }
    }
    y[best] = s[best] * sign(x[best]);
  } else if (r == 1.0) {
    for (std::size_t i = 0; i < space.dim(); ++i) y[i] = s[i] * sign(x[i]);
  } else {
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const double z = s[i] * x[i];
      y[i] = s[i] * sign(z) * std::pow(std::abs(z) / n, r - 1.0);
    }
  }
  return DualPoint{std::move(y), space.dual()};
}

std::vector<double> retract_to_ball(const NormedSpace& space, std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  const double n = space.norm(x);
  if (n > 1.0) {
    for (double& v : out) v /= n;
  }
  return out;
}

}  // namespace summing
