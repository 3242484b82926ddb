#include "summing/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "summing/errors.hpp"
#include "summing/numerics.hpp"

namespace summing {

AtomicMeasure::AtomicMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("AtomicMeasure: at least one atom is required");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("AtomicMeasure: atom weights must be positive");
  }
}

AtomicMeasure AtomicMeasure::counting(std::size_t atoms) { return AtomicMeasure(std::vector<double>(atoms, 1.0)); }

AtomicMeasure AtomicMeasure::uniform_probability(std::size_t atoms) {
  return AtomicMeasure(std::vector<double>(atoms, 1.0 / static_cast<double>(atoms)));
}

double AtomicMeasure::total_mass() const noexcept { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

double AtomicMeasure::min_weight() const noexcept { return *std::min_element(weights_.begin(), weights_.end()); }

AtomicMeasure AtomicMeasure::refine() const {
  std::vector<double> w;
  w.reserve(2 * weights_.size());
  for (double v : weights_) {
    w.push_back(0.5 * v);
    w.push_back(0.5 * v);
  }
  return AtomicMeasure(std::move(w));
}

double lp_norm(const AtomicMeasure& measure, std::span<const double> g, double p) {
  if (g.size() != measure.size())
    throw InputError("lp_norm: weighting has " + std::to_string(g.size()) + " values for " +
                     std::to_string(measure.size()) + " atoms");
  if (!(p >= 1.0) || std::isinf(p)) throw ParameterError("lp_norm: exponent must lie in [1, inf)");
  return power_norm(g, measure.weights(), p);
}

double embedding_constant(const AtomicMeasure& measure, double s, double r) {
  if (!(r >= 1.0) || !(r < s) || std::isinf(s))
    throw ParameterError("embedding_constant: requires 1 <= r < s < inf");
  return std::pow(measure.min_weight(), 1.0 / s - 1.0 / r);
}

}  // namespace summing
