#include "summing/numerics.hpp"

#include <algorithm>

#include "summing/errors.hpp"

namespace summing {

double log_sum_exp(std::span<const double> terms) {
  double m = -kInf;
  for (double t : terms) m = std::max(m, t);
  if (m == -kInf) return -kInf;
  if (m == kInf) return kInf;
  double s = 0.0;
  for (double t : terms) {
    if (t != -kInf) s += std::exp(t - m);
  }
  return m + std::log(s);
}

double log_power_mean(std::span<const double> values, std::span<const double> weights, double exponent) {
  if (!weights.empty() && weights.size() != values.size())
    throw InputError("log_power_mean: weight count does not match value count");
  double m = -kInf;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a == 0.0) continue;
    const double lw = weights.empty() ? 0.0 : std::log(weights[i]);
    m = std::max(m, lw + exponent * std::log(a));
  }
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a == 0.0) continue;
    const double lw = weights.empty() ? 0.0 : std::log(weights[i]);
    s += std::exp(lw + exponent * std::log(a) - m);
  }
  return (m + std::log(s)) / exponent;
}

double power_norm(std::span<const double> values, std::span<const double> weights, double exponent) {
  if (!weights.empty() && weights.size() != values.size())
    throw InputError("power_norm: weight count does not match value count");
  if (std::isinf(exponent)) {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      m = std::max(m, (weights.empty() ? 1.0 : weights[i]) * std::abs(values[i]));
    return m;
  }
  if (exponent == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      s += (weights.empty() ? 1.0 : weights[i]) * std::abs(values[i]);
    return s;
  }
  const double l = log_power_mean(values, weights, exponent);
  return l == -kInf ? 0.0 : std::exp(l);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double euclidean_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += (v / m) * (v / m);
  return m * std::sqrt(s);
}

}  // namespace summing
