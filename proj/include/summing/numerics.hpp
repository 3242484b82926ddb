#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace summing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log(sum_i exp(terms_i)); -inf entries are skipped, returns -inf when all are.
double log_sum_exp(std::span<const double> terms);

// log((sum_i w_i |a_i|^e)^(1/e)) computed in log space; weights may be empty
// (all ones).  Returns -inf for the zero vector.
double log_power_mean(std::span<const double> values, std::span<const double> weights, double exponent);

// (sum_i w_i |a_i|^e)^(1/e), or max_i w_i |a_i| for e = inf.
double power_norm(std::span<const double> values, std::span<const double> weights, double exponent);

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }

inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double dot(std::span<const double> a, std::span<const double> b);

double euclidean_norm(std::span<const double> x);

}  // namespace summing
