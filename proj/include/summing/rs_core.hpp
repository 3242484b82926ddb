#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "summing/measures.hpp"
#include "summing/operator.hpp"
#include "summing/optim.hpp"
#include "summing/simple_function.hpp"

namespace summing {

// K realized as the unit ball of a normed space.  `convex_from` is the least
// exponent p for which k -> |R(f,k)(i)|^p is convex (infinite when unknown);
// convexity enables exact vertex enumeration on l_1 / l_inf balls.
struct DualBallParameters {
  NormedSpace ball;
  double convex_from = kInf;
};

// K realized as an explicit finite list of points.
struct FiniteParameterSet {
  std::vector<std::vector<double>> points;
};

using ParameterSet = std::variant<DualBallParameters, FiniteParameterSet>;

// Abstract summing framework: S measures the output of a map on a function,
// R measures the function against a parameter k in K, both atom by atom over
// a finite measure.  The family of functions is every SimpleFunction with
// values in `domain` on the atoms of `measure`.
struct RsSystem {
  std::function<double(const Operator& u, const SimpleFunction& f, std::size_t atom)> S;
  std::function<double(const SimpleFunction& f, std::span<const double> k, std::size_t atom)> R;
  ParameterSet K;
  AtomicMeasure measure;
  NormedSpace domain;
};

struct RsWitness {
  SimpleFunction f;
  ScalarWeighting g;
  double ratio = 0.0;
};

// (sum_i w_i |S(u, g_i f)(i)|^q)^(1/q).
double rs_lhs(const RsSystem& system, const Operator& u, const SimpleFunction& f, const ScalarWeighting& g, double q);

// sup_k (sum_i w_i |R(g_i f, k)(i)|^p)^(1/p); exact for a finite K.
double rs_rhs(const RsSystem& system, const SimpleFunction& f, const ScalarWeighting& g, double p,
              const SearchConfig& config);

// lhs / rhs; throws DegenerateFamilyError when rhs vanishes.
double rs_ratio(const RsSystem& system, const Operator& u, const SimpleFunction& f, const ScalarWeighting& g,
                double q, double p, const SearchConfig& config);

struct RsEstimate {
  EstimateReport report;
  std::optional<RsWitness> witness;
};

// Lower bound on the least C of the (q,p)-RS inequality, searching (f, g)
// jointly over supports of the first 1..k_max atoms.
RsEstimate rs_constant_lb(const RsSystem& system, const Operator& u, double q, double p, std::size_t k_max,
                          const SearchConfig& config);

// p1 <= p2, q1 <= q2 and 1/p1 - 1/p2 <= 1/q1 - 1/q2.
bool inclusion_condition(double p1, double p2, double q1, double q2);

// Reweights g by lambda_i = |S(u, g_i f)(i)|^(q2/q), 1/q = 1/q1 - 1/q2, so that
//   sum_i w_i |S(u, lambda_i g_i f)(i)|^q1 = sum_i w_i |S(u, g_i f)(i)|^q2.
// The returned ratio is evaluated at exponents (q1, p1).
RsWitness amplify_witness(const RsSystem& system, const Operator& u, const RsWitness& witness, double q1, double q2,
                          double p1, double p2, const SearchConfig& config = {});

// Bound C * C_{p,q} on the (q2,p2) constant given a (q1,p1) constant C, with
// 1/p = 1/p1 - 1/p2 and 1/q = 1/q1 - 1/q2.  Equals C on a counting measure.
double inclusion_constant_bound(const AtomicMeasure& measure, double constant, double p1, double p2, double q1,
                                double q2);

// Toy system with a finite K: S(u,f)(i) = ||u f(i)||, R(f,k)(i) = |<f(i), k>|.
RsSystem finite_parameter_system(const NormedSpace& domain, std::vector<std::vector<double>> points,
                                 const AtomicMeasure& measure);

}  // namespace summing
