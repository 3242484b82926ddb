#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "summing/operator.hpp"
#include "summing/optim.hpp"
#include "summing/rs_core.hpp"

namespace summing {

// Exponents of the (q,p,sigma)-absolutely continuous inequality.
struct SummingParams {
  double q = 1.0;
  double p = 1.0;
  double sigma = 0.0;

  // 1 <= p <= q < inf and 0 <= sigma <= kMaxSigma.
  void validate() const;
  double lhs_exponent() const { return q / (1.0 - sigma); }
  double rhs_exponent() const { return p / (1.0 - sigma); }
};

// Above this the exponents p/(1-sigma) leave the range where double
// arithmetic keeps 1e-9 relative accuracy.
inline constexpr double kMaxSigma = 0.95;

using Family = std::vector<std::vector<double>>;

// (sum_i ||u x_i||^(q/(1-sigma)))^((1-sigma)/q)
double sigma_lhs(const Operator& u, std::span<const std::vector<double>> family, const SummingParams& params);

// sup over the dual unit ball of
//   (sum_i (|<x_i, x'>|^(1-sigma) ||x_i||^sigma)^(p/(1-sigma)))^((1-sigma)/p)
double sigma_rhs(const NormedSpace& domain, std::span<const std::vector<double>> family, const SummingParams& params,
                 const SearchConfig& config);

double sigma_ratio(const Operator& u, std::span<const std::vector<double>> family, const SummingParams& params,
                   const SearchConfig& config);

// 2 * max(dim X, dim Y).
std::size_t default_k_max(const Operator& u);

// Lower bound on pi^sigma_{q,p}(u): best ratio over families of size
// 1..k_max.  k_max = 0 selects default_k_max.  The witness is the flattened
// family; a rank-one oracle is attached when u has rank <= 1.
EstimateReport pi_norm_lb(const Operator& u, const SummingParams& params, std::size_t k_max,
                          const SearchConfig& config);

// ||a||_{X*} ||y||_Y for u = a (x) y; nullopt when u has rank > 1.
std::optional<OracleValue> rank_one_oracle(const Operator& u);

// sum_j ||u e_j|| for u defined on l_inf^n with unit weights: an upper bound
// on the (1,1,0) constant.
double pi1_upper_oracle(const Operator& u);

// Best available oracle for the (q,p,sigma) constant of u: exact for rank
// one, an upper bound for (1,1,0) on an l_inf domain.
std::optional<OracleValue> summing_oracle(const Operator& u, const SummingParams& params);

enum class Verdict { Consistent, Inconclusive, Violation, NotApplicable };
std::string to_string(Verdict verdict);

struct InclusionReport {
  bool gate = false;
  SummingParams params1;
  SummingParams params2;
  EstimateReport lower1;
  EstimateReport lower2;
  std::optional<OracleValue> oracle1;
  std::optional<OracleValue> oracle2;
  double tolerance = 1e-6;
  Verdict verdict = Verdict::NotApplicable;
};

// Numerical shadow of Pi_{q1,p1}^sigma within Pi_{q2,p2}^sigma: estimates both
// constants and compares the second against the oracle (or estimate) of the first.
InclusionReport corollary_inclusion_check(const Operator& u, const SummingParams& params1,
                                          const SummingParams& params2, std::size_t k_max, const SearchConfig& config,
                                          double tolerance = 1e-6);

// Counting-measure instantiation S(u,f)(i) = ||u f(i)||,
// R(f,x')(i) = |<f(i),x'>|^(1-sigma) ||f(i)||^sigma with K the dual ball of X.
RsSystem sigma_rs_system(const NormedSpace& domain, double sigma, const AtomicMeasure& measure);

Family unflatten(std::span<const double> flat, std::size_t dim);
std::vector<double> flatten(std::span<const std::vector<double>> family);

namespace detail {

// Log-space pieces of the family ratio shared with the composition search.
struct SigmaFamilyTerms {
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  std::vector<double> dual_argmax;
};

// `light` runs a single ascent from `warm` (or the members' norming
// functionals when `warm` is empty) plus one random restart.
SigmaFamilyTerms sigma_terms(const Operator& u, std::span<const std::vector<double>> family,
                             const SummingParams& params, const SearchConfig& config, bool light,
                             std::span<const double> warm = {});

// Gradient of log(lhs/rhs) with respect to the flattened family, holding the
// dual maximizer fixed.
void sigma_log_ratio_gradient(const Operator& u, std::span<const double> flat, const SummingParams& params,
                              std::span<const double> dual_argmax, double eps, std::span<double> grad);

// Norming vectors of the rows of u followed by the coordinate vectors.
Family start_candidates(const Operator& u);

// Family-ratio search problem for families of size k, with the certified
// evaluation running the dual sup under config.inner().
FamilyRatio sigma_family_ratio(const Operator& u, const SummingParams& params, const SearchConfig& config,
                               std::size_t k);

}  // namespace detail

}  // namespace summing
