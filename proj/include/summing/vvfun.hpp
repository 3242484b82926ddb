#pragma once

#include <vector>

#include "summing/measures.hpp"
#include "summing/operator.hpp"
#include "summing/optim.hpp"
#include "summing/simple_function.hpp"

namespace summing {

// f = sum_j parts_j, all on the same measure and space.
struct Decomposition {
  std::vector<SimpleFunction> parts;

  SimpleFunction sum() const;
};

// Phi_{p,sigma}(f) = sup_{x' in B_{X*}} (sum_i w_i (|<f(i),x'>|^(1-sigma) ||f(i)||^sigma)^p)^(1/p).
// Closed form (the Bochner p-norm) at sigma = 1.
double phi_seminorm(const SimpleFunction& f, double p, double sigma, const SearchConfig& config);

// (sum_i w_i ||f(i)||^r)^(1/r).
double bochner_norm(const SimpleFunction& f, double r);

struct ConvexBound {
  double value = 0.0;
  Decomposition best;
  long evaluations = 0;
};

// Upper bound on the convexification ||f||_{p,sigma}: the least sum of Phi over
// decompositions into at most `parts` pieces found by descent.  Sizes
// 2..parts are searched in turn, each warm-started from the best smaller
// decomposition padded with a zero part, so the bound never increases with
// `parts`.  parts = 1 returns phi_seminorm(f).
ConvexBound convex_seminorm_search(const SimpleFunction& f, double p, double sigma, std::size_t parts,
                                   const SearchConfig& config);

double convex_seminorm_ub(const SimpleFunction& f, double p, double sigma, std::size_t parts,
                          const SearchConfig& config);

// Lower bound on the norm of f -> u o f from the (s,sigma) convexified space
// into the Bochner space B_s, s = 1/(1-sigma), over SimpleFunctions on
// `measure`.  The denominator is convex_seminorm_ub with `parts` pieces, run
// with config.restarts / 16 (at least 1) random splits.
EstimateReport composition_norm_lb(const Operator& u, double sigma, const AtomicMeasure& measure, std::size_t parts,
                                   const SearchConfig& config);

}  // namespace summing
