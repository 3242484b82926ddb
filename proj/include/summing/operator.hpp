#pragma once

#include <optional>
#include <span>
#include <vector>

#include "summing/spaces.hpp"

namespace summing {

// Dense real matrix u : X -> Y, stored row-major with shape (Y.dim, X.dim).
class Operator {
 public:
  Operator(std::vector<double> matrix, NormedSpace domain, NormedSpace codomain);

  static Operator identity(const NormedSpace& space);
  static Operator zero(const NormedSpace& domain, const NormedSpace& codomain);
  // u(x) = <a, x> y.
  static Operator rank_one(std::span<const double> a, std::span<const double> y, NormedSpace domain,
                           NormedSpace codomain);

  const NormedSpace& domain() const noexcept { return domain_; }
  const NormedSpace& codomain() const noexcept { return codomain_; }
  std::size_t rows() const noexcept { return codomain_.dim(); }
  std::size_t cols() const noexcept { return domain_.dim(); }
  const std::vector<double>& matrix() const noexcept { return matrix_; }
  double at(std::size_t row, std::size_t col) const { return matrix_[row * cols() + col]; }

  std::vector<double> apply(std::span<const double> x) const;
  // u^T eta, for eta in the codomain's dual.
  std::vector<double> apply_transpose(std::span<const double> eta) const;
  std::vector<double> column(std::size_t j) const;

  Operator scaled(double alpha) const;

 private:
  std::vector<double> matrix_;
  NormedSpace domain_;
  NormedSpace codomain_;
};

// Factorization u = a (x) y when u has rank at most one (relative
// tolerance on the residual); a = 0, y = 0 for the zero operator.
struct RankOneFactors {
  std::vector<double> a;
  std::vector<double> y;
};
std::optional<RankOneFactors> rank_one_factors(const Operator& u, double tolerance = 1e-12);

}  // namespace summing
