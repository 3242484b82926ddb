#include "summing/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "summing/errors.hpp"

namespace summing {

Operator::Operator(std::vector<double> matrix, NormedSpace domain, NormedSpace codomain)
    : matrix_(std::move(matrix)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (matrix_.size() != domain_.dim() * codomain_.dim())
    throw InputError("Operator: matrix has " + std::to_string(matrix_.size()) + " entries, expected " +
                     std::to_string(codomain_.dim()) + "x" + std::to_string(domain_.dim()));
  for (double v : matrix_) {
    if (!std::isfinite(v)) throw InputError("Operator: matrix entries must be finite");
  }
}

Operator Operator::identity(const NormedSpace& space) {
  std::vector<double> m(space.dim() * space.dim(), 0.0);
  for (std::size_t i = 0; i < space.dim(); ++i) m[i * space.dim() + i] = 1.0;
  return Operator(std::move(m), space, space);
}

Operator Operator::zero(const NormedSpace& domain, const NormedSpace& codomain) {
  return Operator(std::vector<double>(domain.dim() * codomain.dim(), 0.0), domain, codomain);
}

Operator Operator::rank_one(std::span<const double> a, std::span<const double> y, NormedSpace domain,
                            NormedSpace codomain) {
  if (a.size() != domain.dim() || y.size() != codomain.dim()) throw InputError("rank_one: factor dimension mismatch");
  std::vector<double> m(y.size() * a.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[i * a.size() + j] = y[i] * a[j];
  return Operator(std::move(m), std::move(domain), std::move(codomain));
}

std::vector<double> Operator::apply(std::span<const double> x) const {
  if (x.size() != cols())
    throw InputError("Operator::apply: vector has length " + std::to_string(x.size()) + ", domain dimension " +
                     std::to_string(cols()));
  std::vector<double> out(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols(); ++j) s += matrix_[i * cols() + j] * x[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> Operator::apply_transpose(std::span<const double> eta) const {
  if (eta.size() != rows()) throw InputError("Operator::apply_transpose: dimension mismatch");
  std::vector<double> out(cols(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) out[j] += matrix_[i * cols() + j] * eta[i];
  return out;
}

std::vector<double> Operator::column(std::size_t j) const {
  std::vector<double> c(rows());
  for (std::size_t i = 0; i < rows(); ++i) c[i] = at(i, j);
  return c;
}

Operator Operator::scaled(double alpha) const {
  std::vector<double> m(matrix_);
  for (double& v : m) v *= alpha;
  return Operator(std::move(m), domain_, codomain_);
}

std::optional<RankOneFactors> rank_one_factors(const Operator& u, double tolerance) {
  std::size_t pr = 0, pc = 0;
  double top = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j)
      if (std::abs(u.at(i, j)) > top) {
        top = std::abs(u.at(i, j));
        pr = i;
        pc = j;
      }
  if (top == 0.0) return RankOneFactors{std::vector<double>(u.cols(), 0.0), std::vector<double>(u.rows(), 0.0)};
  RankOneFactors f{std::vector<double>(u.cols()), u.column(pc)};
  for (std::size_t j = 0; j < u.cols(); ++j) f.a[j] = u.at(pr, j) / u.at(pr, pc);
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j)
      if (std::abs(u.at(i, j) - f.y[i] * f.a[j]) > tolerance * top) return std::nullopt;
  return f;
}

}  // namespace summing
