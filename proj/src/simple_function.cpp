#include "summing/simple_function.hpp"

#include <algorithm>
#include <string>

#include "summing/errors.hpp"

namespace summing {

SimpleFunction::SimpleFunction(AtomicMeasure measure, NormedSpace codomain, std::vector<std::vector<double>> values)
    : measure_(std::move(measure)), codomain_(std::move(codomain)), values_(std::move(values)) {
  if (values_.size() != measure_.size())
    throw InputError("SimpleFunction: " + std::to_string(values_.size()) + " values for " +
                     std::to_string(measure_.size()) + " atoms");
  for (const auto& v : values_) {
    if (v.size() != codomain_.dim())
      throw InputError("SimpleFunction: value of length " + std::to_string(v.size()) + " in a space of dimension " +
                       std::to_string(codomain_.dim()));
  }
}

SimpleFunction SimpleFunction::zero(const AtomicMeasure& measure, const NormedSpace& codomain) {
  return SimpleFunction(measure, codomain,
                        std::vector<std::vector<double>>(measure.size(), std::vector<double>(codomain.dim(), 0.0)));
}

SimpleFunction SimpleFunction::constant(const AtomicMeasure& measure, const NormedSpace& codomain,
                                        std::span<const double> x) {
  return SimpleFunction(measure, codomain,
                        std::vector<std::vector<double>>(measure.size(), std::vector<double>(x.begin(), x.end())));
}

SimpleFunction SimpleFunction::from_flat(const AtomicMeasure& measure, const NormedSpace& codomain,
                                         std::span<const double> flat) {
  const std::size_t d = codomain.dim();
  if (flat.size() != measure.size() * d) throw InputError("SimpleFunction::from_flat: size mismatch");
  std::vector<std::vector<double>> values(measure.size());
  for (std::size_t i = 0; i < measure.size(); ++i) values[i].assign(flat.begin() + i * d, flat.begin() + (i + 1) * d);
  return SimpleFunction(measure, codomain, std::move(values));
}

std::vector<double> SimpleFunction::flat() const {
  std::vector<double> out;
  out.reserve(atoms() * codomain_.dim());
  for (const auto& v : values_) out.insert(out.end(), v.begin(), v.end());
  return out;
}

SimpleFunction SimpleFunction::scaled(double alpha) const {
  SimpleFunction out(*this);
  for (auto& v : out.values_)
    for (double& x : v) x *= alpha;
  return out;
}

void SimpleFunction::check_compatible(const SimpleFunction& other) const {
  if (!(measure_ == other.measure_) || !(codomain_ == other.codomain_))
    throw InputError("SimpleFunction: operands live on different measures or spaces");
}

SimpleFunction SimpleFunction::operator+(const SimpleFunction& other) const {
  check_compatible(other);
  SimpleFunction out(*this);
  for (std::size_t i = 0; i < atoms(); ++i)
    for (std::size_t j = 0; j < codomain_.dim(); ++j) out.values_[i][j] += other.values_[i][j];
  return out;
}

SimpleFunction SimpleFunction::operator-(const SimpleFunction& other) const {
  check_compatible(other);
  SimpleFunction out(*this);
  for (std::size_t i = 0; i < atoms(); ++i)
    for (std::size_t j = 0; j < codomain_.dim(); ++j) out.values_[i][j] -= other.values_[i][j];
  return out;
}

SimpleFunction SimpleFunction::composed(const Operator& u) const {
  if (!(u.domain() == codomain_)) throw InputError("SimpleFunction::composed: operator domain mismatch");
  std::vector<std::vector<double>> out;
  out.reserve(atoms());
  for (const auto& v : values_) out.push_back(u.apply(v));
  return SimpleFunction(measure_, u.codomain(), std::move(out));
}

std::vector<double> SimpleFunction::pointwise_norms() const {
  std::vector<double> out;
  out.reserve(atoms());
  for (const auto& v : values_) out.push_back(codomain_.norm(v));
  return out;
}

bool SimpleFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const auto& v) { return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }); });
}

}  // namespace summing
