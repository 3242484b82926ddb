#pragma once

#include <span>
#include <vector>

#include "summing/measures.hpp"
#include "summing/operator.hpp"
#include "summing/spaces.hpp"

namespace summing {

// A function on the atoms of a finite measure with values in a normed space.
class SimpleFunction {
 public:
  SimpleFunction(AtomicMeasure measure, NormedSpace codomain, std::vector<std::vector<double>> values);

  static SimpleFunction zero(const AtomicMeasure& measure, const NormedSpace& codomain);
  static SimpleFunction constant(const AtomicMeasure& measure, const NormedSpace& codomain,
                                 std::span<const double> x);
  // Values read atom by atom from a flat array of size atoms * dim.
  static SimpleFunction from_flat(const AtomicMeasure& measure, const NormedSpace& codomain,
                                  std::span<const double> flat);

  const AtomicMeasure& measure() const noexcept { return measure_; }
  const NormedSpace& codomain() const noexcept { return codomain_; }
  std::size_t atoms() const noexcept { return values_.size(); }
  const std::vector<std::vector<double>>& values() const noexcept { return values_; }
  const std::vector<double>& value(std::size_t atom) const { return values_.at(atom); }
  std::vector<double> flat() const;

  SimpleFunction scaled(double alpha) const;
  SimpleFunction operator+(const SimpleFunction& other) const;
  SimpleFunction operator-(const SimpleFunction& other) const;
  // u o f.
  SimpleFunction composed(const Operator& u) const;

  // ||f(i)|| for every atom.
  std::vector<double> pointwise_norms() const;
  bool is_zero() const;

 private:
  void check_compatible(const SimpleFunction& other) const;

  AtomicMeasure measure_;
  NormedSpace codomain_;
  std::vector<std::vector<double>> values_;
};

}  // namespace summing
