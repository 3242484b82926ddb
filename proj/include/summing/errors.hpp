#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace summing {

// Malformed input: dimension mismatches, zero vectors where nonzero is required.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter outside the admissible range of an operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Objective produced a non-finite value during a search.
class SearchError : public std::runtime_error {
 public:
  SearchError(const std::string& what, std::vector<double> point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

// A search could not produce any estimate (every restart degenerate).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Family whose right-hand side vanishes.
class DegenerateFamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace summing
