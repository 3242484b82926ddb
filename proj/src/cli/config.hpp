#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "summing/measures.hpp"
#include "summing/operator.hpp"
#include "summing/optim.hpp"
#include "summing/sigma_summing.hpp"
#include "summing/simple_function.hpp"

namespace summing::cli {

using nlohmann::json;

// Schema violation located by a JSON pointer into the config.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Read-only view of a config node that remembers where it came from.
class Node {
 public:
  Node(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const json& raw() const { return *value_; }
  const std::string& path() const { return path_; }
  bool has(const std::string& key) const;
  Node at(const std::string& key) const;
  Node at(std::size_t index) const;
  std::size_t size() const;

  double number() const;
  // Finite number or the string "inf".
  double exponent() const;
  std::uint64_t u64() const;
  std::size_t count() const;
  std::string string() const;
  std::vector<double> numbers() const;
  std::vector<std::vector<double>> rows() const;

  double number_or(const std::string& key, double fallback) const;
  std::size_t count_or(const std::string& key, std::size_t fallback) const;

  [[noreturn]] void fail(const std::string& what) const;

 private:
  const json* value_;
  std::string path_;
};

NormedSpace parse_space(const Node& node);
AtomicMeasure parse_measure(const Node& node);
Operator parse_operator(const Node& node);
SimpleFunction parse_function(const Node& node, const NormedSpace& codomain);
SummingParams parse_params(const Node& node);
SearchConfig parse_search(const Node& root);

json space_json(const NormedSpace& space);
json exponent_json(double r);

// 1-based line of `text` where the value at `pointer` starts, if present.
std::optional<int> locate_line(const std::string& text, const std::string& pointer);

}  // namespace summing::cli
