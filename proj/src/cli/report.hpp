#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace summing::cli {

// One line of a report; also the CSV schema.
struct Row {
  std::string label;
  std::optional<double> q;
  std::optional<double> p;
  std::optional<double> sigma;
  double value = 0.0;
  std::optional<double> oracle;
  std::string provenance;
  std::string verdict;
  std::optional<std::size_t> family_size;
  std::optional<long> evaluations;
  std::optional<double> seconds;
};

struct Report {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  nlohmann::json inputs;
  std::vector<Row> rows;
  nlohmann::json details = nlohmann::json::object();
};

inline const char* const kCsvHeader =
    "command,config_hash,seed,label,q,p,sigma,value,oracle,oracle_provenance,verdict,family_size,evaluations,seconds";

// FNV-1a 64 of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

// %.17g
std::string format_double(double v);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

}  // namespace summing::cli
