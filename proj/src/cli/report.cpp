#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace summing::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string optional_field(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    if (std::isinf(*v)) return "inf";
  }
  return *v;
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const Row& r : report.rows) {
    out << csv_field(report.command) << ',' << report.config_hash << ',' << report.seed << ','
        << csv_field(r.label) << ',' << optional_field(r.q) << ',' << optional_field(r.p) << ','
        << optional_field(r.sigma) << ',' << format_double(r.value) << ',' << optional_field(r.oracle) << ','
        << csv_field(r.provenance) << ',' << r.verdict << ',' << optional_field(r.family_size) << ','
        << optional_field(r.evaluations) << ',' << optional_field(r.seconds) << '\n';
  }
  return out.str();
}

std::string to_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const Row& r : report.rows) {
    nlohmann::json row{{"label", r.label},
                       {"q", optional_json(r.q)},
                       {"p", optional_json(r.p)},
                       {"sigma", optional_json(r.sigma)},
                       {"value", r.value},
                       {"oracle", optional_json(r.oracle)},
                       {"oracle_provenance", r.provenance},
                       {"verdict", r.verdict},
                       {"family_size", optional_json(r.family_size)},
                       {"evaluations", optional_json(r.evaluations)}};
    if (r.seconds) row["seconds"] = *r.seconds;
    rows.push_back(std::move(row));
  }
  nlohmann::json doc{{"command", report.command}, {"config_hash", report.config_hash}, {"seed", report.seed},
                     {"inputs", report.inputs},   {"rows", rows},                     {"details", report.details}};
  return doc.dump(2) + "\n";
}

}  // namespace summing::cli
