#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <limits>

namespace summing::cli {

namespace {

template <typename F>
auto located(const Node& node, F&& build) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    node.fail(e.what());
  }
}

}  // namespace

bool Node::has(const std::string& key) const { return value_->is_object() && value_->contains(key); }

Node Node::at(const std::string& key) const {
  if (!value_->is_object()) fail("expected an object");
  auto it = value_->find(key);
  if (it == value_->end()) fail("missing required field '" + key + "'");
  return Node(*it, path_ + "/" + key);
}

Node Node::at(std::size_t index) const {
  if (!value_->is_array()) fail("expected an array");
  if (index >= value_->size()) fail("index " + std::to_string(index) + " out of range");
  return Node((*value_)[index], path_ + "/" + std::to_string(index));
}

std::size_t Node::size() const {
  if (!value_->is_array()) fail("expected an array");
  return value_->size();
}

double Node::number() const {
  if (!value_->is_number()) fail("expected a number");
  const double v = value_->get<double>();
  if (!std::isfinite(v)) fail("expected a finite number");
  return v;
}

double Node::exponent() const {
  if (value_->is_string()) {
    if (value_->get<std::string>() == "inf") return kInf;
    fail("expected a number or \"inf\"");
  }
  return number();
}

std::uint64_t Node::u64() const {
  if (value_->is_number_unsigned()) return value_->get<std::uint64_t>();
  if (!value_->is_number_integer() || value_->get<std::int64_t>() < 0) fail("expected a non-negative integer");
  return static_cast<std::uint64_t>(value_->get<std::int64_t>());
}

std::size_t Node::count() const {
  const std::uint64_t v = u64();
  if (v > (std::uint64_t{1} << 31)) fail("integer too large");
  return static_cast<std::size_t>(v);
}

std::string Node::string() const {
  if (!value_->is_string()) fail("expected a string");
  return value_->get<std::string>();
}

std::vector<double> Node::numbers() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i).number();
  return out;
}

std::vector<std::vector<double>> Node::rows() const {
  std::vector<std::vector<double>> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i).numbers();
  return out;
}

double Node::number_or(const std::string& key, double fallback) const {
  return has(key) ? at(key).number() : fallback;
}

std::size_t Node::count_or(const std::string& key, std::size_t fallback) const {
  return has(key) ? at(key).count() : fallback;
}

void Node::fail(const std::string& what) const { throw ConfigError(path_.empty() ? "/" : path_, what); }

NormedSpace parse_space(const Node& node) {
  const std::size_t dim = node.at("dim").count();
  const double r = node.at("r").exponent();
  std::vector<double> weights;
  if (node.has("weights")) weights = node.at("weights").numbers();
  return located(node, [&] { return NormedSpace(dim, r, weights); });
}

AtomicMeasure parse_measure(const Node& node) {
  if (node.raw().is_object() && node.has("counting")) {
    const std::size_t n = node.at("counting").count();
    return located(node, [&] { return AtomicMeasure::counting(n); });
  }
  const auto weights = node.at("weights").numbers();
  return located(node, [&] { return AtomicMeasure(weights); });
}

Operator parse_operator(const Node& node) {
  const NormedSpace domain = parse_space(node.at("domain"));
  const NormedSpace codomain = parse_space(node.at("codomain"));
  const Node m = node.at("matrix");
  std::vector<double> flat;
  if (m.size() > 0 && m.at(0).raw().is_array()) {
    if (m.size() != codomain.dim()) m.fail("expected " + std::to_string(codomain.dim()) + " rows");
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto row = m.at(i).numbers();
      if (row.size() != domain.dim()) m.at(i).fail("expected " + std::to_string(domain.dim()) + " columns");
      flat.insert(flat.end(), row.begin(), row.end());
    }
  } else {
    flat = m.numbers();
  }
  return located(m, [&] { return Operator(flat, domain, codomain); });
}

SimpleFunction parse_function(const Node& node, const NormedSpace& codomain) {
  const AtomicMeasure measure = parse_measure(node.at("measure"));
  const Node values = node.at("values");
  const auto rows = values.rows();
  return located(values, [&] { return SimpleFunction(measure, codomain, rows); });
}

SummingParams parse_params(const Node& node) {
  SummingParams params{node.at("q").number(), node.at("p").number(), node.number_or("sigma", 0.0)};
  located(node, [&] {
    params.validate();
    return 0;
  });
  return params;
}

SearchConfig parse_search(const Node& root) {
  SearchConfig config;
  if (root.has("search")) {
    const Node s = root.at("search");
    if (!s.raw().is_object()) s.fail("expected an object");
    if (s.has("restarts")) config.restarts = static_cast<int>(s.at("restarts").count());
    if (s.has("iterations")) config.iterations = static_cast<int>(s.at("iterations").count());
    config.initial_step = s.number_or("initial_step", config.initial_step);
    config.step_decay = s.number_or("step_decay", config.step_decay);
    config.smoothing = s.number_or("smoothing", config.smoothing);
    located(s, [&] {
      config.validate();
      return 0;
    });
  }
  config.seed = root.has("seed") ? root.at("seed").u64() : 0;
  return config;
}

json exponent_json(double r) {
  if (std::isinf(r)) return "inf";
  return r;
}

json space_json(const NormedSpace& space) {
  return json{{"dim", space.dim()}, {"r", exponent_json(space.exponent())}, {"weights", space.weights()}};
}

namespace {

// Minimal scanner over already-validated JSON text that tracks pointers.
class Locator {
 public:
  Locator(const std::string& text, const std::string& target) : s_(text), target_(target) {}

  std::optional<int> run() {
    value("");
    return found_;
  }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }

  std::string string() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      if (i_ < s_.size()) out += s_[i_++];
    }
    ++i_;
    return out;
  }

  void value(const std::string& path) {
    ws();
    if (found_ || i_ >= s_.size()) return;
    if (path == target_) {
      found_ = line_;
      return;
    }
    const char c = s_[i_];
    if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      std::size_t index = 0;
      for (;;) {
        ws();
        if (i_ >= s_.size() || s_[i_] == close) break;
        std::string key;
        if (c == '{') {
          key = string();
          ws();
          ++i_;  // ':'
        } else {
          key = std::to_string(index++);
        }
        value(path + "/" + key);
        if (found_) return;
        ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
      }
      ++i_;
    } else if (c == '"') {
      string();
    } else {
      while (i_ < s_.size() && !std::strchr(",]} \t\r\n", s_[i_])) ++i_;
    }
  }

  const std::string& s_;
  const std::string& target_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::optional<int> found_;
};

}  // namespace

std::optional<int> locate_line(const std::string& text, const std::string& pointer) {
  return Locator(text, pointer == "/" ? "" : pointer).run();
}

}  // namespace summing::cli
