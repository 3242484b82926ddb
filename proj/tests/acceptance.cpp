// Acceptance suite: one PASS/FAIL line per criterion, plus a JSON report per
// criterion under --reports.  With --compare, the reports must be
// byte-identical to those of an earlier run.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "summing/cli.hpp"
#include "summing/errors.hpp"
#include "summing/measures.hpp"
#include "summing/rng.hpp"
#include "summing/rs_core.hpp"
#include "summing/sigma_summing.hpp"
#include "summing/vvfun.hpp"

using namespace summing;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::uint64_t kMasterSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string summary;
  ordered_json report = ordered_json::object();
};

// %.17g keeps reports exact and byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double uniform(SplitMix& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

std::vector<double> random_weights(SplitMix& rng, std::size_t n) {
  std::vector<double> w(n);
  for (double& v : w) v = uniform(rng, 0.05, 3.0);
  return w;
}

double pick_exponent(SplitMix& rng) {
  static const double r[] = {1.0, 2.0, kInf};
  return r[rng() % 3];
}

SearchConfig search(int restarts, std::uint64_t seed) {
  SearchConfig c;
  c.restarts = restarts;
  c.seed = seed;
  return c;
}

double rel_gap(double value, double oracle) { return std::abs(value - oracle) / oracle; }

Outcome rank_one_agreement() {
  Outcome o;
  SplitMix rng(derive_seed(kMasterSeed, 1));
  const std::pair<double, double> qps[] = {{1, 1}, {2, 1}, {2, 2}, {4, 2}};
  const double sigmas[] = {0.0, 0.3, 0.7};
  double worst_low = 1.0, worst_high = 0.0;
  int runs = 0;
  ordered_json cases = ordered_json::array();
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 3, m = 2 + rng() % 3;
    const NormedSpace X(n, pick_exponent(rng)), Y(m, pick_exponent(rng));
    const auto a = gaussian_vector(rng, n);
    const auto y = gaussian_vector(rng, m);
    const Operator u = Operator::rank_one(a, y, X, Y);
    const double oracle = rank_one_oracle(u)->value;
    for (double sigma : sigmas)
      for (const auto& [q, p] : qps) {
        const auto r = pi_norm_lb(u, SummingParams{q, p, sigma}, 0, search(16, derive_seed(kMasterSeed, 100 + runs)));
        ++runs;
        const double ratio = r.value / oracle;
        worst_low = std::min(worst_low, ratio);
        worst_high = std::max(worst_high, ratio);
        if (ratio < 0.999 || ratio > 1 + 1e-6) o.pass = false;
        cases.push_back({num(q), num(p), num(sigma), num(r.value), num(oracle)});
      }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= 120.0) o.pass = false;
  o.report["cases"] = cases;
  o.report["min_ratio"] = num(worst_low);
  o.report["max_ratio"] = num(worst_high);
  o.summary = std::to_string(runs) + " runs, ratio in [" + num(worst_low) + ", " + num(worst_high) + "], " +
              std::to_string(seconds) + " s";
  return o;
}

Outcome hilbert_case() {
  Outcome o;
  const auto checks = cli::validate_oracles(kMasterSeed, 1e-3);
  ordered_json v = ordered_json::array();
  for (const auto& c : checks) {
    v.push_back({c.name, num(c.brute), num(c.oracle), c.pass});
    if (!c.pass) o.pass = false;
  }
  o.report["validate_oracles"] = v;
  if (!o.pass) {
    o.summary = "validate-oracles failed; criterion not run";
    return o;
  }
  std::string summary;
  for (std::size_t n : {2u, 3u}) {
    const auto r = pi_norm_lb(Operator::identity(NormedSpace(n, 2.0)), SummingParams{2, 2, 0}, 0,
                              search(64, derive_seed(kMasterSeed, 200 + n)));
    const double target = std::sqrt(static_cast<double>(n));
    if (r.value < 0.95 * target || r.value > target * (1 + 1e-6)) o.pass = false;
    o.report["n" + std::to_string(n)] = {num(r.value), num(target)};
    summary += "n=" + std::to_string(n) + ": " + num(r.value / target) + " of sqrt(n); ";
  }
  o.summary = summary + std::to_string(checks.size()) + " oracle checks passed";
  return o;
}

Outcome amplification_identity() {
  Outcome o;
  SplitMix rng(derive_seed(kMasterSeed, 3));
  double worst = 0.0;
  ordered_json residuals = ordered_json::array();
  int instances = 0;
  while (instances < 100) {
    const std::size_t d = 2 + rng() % 2, atoms = 2 + rng() % 4;
    const NormedSpace X(d, pick_exponent(rng)), Y(2, pick_exponent(rng));
    const Operator u(gaussian_vector(rng, 2 * d), X, Y);
    const AtomicMeasure mu(random_weights(rng, atoms));
    const RsSystem system = instances % 2 == 0
                                ? sigma_rs_system(X, uniform(rng, 0.0, 0.9), mu)
                                : finite_parameter_system(X, {gaussian_vector(rng, d), gaussian_vector(rng, d)}, mu);
    // q1 < q2 and p1 <= p2 with 1/p1 - 1/p2 <= 1/q1 - 1/q2.
    const double q1 = uniform(rng, 1.0, 3.0), q2 = q1 + uniform(rng, 0.2, 4.0);
    const double p2 = uniform(rng, 1.0, q2);
    const double p1 = std::max(1.0, 1.0 / (1.0 / p2 + uniform(rng, 0.0, 1.0) * (1.0 / q1 - 1.0 / q2)));
    if (!inclusion_condition(p1, p2, q1, q2)) continue;
    std::vector<std::vector<double>> values(atoms);
    for (auto& v : values) v = gaussian_vector(rng, d);
    ScalarWeighting g{gaussian_vector(rng, atoms)};
    const RsWitness w{SimpleFunction(mu, X, values), g, 0.0};
    const RsWitness amp = amplify_witness(system, u, w, q1, q2, p1, p2, search(4, instances));
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < atoms; ++i) {
      lhs += mu.weights()[i] * std::pow(std::abs(system.S(u, w.f.scaled(amp.g.values[i]), i)), q1);
      rhs += mu.weights()[i] * std::pow(std::abs(system.S(u, w.f.scaled(g.values[i]), i)), q2);
    }
    const double res = rel_gap(lhs, rhs);
    worst = std::max(worst, res);
    if (!(res <= 1e-9)) o.pass = false;
    residuals.push_back(num(res));
    ++instances;
  }
  o.report["residuals"] = residuals;
  o.summary = "100 instances, worst relative residual " + num(worst);
  return o;
}

Outcome inclusion_consistency() {
  Outcome o;
  SplitMix rng(derive_seed(kMasterSeed, 4));
  const SummingParams pairs[][2] = {{{1, 1, 0}, {2, 2, 0}}, {{1, 1, 0}, {2, 1, 0}}, {{2, 2, 0}, {4, 4, 0}},
                                    {{1, 1, 0}, {4, 2, 0}}};
  int checked = 0, violations = 0;
  double worst = 0.0;
  ordered_json runs = ordered_json::array();
  auto check = [&](const Operator& u, SummingParams a, SummingParams b) {
    if (!inclusion_condition(a.p, b.p, a.q, b.q)) return;
    const auto rep = corollary_inclusion_check(u, a, b, 3, search(64, derive_seed(kMasterSeed, 400 + checked)));
    ++checked;
    if (!rep.oracle1) {
      o.pass = false;
      return;
    }
    worst = std::max(worst, rep.lower2.value / rep.oracle1->value);
    if (rep.verdict == Verdict::Violation) ++violations;
    runs.push_back({num(a.q), num(a.p), num(b.q), num(b.p), num(a.sigma), num(rep.lower2.value),
                    num(rep.oracle1->value), to_string(rep.verdict)});
  };
  for (int t = 0; t < 4; ++t) {
    const NormedSpace X(2, pick_exponent(rng)), Y(2, pick_exponent(rng));
    const auto a = gaussian_vector(rng, 2);
    const auto y = gaussian_vector(rng, 2);
    const Operator u = Operator::rank_one(a, y, X, Y);
    const double sigma = t % 2 == 0 ? 0.0 : 0.4;
    for (const auto& pr : pairs) {
      SummingParams a = pr[0], b = pr[1];
      a.sigma = b.sigma = sigma;
      check(u, a, b);
    }
  }
  for (int t = 0; t < 3; ++t) {
    const Operator u(gaussian_vector(rng, 4), NormedSpace(2, kInf), NormedSpace(2, pick_exponent(rng)));
    for (const auto& pr : pairs)
      if (pr[0].q == 1 && pr[0].p == 1) check(u, pr[0], pr[1]);
  }
  if (violations > 0) o.pass = false;
  o.report["runs"] = runs;
  o.summary = std::to_string(checked) + " checks, " + std::to_string(violations) +
              " violations, worst lower2/oracle1 " + num(worst);
  return o;
}

bool direct_gate(double p1, double p2, double q1, double q2) {
  if (p1 > p2 || q1 > q2) return false;
  const double lhs = 1.0 / p1 - 1.0 / p2;
  const double rhs = 1.0 / q1 - 1.0 / q2;
  return !(lhs > rhs);
}

Outcome gate_arithmetic() {
  Outcome o;
  SplitMix rng(derive_seed(kMasterSeed, 5));
  static const double grid[] = {1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, kInf};
  auto draw = [&] { return rng() % 2 == 0 ? grid[rng() % 8] : uniform(rng, 1.0, 10.0); };
  int mismatches = 0, accepted = 0;
  for (int k = 0; k < 10000; ++k) {
    const double p1 = draw(), p2 = draw(), q1 = draw(), q2 = draw();
    const bool got = inclusion_condition(p1, p2, q1, q2);
    if (got != direct_gate(p1, p2, q1, q2)) ++mismatches;
    accepted += got;
  }
  int always_true_failures = 0;
  for (int k = 0; k < 1000; ++k) {
    double p = draw(), q = draw();
    if (p > q) std::swap(p, q);
    if (!inclusion_condition(1.0, p, 1.0, q)) ++always_true_failures;
  }
  o.pass = mismatches == 0 && always_true_failures == 0;
  o.report = {{"mismatches", mismatches}, {"accepted", accepted}, {"always_true_failures", always_true_failures}};
  o.summary = "10000 grid points, " + std::to_string(mismatches) + " mismatches, " + std::to_string(accepted) +
              " accepted; p1=q1=1 case failures " + std::to_string(always_true_failures);
  return o;
}

SimpleFunction random_function(SplitMix& rng, std::size_t atoms, const NormedSpace& X) {
  std::vector<std::vector<double>> values(atoms);
  for (auto& v : values) v = gaussian_vector(rng, X.dim());
  return SimpleFunction(AtomicMeasure(random_weights(rng, atoms)), X, std::move(values));
}

Outcome phi_properties() {
  Outcome o;
  SplitMix rng(derive_seed(kMasterSeed, 6));
  double worst_bochner = 0.0;
  for (int t = 0; t < 100; ++t) {
    const NormedSpace X(2 + rng() % 3, pick_exponent(rng));
    const auto f = random_function(rng, 2 + rng() % 4, X);
    const double p = uniform(rng, 1.0, 5.0);
    worst_bochner = std::max(worst_bochner, rel_gap(phi_seminorm(f, p, 1.0, search(4, t)), bochner_norm(f, p)));
  }
  if (!(worst_bochner <= 1e-12)) o.pass = false;

  double worst_excess = -kInf, worst_improvement = 0.0;
  ordered_json sweeps = ordered_json::array();
  for (int t = 0; t < 50; ++t) {
    const NormedSpace X(2, pick_exponent(rng));
    const auto f = random_function(rng, 3, X);
    const double p = uniform(rng, 1.0, 3.0);
    const double sigma = t % 2 == 0 ? 0.0 : 1.0;
    const SearchConfig c = search(8, derive_seed(kMasterSeed, 600 + t));
    const double phi = phi_seminorm(f, p, sigma, c);
    ordered_json row = ordered_json::array();
    for (std::size_t m = 1; m <= 4; ++m) {
      const double ub = convex_seminorm_ub(f, p, sigma, m, c);
      worst_excess = std::max(worst_excess, ub - phi);
      worst_improvement = std::max(worst_improvement, (phi - ub) / phi);
      row.push_back(num(ub));
    }
    sweeps.push_back(row);
  }
  // Intermediate sigma: the bound still never exceeds Phi.
  for (int t = 0; t < 10; ++t) {
    const NormedSpace X(2, pick_exponent(rng));
    const auto f = random_function(rng, 3, X);
    const double p = uniform(rng, 1.0, 3.0), sigma = uniform(rng, 0.1, 0.9);
    const SearchConfig c = search(4, derive_seed(kMasterSeed, 700 + t));
    worst_excess = std::max(worst_excess, convex_seminorm_ub(f, p, sigma, 3, c) - phi_seminorm(f, p, sigma, c));
  }
  if (!(worst_excess <= 1e-9) || !(worst_improvement < 1e-4)) o.pass = false;
  o.report = {{"worst_bochner_gap", num(worst_bochner)},
              {"worst_excess", num(worst_excess)},
              {"worst_improvement", num(worst_improvement)},
              {"sweeps", sweeps}};
  o.summary = "bochner gap " + num(worst_bochner) + ", max(ub - phi) " + num(worst_excess) +
              ", worst m-sweep improvement " + num(worst_improvement);
  return o;
}

Outcome composition_two_sided() {
  Outcome o;
  SplitMix rng(derive_seed(kMasterSeed, 7));
  double worst_gap = 0.0;
  ordered_json runs = ordered_json::array();
  for (int t = 0; t < 3; ++t) {
    const NormedSpace X(2, pick_exponent(rng)), Y(2, pick_exponent(rng));
    const auto a = gaussian_vector(rng, 2);
    const auto y = gaussian_vector(rng, 2);
    const Operator u = Operator::rank_one(a, y, X, Y);
    const double oracle = rank_one_oracle(u)->value;
    for (double sigma : {0.0, 0.5}) {
      AtomicMeasure mu = AtomicMeasure::uniform_probability(2);
      double prev_gap = kInf;
      ordered_json gaps = ordered_json::array();
      for (int level = 0; level < 3; ++level, mu = mu.refine()) {
        const auto r = composition_norm_lb(u, sigma, mu, 2, search(16, derive_seed(kMasterSeed, 700 + t)));
        const double gap = std::abs(r.value - oracle);
        worst_gap = std::max(worst_gap, gap / oracle);
        if (gap > 0.1 * oracle) o.pass = false;
        if (gap > prev_gap + 1e-9 * oracle) o.pass = false;
        prev_gap = gap;
        gaps.push_back({mu.size(), num(r.value), num(oracle)});
      }
      runs.push_back({{"sigma", num(sigma)}, {"levels", gaps}});
    }
  }
  o.report["runs"] = runs;
  o.summary = "3 operators x 2 sigmas x {2,4,8} atoms, worst relative gap " + num(worst_gap);
  return o;
}

Outcome embedding_constants() {
  Outcome o;
  SplitMix rng(derive_seed(kMasterSeed, 8));
  double worst = 0.0, worst_indicator = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 7;
    const AtomicMeasure mu(random_weights(rng, n));
    const double r = uniform(rng, 1.0, 3.0), s = r + uniform(rng, 0.1, 4.0);
    const double closed = embedding_constant(mu, s, r);
    double brute = 0.0;
    std::vector<double> g(n);
    for (int k = 0; k < 100000; ++k) {
      // Supports of every size, the smallest ones most often.
      const std::size_t width = rng() % n;
      const std::size_t support = rng() % 2 == 0 ? 1 : 1 + width;
      std::fill(g.begin(), g.end(), 0.0);
      for (std::size_t j = 0; j < support; ++j) g[rng() % n] = uniform(rng, -2.0, 2.0);
      if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; })) continue;
      brute = std::max(brute, lp_norm(mu, g, s) / lp_norm(mu, g, r));
    }
    worst = std::max(worst, rel_gap(brute, closed));
    if (brute > closed * (1 + 1e-12)) o.pass = false;
    const auto min_atom = std::min_element(mu.weights().begin(), mu.weights().end()) - mu.weights().begin();
    std::fill(g.begin(), g.end(), 0.0);
    g[min_atom] = 1.0;
    worst_indicator = std::max(worst_indicator, rel_gap(lp_norm(mu, g, s) / lp_norm(mu, g, r), closed));
  }
  bool counting_exact = true;
  for (std::size_t n : {1u, 3u, 10u})
    for (auto [s, r] : {std::pair{2.0, 1.0}, std::pair{5.0, 1.5}})
      counting_exact = counting_exact && embedding_constant(AtomicMeasure::counting(n), s, r) == 1.0;
  if (!(worst <= 1e-6) || !(worst_indicator <= 1e-12) || !counting_exact) o.pass = false;
  o.report = {{"worst_sampled_gap", num(worst)},
              {"worst_indicator_gap", num(worst_indicator)},
              {"counting_exact", counting_exact}};
  o.summary = "20 measures x 1e5 samples, worst gap " + num(worst) + ", indicator gap " + num(worst_indicator) +
              ", counting measure exact: " + (counting_exact ? "yes" : "no");
  return o;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string reports = "acceptance_reports";
  std::string compare;
  app.add_option("--reports", reports, "Directory for per-criterion reports");
  app.add_option("--compare", compare, "Directory of an earlier run that must match byte for byte");
  std::vector<int> only;
  app.add_option("--seed", kMasterSeed, "Master seed");
  app.add_option("--only", only, "Run only these criteria (1-8)");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(reports);

  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"rank-one oracle agreement", rank_one_agreement},
      {"Hilbert case", hilbert_case},
      {"amplification identity", amplification_identity},
      {"inclusion consistency", inclusion_consistency},
      {"gate arithmetic", gate_arithmetic},
      {"Phi and convexification", phi_properties},
      {"composition two-sided check", composition_two_sided},
      {"embedding constants", embedding_constants},
  };

  bool all = true;
  int index = 1;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), index) == only.end()) {
      ++index;
      continue;
    }
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    ordered_json doc{{"criterion", index}, {"name", c.name}, {"pass", o.pass}, {"seed", kMasterSeed},
                     {"results", o.report}};
    std::ofstream(fs::path(reports) / ("criterion" + std::to_string(index) + ".json"), std::ios::binary)
        << doc.dump(2) << '\n';
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index << " (" << c.name << "): " << o.summary
              << std::endl;
    all = all && o.pass;
    ++index;
  }

  // Criterion 9: byte-identical reports across runs with the same seed.
  if (compare.empty() || !only.empty()) {
    std::cout << "SKIP criterion 9 (determinism): needs --compare and the full suite" << std::endl;
  } else {
    int differing = 0, files = 0;
    for (int k = 1; k < index; ++k) {
      const std::string name = "criterion" + std::to_string(k) + ".json";
      ++files;
      const fs::path a = fs::path(reports) / name, b = fs::path(compare) / name;
      if (!fs::exists(b) || read_file(a) != read_file(b)) ++differing;
    }
    const bool pass = differing == 0;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion 9 (determinism): " << files << " report files, "
              << differing << " differ from " << compare << std::endl;
    all = all && pass;
  }
  return all ? 0 : 1;
}
