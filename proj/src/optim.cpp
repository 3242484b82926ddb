#include "summing/optim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "summing/errors.hpp"
#include "summing/numerics.hpp"
#include "summing/rng.hpp"

namespace summing {

namespace {

constexpr double kMinStep = 1e-10;
constexpr double kMinFamilyStep = 1e-9;
constexpr double kPowerTolerance = 1e-15;
constexpr int kCertifyIterations = 20000;


std::string format_point(std::span<const double> x) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ']';
  return os.str();
}

std::vector<double> to_sphere(const NormedSpace& space, std::vector<double> x) {
  const double n = space.norm(x);
  if (n > 0.0)
    for (double& v : x) v /= n;
  return x;
}

void central_difference(const std::function<double(std::span<const double>)>& f, std::span<const double> x,
                        std::span<double> grad, long& evaluations) {
  std::vector<double> probe(x.begin(), x.end());
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  const double h = 1e-6 * std::max(scale, 1e-8);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = probe[i];
    probe[i] = keep + h;
    const double up = f(probe);
    probe[i] = keep - h;
    const double down = f(probe);
    probe[i] = keep;
    grad[i] = (up - down) / (2.0 * h);
    evaluations += 2;
  }
}

// Extreme points of the unit ball for l_1 and l_inf (dim <= 16); empty otherwise.
std::vector<std::vector<double>> ball_vertices(const NormedSpace& space) {
  std::vector<std::vector<double>> out;
  const auto& s = space.scale();
  const std::size_t n = space.dim();
  if (space.exponent() == 1.0) {
    for (std::size_t j = 0; j < n; ++j) {
      for (double sg : {1.0, -1.0}) {
        std::vector<double> v(n, 0.0);
        v[j] = sg / s[j];
        out.push_back(std::move(v));
      }
    }
  } else if (space.is_inf() && n <= 16) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<double> v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = ((mask >> j) & 1u ? -1.0 : 1.0) / s[j];
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts < 1) throw ParameterError("SearchConfig: restarts must be positive");
  if (iterations < 1) throw ParameterError("SearchConfig: iterations must be positive");
  if (!(initial_step > 0.0)) throw ParameterError("SearchConfig: initial step must be positive");
  if (!(step_decay > 0.0 && step_decay < 1.0)) throw ParameterError("SearchConfig: step decay must lie in (0,1)");
  if (!(smoothing >= 0.0)) throw ParameterError("SearchConfig: smoothing epsilon must be nonnegative");
}

SearchConfig SearchConfig::inner() const {
  SearchConfig c = *this;
  c.restarts = std::min(restarts, 8);
  c.iterations = std::min(iterations, 200);
  return c;
}

SearchConfig SearchConfig::certify() const {
  SearchConfig c = inner();
  c.iterations = std::max(iterations, kCertifyIterations);
  return c;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

EstimateReport maximize_over_ball(const BallObjective& objective, const NormedSpace& space,
                                  const SearchConfig& config) {
  config.validate();
  if (!objective.value) throw InputError("maximize_over_ball: objective has no value function");
  EstimateReport report;
  report.seed = config.seed;
  report.value = -kInf;
  const std::size_t n = space.dim();

  auto eval = [&](std::span<const double> x) {
    const double v = objective.value(x);
    ++report.evaluations;
    if (!std::isfinite(v)) throw SearchError("objective is not finite at " + format_point(x), {x.begin(), x.end()});
    return v;
  };
  auto offer = [&](const std::vector<double>& x, double v, int restart) {
    if (v > report.value) {
      report.value = v;
      report.witness = x;
      report.best_restart = restart;
    }
  };
  std::vector<double> grad(n);
  auto direction = [&](std::span<const double> x) {
    if (objective.gradient) {
      objective.gradient(x, config.smoothing, grad);
    } else {
      central_difference(objective.value, x, grad, report.evaluations);
    }
    return euclidean_norm(grad);
  };

  if (objective.convex) {
    const auto vertices = ball_vertices(space);
    if (!vertices.empty()) {
      // A convex function attains its max over a polytope at a vertex.
      for (const auto& v : vertices) offer(v, eval(v), -1);
      return report;
    }
  }

  const NormedSpace dual = space.dual();
  const int runs = static_cast<int>(objective.starts.size()) + config.restarts;
  for (int run = 0; run < runs; ++run) {
    std::vector<double> x;
    if (run < static_cast<int>(objective.starts.size())) {
      x = retract_to_ball(space, objective.starts[run]);
    } else {
      SplitMix rng(derive_seed(config.seed, static_cast<std::uint64_t>(run) - objective.starts.size()));
      x = to_sphere(space, gaussian_vector(rng, n));
    }
    double fx = eval(x);

    if (objective.convex) {
      for (int it = 0; it < config.iterations; ++it) {
        if (direction(x) == 0.0 || !std::isfinite(grad[0])) break;
        auto next = norming_functional(dual, grad).coordinates;
        const double fn = eval(next);
        if (!(fn > fx)) break;
        const double gain = fn - fx;
        x = std::move(next);
        fx = fn;
        if (gain <= kPowerTolerance * std::abs(fx)) break;
      }
    } else {
      double radius = euclidean_norm(x);
      if (radius == 0.0) radius = 1.0 / *std::max_element(space.scale().begin(), space.scale().end());
      double eta = config.initial_step;
      for (int it = 0; it < config.iterations && eta > kMinStep; ++it) {
        const double gn = direction(x);
        if (gn == 0.0 || !std::isfinite(gn)) break;
        std::vector<double> trial(n);
        for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + eta * radius * grad[i] / gn;
        trial = retract_to_ball(space, trial);
        const double ft = eval(trial);
        if (ft > fx) {
          x = std::move(trial);
          fx = ft;
        }
        eta *= config.step_decay;
      }
    }
    offer(x, fx, run);
  }
  return report;
}

EstimateReport maximize_family_ratio(const FamilyRatio& ratio, const NormedSpace& space, std::size_t k,
                                     const SearchConfig& config) {
  config.validate();
  if (k == 0) throw ParameterError("maximize_family_ratio: family size must be positive");
  if (!ratio.evaluate) throw InputError("maximize_family_ratio: ratio has no evaluator");
  const std::size_t dim = space.dim();
  const std::size_t n = k * dim;

  EstimateReport report;
  report.seed = config.seed;
  report.family_size = k;
  bool found = false;

  const auto& steer = ratio.surrogate ? ratio.surrogate : ratio.evaluate;
  auto measure = [&](std::span<const double> f) {
    ++report.evaluations;
    return steer(f);
  };
  auto usable = [](const RatioValue& r) {
    return r.rhs > 0.0 && std::isfinite(r.rhs) && std::isfinite(r.lhs);
  };
  auto normalize = [&](std::vector<double>& f, RatioValue& at) {
    if (ratio.normalize) {
      ratio.normalize(f, at);
      at = measure(f);
    } else {
      const double s = at.rhs;
      for (double& v : f) v /= s;
      at.lhs /= s;
      at.rhs = 1.0;
    }
  };
  auto log_ratio = [&](std::span<const double> f) {
    const RatioValue r = steer(f);
    return usable(r) ? std::log(r.lhs) - std::log(r.rhs) : -kInf;
  };

  std::vector<double> grad(n);
  const int runs = static_cast<int>(ratio.starts.size()) + config.restarts;
  for (int run = 0; run < runs; ++run) {
    std::vector<double> family;
    if (run < static_cast<int>(ratio.starts.size())) {
      family = ratio.starts[run];
      if (family.size() != n) throw InputError("maximize_family_ratio: start has the wrong size");
    } else {
      SplitMix rng(derive_seed(config.seed, static_cast<std::uint64_t>(run) - ratio.starts.size()));
      family = gaussian_vector(rng, n);
    }
    RatioValue at = measure(family);
    if (!usable(at)) {
      ++report.degenerate_restarts;
      continue;
    }
    normalize(family, at);
    if (!usable(at)) {
      ++report.degenerate_restarts;
      continue;
    }

    // Hill climb on log(lhs/rhs); the accepted step length grows on success
    // and halves on failure, capped by the decaying schedule.
    double cap = config.initial_step;
    double eta = config.initial_step;
    for (int it = 0; it < config.iterations && eta > kMinFamilyStep; ++it) {
      if (at.lhs == 0.0) break;
      if (ratio.gradient) {
        ratio.gradient(family, at, grad);
      } else {
        central_difference(log_ratio, family, grad, report.evaluations);
      }
      const double gn = euclidean_norm(grad);
      if (gn == 0.0 || !std::isfinite(gn)) break;
      const double radius = euclidean_norm(family);
      std::vector<double> trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = family[i] + eta * radius * grad[i] / gn;
      RatioValue tv = measure(trial);
      if (usable(tv) && tv.ratio() > at.ratio()) {
        family = std::move(trial);
        at = std::move(tv);
        normalize(family, at);
        eta = std::min(eta * 1.5, cap);
      } else {
        eta *= 0.5;
      }
      cap *= config.step_decay;
    }

    RatioValue cert = ratio.surrogate ? ratio.evaluate(family) : at;
    if (ratio.surrogate) ++report.evaluations;
    if (!usable(cert)) {
      ++report.degenerate_restarts;
      continue;
    }
    const double value = cert.ratio();
    if (!found || value > report.value) {
      found = true;
      report.value = value;
      report.witness = family;
      report.best_restart = run;
    }
  }
  if (!found) throw EstimationError("maximize_family_ratio: every restart was degenerate");
  return report;
}

PairingSup sup_pairing_sum(std::span<const std::vector<double>> vectors, std::span<const double> log_coeffs,
                           double theta, const NormedSpace& ball, const SearchConfig& config,
                           std::span<const std::vector<double>> warm_starts, bool pair_starts,
                           bool member_starts) {
  if (vectors.size() != log_coeffs.size()) throw InputError("sup_pairing_sum: coefficient count mismatch");
  if (!(theta > 0.0)) throw ParameterError("sup_pairing_sum: exponent must be positive");
  const NormedSpace host = ball.dual();
  std::vector<std::vector<double>> vs;
  std::vector<double> lc;
  std::vector<double> bound;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ball.dim()) throw InputError("sup_pairing_sum: vector dimension mismatch");
    const double nv = host.norm(vectors[i]);
    if (nv == 0.0 || log_coeffs[i] == -kInf) continue;
    vs.push_back(vectors[i]);
    lc.push_back(log_coeffs[i]);
    bound.push_back(log_coeffs[i] + theta * std::log(nv));
  }
  PairingSup out;
  if (vs.empty()) {
    out.log_value = -kInf;
    out.argmax.assign(ball.dim(), 0.0);
    return out;
  }
  // |<v, x>| <= ||v|| on the ball, so the shifted objective lies in [0, 1].
  const double shift = log_sum_exp(bound);
  const std::size_t m = vs.size();

  BallObjective obj;
  obj.convex = theta >= 1.0;
  obj.value = [&, shift](std::span<const double> x) {
    std::vector<double> terms(m);
    for (std::size_t i = 0; i < m; ++i) terms[i] = lc[i] + theta * safe_log(std::abs(dot(vs[i], x)));
    return std::exp(log_sum_exp(terms) - shift);
  };
  obj.gradient = [&](std::span<const double> x, double eps, std::span<double> g) {
    std::vector<double> t(m), w(m);
    double top = -kInf;
    for (std::size_t i = 0; i < m; ++i) {
      t[i] = dot(vs[i], x);
      w[i] = lc[i] + (0.5 * theta - 1.0) * std::log(t[i] * t[i] + eps * eps);
      if (t[i] != 0.0) top = std::max(top, w[i]);
    }
    std::fill(g.begin(), g.end(), 0.0);
    if (top == -kInf) {
      // Every pairing vanishes: move toward the dominant vector.
      std::size_t best = static_cast<std::size_t>(std::max_element(bound.begin(), bound.end()) - bound.begin());
      for (std::size_t j = 0; j < g.size(); ++j) g[j] = vs[best][j];
      return;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i] == 0.0) continue;
      const double c = std::exp(w[i] - top) * t[i];
      for (std::size_t j = 0; j < g.size(); ++j) g[j] += c * vs[i][j];
    }
  };
  for (const auto& w : warm_starts) {
    if (w.size() == ball.dim()) obj.starts.push_back(w);
  }
  for (std::size_t i = 0; member_starts && i < m; ++i)
    obj.starts.push_back(norming_functional(host, vs[i]).coordinates);
  for (std::size_t i = 0; pair_starts && i < m && obj.starts.size() < 32; ++i) {
    for (std::size_t j = i + 1; j < m && obj.starts.size() < 32; ++j) {
      for (double sg : {1.0, -1.0}) {
        std::vector<double> c(vs[i]);
        for (std::size_t d = 0; d < c.size(); ++d) c[d] += sg * vs[j][d];
        if (host.norm(c) > 0.0) obj.starts.push_back(norming_functional(host, c).coordinates);
      }
    }
  }

  const EstimateReport r = maximize_over_ball(obj, ball, config);
  out.log_value = safe_log(r.value) + shift;
  out.argmax = r.witness;
  out.evaluations = r.evaluations;
  return out;
}

}  // namespace summing
