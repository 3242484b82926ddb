#include "summing/vvfun.hpp"

#include <algorithm>
#include <cmath>

#include "summing/errors.hpp"
#include "summing/numerics.hpp"
#include "summing/rng.hpp"
#include "summing/sigma_summing.hpp"

namespace summing {

SimpleFunction Decomposition::sum() const {
  if (parts.empty()) throw InputError("Decomposition::sum: no parts");
  SimpleFunction total = parts.front();
  for (std::size_t j = 1; j < parts.size(); ++j) total = total + parts[j];
  return total;
}

namespace {

void check_exponents(double p, double sigma, const char* where) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError(std::string(where) + ": p must be a finite number >= 1");
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw ParameterError(std::string(where) + ": sigma must lie in [0, 1]");
}

struct PhiValue {
  double value = 0.0;
  std::vector<double> argmax;
};

// With `warm`, a single ascent from that functional (a cheap steering value).
PhiValue phi_eval(const SimpleFunction& f, double p, double sigma, const SearchConfig& config,
                  const std::vector<double>* warm = nullptr) {
  const NormedSpace& X = f.codomain();
  PhiValue out;
  if (sigma == 1.0) {
    out.value = bochner_norm(f, p);
    out.argmax.assign(X.dim(), 0.0);
    return out;
  }
  const auto norms = f.pointwise_norms();
  const auto& w = f.measure().weights();
  std::vector<double> lc(f.atoms());
  for (std::size_t i = 0; i < lc.size(); ++i) {
    lc[i] = norms[i] == 0.0 ? -kInf : std::log(w[i]) + sigma * p * std::log(norms[i]);
  }
  PairingSup sup;
  if (warm) {
    SearchConfig light = config;
    light.restarts = 1;
    sup = sup_pairing_sum(f.values(), lc, (1.0 - sigma) * p, X.dual(), light, std::span(warm, 1), false, false);
  } else {
    sup = sup_pairing_sum(f.values(), lc, (1.0 - sigma) * p, X.dual(), config);
  }
  out.value = sup.log_value == -kInf ? 0.0 : std::exp(sup.log_value / p);
  out.argmax = sup.argmax;
  return out;
}

// Gradient of Phi at f with the dual functional frozen at `at.argmax`.
std::vector<double> phi_gradient(const SimpleFunction& f, double p, double sigma, const PhiValue& at, double eps) {
  const NormedSpace& X = f.codomain();
  const std::size_t d = X.dim();
  const auto& w = f.measure().weights();
  const double theta = (1.0 - sigma) * p;
  const double a = sigma * p;
  std::vector<double> grad(f.atoms() * d, 0.0);
  if (at.value == 0.0) return grad;
  const double H = std::pow(at.value, p);
  const double outer = std::pow(H, 1.0 / p - 1.0) / p;
  for (std::size_t i = 0; i < f.atoms(); ++i) {
    const auto& g = f.value(i);
    const double n = X.norm(g);
    if (n == 0.0) continue;
    const auto xi = norming_functional(X, g).coordinates;
    const double t = theta == 0.0 ? 0.0 : dot(g, at.argmax);
    const double s = std::sqrt(t * t + eps * eps);
    const double st = theta == 0.0 ? 1.0 : std::pow(s, theta);
    const double c1 = w[i] * a * std::pow(n, a - 1.0) * st;
    const double c2 = theta == 0.0 ? 0.0 : w[i] * std::pow(n, a) * theta * std::pow(s, theta - 2.0) * t;
    for (std::size_t j = 0; j < d; ++j) grad[i * d + j] = outer * (c1 * xi[j] + c2 * at.argmax[j]);
  }
  return grad;
}

struct PartsState {
  std::vector<std::vector<double>> free;  // parts 0..m-2, flat
  std::vector<PhiValue> phi;              // m entries
  double total = kInf;
};

}  // namespace

double bochner_norm(const SimpleFunction& f, double r) {
  if (!(r >= 1.0)) throw ParameterError("bochner_norm: r must be >= 1");
  return power_norm(f.pointwise_norms(), f.measure().weights(), r);
}

double phi_seminorm(const SimpleFunction& f, double p, double sigma, const SearchConfig& config) {
  check_exponents(p, sigma, "phi_seminorm");
  config.validate();
  return phi_eval(f, p, sigma, config).value;
}

ConvexBound convex_seminorm_search(const SimpleFunction& f, double p, double sigma, std::size_t parts,
                                   const SearchConfig& config) {
  check_exponents(p, sigma, "convex_seminorm_search");
  config.validate();
  if (parts == 0) throw ParameterError("convex_seminorm_search: parts must be positive");

  ConvexBound bound;
  bound.value = phi_eval(f, p, sigma, config).value;
  bound.best.parts = {f};
  bound.evaluations = 1;
  if (parts == 1 || bound.value == 0.0) return bound;

  const SearchConfig inner = config.inner();
  const AtomicMeasure& mu = f.measure();
  const NormedSpace& X = f.codomain();
  const std::vector<double> target = f.flat();
  const std::size_t n = target.size();
  const double radius = euclidean_norm(target);

  // Evaluates the decomposition with free parts `free`; the last part closes
  // the sum.  With `warm`, each part is steered from the matching functional.
  auto evaluate = [&](const std::vector<std::vector<double>>& free, const std::vector<PhiValue>* warm = nullptr) {
    PartsState st;
    st.free = free;
    std::vector<double> last = target;
    st.total = 0.0;
    for (std::size_t j = 0; j <= free.size(); ++j) {
      const std::vector<double>* part = &last;
      if (j < free.size()) {
        part = &free[j];
        for (std::size_t i = 0; i < n; ++i) last[i] -= free[j][i];
      }
      const std::vector<double>* start = warm ? &(*warm)[j].argmax : nullptr;
      st.phi.push_back(phi_eval(SimpleFunction::from_flat(mu, X, *part), p, sigma, inner, start));
      st.total += st.phi.back().value;
    }
    bound.evaluations += static_cast<long>(st.phi.size());
    return st;
  };
  auto last_part = [&](const std::vector<std::vector<double>>& free) {
    std::vector<double> last = target;
    for (const auto& part : free)
      for (std::size_t i = 0; i < n; ++i) last[i] -= part[i];
    return last;
  };

  auto descend = [&](PartsState st) {
    const std::size_t m = st.free.size() + 1;
    double eta = config.initial_step;
    double cap = config.initial_step;
    for (int it = 0; it < config.iterations && eta > 1e-9; ++it) {
      std::vector<std::vector<double>> grads(m);
      for (std::size_t j = 0; j < m; ++j) {
        const auto flat = j + 1 < m ? st.free[j] : last_part(st.free);
        grads[j] = phi_gradient(SimpleFunction::from_flat(mu, X, flat), p, sigma, st.phi[j], config.smoothing);
      }
      std::vector<std::vector<double>> dir(m - 1, std::vector<double>(n));
      double dn = 0.0;
      for (std::size_t j = 0; j + 1 < m; ++j)
        for (std::size_t i = 0; i < n; ++i) {
          dir[j][i] = grads[j][i] - grads[m - 1][i];
          dn += dir[j][i] * dir[j][i];
        }
      dn = std::sqrt(dn);
      if (dn == 0.0 || !std::isfinite(dn)) break;
      auto trial = st.free;
      for (std::size_t j = 0; j + 1 < m; ++j)
        for (std::size_t i = 0; i < n; ++i) trial[j][i] -= eta * radius * dir[j][i] / dn;
      PartsState next = evaluate(trial, &st.phi);
      if (next.total < st.total * (1.0 - 1e-12)) {
        st = std::move(next);
        eta = std::min(eta * 1.5, cap);
      } else {
        eta *= 0.5;
      }
      cap *= config.step_decay;
    }
    return st;
  };

  std::vector<std::vector<double>> best_free;  // free parts of the incumbent
  for (std::size_t m = 2; m <= parts; ++m) {
    SearchConfig sized = config;
    sized.seed = derive_seed(config.seed, m);
    std::vector<PartsState> starts;
    auto padded = best_free;
    padded.push_back(std::vector<double>(n, 0.0));
    starts.push_back(evaluate(padded));
    for (int r = 0; r < sized.restarts; ++r) {
      SplitMix rng(derive_seed(sized.seed, static_cast<std::uint64_t>(r)));
      std::vector<std::vector<double>> free;
      for (std::size_t j = 0; j + 1 < m; ++j) {
        auto noise = gaussian_vector(rng, n);
        const double share = 1.0 / static_cast<double>(m);
        const double scale = radius / std::sqrt(static_cast<double>(n * m));
        std::vector<double> part(n);
        for (std::size_t i = 0; i < n; ++i) part[i] = share * target[i] + scale * noise[i];
        free.push_back(std::move(part));
      }
      starts.push_back(evaluate(free));
    }
    for (auto& s : starts) {
      PartsState done = evaluate(descend(std::move(s)).free);
      if (done.total < bound.value) {
        bound.value = done.total;
        best_free = done.free;
        bound.best.parts.clear();
        for (const auto& part : done.free) bound.best.parts.push_back(SimpleFunction::from_flat(mu, X, part));
        bound.best.parts.push_back(SimpleFunction::from_flat(mu, X, last_part(done.free)));
      }
    }
    if (best_free.size() + 1 < m) best_free = padded;
  }
  return bound;
}

double convex_seminorm_ub(const SimpleFunction& f, double p, double sigma, std::size_t parts,
                          const SearchConfig& config) {
  return convex_seminorm_search(f, p, sigma, parts, config).value;
}

EstimateReport composition_norm_lb(const Operator& u, double sigma, const AtomicMeasure& measure, std::size_t parts,
                                   const SearchConfig& config) {
  config.validate();
  if (!(sigma >= 0.0 && sigma <= kMaxSigma)) throw ParameterError("composition_norm_lb: sigma must lie in [0, 0.95]");
  if (parts == 0) throw ParameterError("composition_norm_lb: parts must be positive");
  const NormedSpace& X = u.domain();
  const std::size_t d = X.dim();
  const std::size_t k = measure.size();
  const double s = 1.0 / (1.0 - sigma);
  const auto& w = measure.weights();

  // With x_i = w_i^(1/s) f(i), bochner_norm(u o f, s) / Phi_{s,sigma}(f) is
  // the (1,1,sigma) family ratio of (x_i); it steers the search.
  FamilyRatio fr = detail::sigma_family_ratio(u, SummingParams{1.0, 1.0, sigma}, config, k);
  if (!fr.surrogate) fr.surrogate = fr.evaluate;

  SearchConfig light = config;
  light.restarts = std::max(1, config.restarts / 16);
  auto to_function = [&measure, &X, &w, d, s](std::span<const double> flat) {
    std::vector<double> values(flat.begin(), flat.end());
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) values[i * d + j] *= std::pow(w[i], -1.0 / s);
    return SimpleFunction::from_flat(measure, X, values);
  };
  fr.evaluate = [&u, &to_function, sigma, s, parts, light](std::span<const double> flat) {
    const SimpleFunction f = to_function(flat);
    RatioValue r;
    r.lhs = bochner_norm(f.composed(u), s);
    r.rhs = convex_seminorm_ub(f, s, sigma, parts, light);
    return r;
  };

  fr.starts.clear();
  for (const auto& c : detail::start_candidates(u)) {
    std::vector<double> start(k * d);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) start[i * d + j] = std::pow(w[i], 1.0 / s) * c[j];
    fr.starts.push_back(std::move(start));
  }

  EstimateReport report = maximize_family_ratio(fr, X, k, config);
  report.witness = to_function(report.witness).flat();
  report.oracle = rank_one_oracle(u);
  return report;
}

}  // namespace summing
