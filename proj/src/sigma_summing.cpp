#include "summing/sigma_summing.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "summing/errors.hpp"
#include "summing/numerics.hpp"

namespace summing {

void SummingParams::validate() const {
  if (!(p >= 1.0) || !(q >= p) || std::isinf(q))
    throw ParameterError("SummingParams: requires 1 <= p <= q < inf (got q=" + std::to_string(q) +
                         ", p=" + std::to_string(p) + ")");
  if (!(sigma >= 0.0) || !(sigma < 1.0)) throw ParameterError("SummingParams: sigma must lie in [0, 1)");
  if (sigma > kMaxSigma)
    throw ParameterError("SummingParams: sigma above " + std::to_string(kMaxSigma) + " is not supported");
}

Family unflatten(std::span<const double> flat, std::size_t dim) {
  if (dim == 0 || flat.size() % dim != 0) throw InputError("unflatten: size is not a multiple of the dimension");
  Family out(flat.size() / dim);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].assign(flat.begin() + i * dim, flat.begin() + (i + 1) * dim);
  return out;
}

std::vector<double> flatten(std::span<const std::vector<double>> family) {
  std::vector<double> out;
  for (const auto& v : family) out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

void check_family(const NormedSpace& domain, std::span<const std::vector<double>> family) {
  if (family.empty()) throw InputError("family must be nonempty");
  for (const auto& x : family) {
    if (x.size() != domain.dim())
      throw InputError("family vector of length " + std::to_string(x.size()) + " in a domain of dimension " +
                       std::to_string(domain.dim()));
  }
}

double log_lhs(const Operator& u, std::span<const std::vector<double>> family, const SummingParams& params) {
  std::vector<double> a(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) a[i] = u.codomain().norm(u.apply(family[i]));
  return log_power_mean(a, {}, params.lhs_exponent());
}

PairingSup rhs_sup(const NormedSpace& domain, std::span<const std::vector<double>> family,
                   const SummingParams& params, const SearchConfig& config, bool light,
                   std::span<const double> warm) {
  // (|t|^(1-s) ||x||^s)^(p/(1-s)) = |t|^p ||x||^(s p/(1-s)).
  const double gamma = params.sigma * params.rhs_exponent();
  std::vector<double> lc(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double nx = domain.norm(family[i]);
    lc[i] = nx == 0.0 ? -kInf : gamma * std::log(nx);
  }
  if (light) {
    SearchConfig c = config;
    c.restarts = 1;
    if (!warm.empty()) {
      const std::vector<std::vector<double>> w{std::vector<double>(warm.begin(), warm.end())};
      return sup_pairing_sum(family, lc, params.p, domain.dual(), c, w, false, false);
    }
    return sup_pairing_sum(family, lc, params.p, domain.dual(), c, {}, false);
  }
  return sup_pairing_sum(family, lc, params.p, domain.dual(), config);
}

}  // namespace

namespace detail {

SigmaFamilyTerms sigma_terms(const Operator& u, std::span<const std::vector<double>> family,
                             const SummingParams& params, const SearchConfig& config, bool light,
                             std::span<const double> warm) {
  check_family(u.domain(), family);
  const PairingSup sup = rhs_sup(u.domain(), family, params, config, light, warm);
  return SigmaFamilyTerms{log_lhs(u, family, params), sup.log_value / params.rhs_exponent(), sup.argmax};
}

void sigma_log_ratio_gradient(const Operator& u, std::span<const double> flat, const SummingParams& params,
                              std::span<const double> dual_argmax, double eps, std::span<double> grad) {
  const NormedSpace& X = u.domain();
  const NormedSpace& Y = u.codomain();
  const std::size_t d = X.dim();
  const std::size_t k = flat.size() / d;
  std::fill(grad.begin(), grad.end(), 0.0);

  const double Q = params.lhs_exponent();
  const double P = params.rhs_exponent();
  const double p = params.p;
  const double gamma = params.sigma * P;

  std::vector<std::vector<double>> images(k);
  std::vector<double> log_a(k), log_x(k), t(k), log_s(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::span<const double> x = flat.subspan(i * d, d);
    images[i] = u.apply(x);
    log_a[i] = safe_log(Y.norm(images[i]));
    log_x[i] = safe_log(X.norm(x));
    t[i] = dot(x, dual_argmax);
    log_s[i] = 0.5 * std::log(t[i] * t[i] + eps * eps);
  }

  // d log lhs / d x_i = ||u x_i||^(Q-1) / sum ||u x||^Q * u^T eta_i
  std::vector<double> terms(k);
  for (std::size_t i = 0; i < k; ++i) terms[i] = Q * log_a[i];
  const double lq = log_sum_exp(terms);
  if (lq != -kInf) {
    for (std::size_t i = 0; i < k; ++i) {
      if (log_a[i] == -kInf) continue;
      const double c = std::exp((Q - 1.0) * log_a[i] - lq);
      const auto eta = norming_functional(Y, images[i]).coordinates;
      const auto back = u.apply_transpose(eta);
      for (std::size_t j = 0; j < d; ++j) grad[i * d + j] += c * back[j];
    }
  }

  // log rhs = (1/P) log sum_i ||x_i||^gamma |t_i|^p at the fixed maximizer.
  for (std::size_t i = 0; i < k; ++i) terms[i] = log_x[i] == -kInf ? -kInf : gamma * log_x[i] + p * log_s[i];
  const double lh = log_sum_exp(terms);
  if (lh == -kInf) return;
  for (std::size_t i = 0; i < k; ++i) {
    if (log_x[i] == -kInf) continue;
    std::span<const double> x = flat.subspan(i * d, d);
    if (gamma > 0.0) {
      const double c = gamma / P * std::exp((gamma - 1.0) * log_x[i] + p * log_s[i] - lh);
      const auto xi = norming_functional(X, x).coordinates;
      for (std::size_t j = 0; j < d; ++j) grad[i * d + j] -= c * xi[j];
    }
    const double c2 = p / P * std::exp(gamma * log_x[i] + (p - 1.0) * log_s[i] - lh) * (t[i] / std::exp(log_s[i]));
    for (std::size_t j = 0; j < d; ++j) grad[i * d + j] -= c2 * dual_argmax[j];
  }
}

}  // namespace detail

double sigma_lhs(const Operator& u, std::span<const std::vector<double>> family, const SummingParams& params) {
  check_family(u.domain(), family);
  const double l = log_lhs(u, family, params);
  return l == -kInf ? 0.0 : std::exp(l);
}

double sigma_rhs(const NormedSpace& domain, std::span<const std::vector<double>> family, const SummingParams& params,
                 const SearchConfig& config) {
  check_family(domain, family);
  const double l = rhs_sup(domain, family, params, config, false, {}).log_value;
  return l == -kInf ? 0.0 : std::exp(l / params.rhs_exponent());
}

double sigma_ratio(const Operator& u, std::span<const std::vector<double>> family, const SummingParams& params,
                   const SearchConfig& config) {
  const auto terms = detail::sigma_terms(u, family, params, config, false);
  if (terms.log_rhs == -kInf) throw DegenerateFamilyError("sigma_ratio: family has a vanishing right-hand side");
  return terms.log_lhs == -kInf ? 0.0 : std::exp(terms.log_lhs - terms.log_rhs);
}

std::size_t default_k_max(const Operator& u) { return 2 * std::max(u.rows(), u.cols()); }

namespace detail {

Family start_candidates(const Operator& u) {
  const NormedSpace& X = u.domain();
  const std::size_t d = X.dim();
  const NormedSpace Xdual = X.dual();
  Family candidates;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    std::vector<double> row(u.matrix().begin() + i * d, u.matrix().begin() + (i + 1) * d);
    if (Xdual.norm(row) > 0.0) candidates.push_back(norming_functional(Xdual, row).coordinates);
  }
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> e(d, 0.0);
    e[j] = 1.0;
    candidates.push_back(std::move(e));
  }
  return candidates;
}

FamilyRatio sigma_family_ratio(const Operator& u, const SummingParams& params, const SearchConfig& config,
                               std::size_t k) {
  const NormedSpace& X = u.domain();
  const std::size_t d = X.dim();
  const SearchConfig inner = config.inner();
  const SearchConfig certify = config.certify();
  // Dual balls of l_1 / l_inf domains are polytopes: the rhs sup is exact.
  const bool exact_rhs = X.exponent() == 1.0 || (X.is_inf() && d <= 16);
  auto to_value = [](const SigmaFamilyTerms& t) {
    const double lhs = t.log_lhs == -kInf ? 0.0 : std::exp(t.log_lhs);
    const double rhs = t.log_rhs == -kInf ? 0.0 : std::exp(t.log_rhs);
    return RatioValue{lhs, rhs, t.dual_argmax};
  };

  FamilyRatio fr;
  fr.evaluate = [u, params, certify, d, to_value](std::span<const double> flat) {
    return to_value(sigma_terms(u, unflatten(flat, d), params, certify, false));
  };
  if (!exact_rhs) {
    // Steering evaluations warm-start their dual ascent from the previous
    // maximizer; only `evaluate` defines reported values.
    auto warm = std::make_shared<std::vector<double>>();
    fr.surrogate = [u, params, inner, d, to_value, warm](std::span<const double> flat) {
      auto t = sigma_terms(u, unflatten(flat, d), params, inner, true, *warm);
      *warm = t.dual_argmax;
      return to_value(t);
    };
  }
  const double eps = config.smoothing;
  fr.gradient = [u, params, eps](std::span<const double> flat, const RatioValue& at, std::span<double> grad) {
    sigma_log_ratio_gradient(u, flat, params, at.aux, eps, grad);
  };

  // Deterministic starts from the vectors norming each row of u and the
  // coordinate vectors: singletons when k = 1, cyclic families otherwise.
  const Family candidates = start_candidates(u);
  const std::size_t row_candidates = candidates.size() - d;
  if (k == 1) {
    for (const auto& c : candidates) fr.starts.push_back(c);
  } else {
    for (std::size_t offset : {std::size_t{0}, row_candidates}) {
      if (offset >= candidates.size()) continue;
      std::vector<double> start;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& c = candidates[offset + i % (candidates.size() - offset)];
        start.insert(start.end(), c.begin(), c.end());
      }
      fr.starts.push_back(std::move(start));
    }
  }
  return fr;
}

}  // namespace detail

EstimateReport pi_norm_lb(const Operator& u, const SummingParams& params, std::size_t k_max,
                          const SearchConfig& config) {
  params.validate();
  config.validate();
  if (k_max == 0) k_max = default_k_max(u);

  EstimateReport best;
  bool found = false;
  long evaluations = 0;
  int degenerate = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const FamilyRatio fr = detail::sigma_family_ratio(u, params, config, k);
    SearchConfig c = config;
    c.seed = derive_seed(config.seed, 1000 + k);
    EstimateReport r = maximize_family_ratio(fr, u.domain(), k, c);
    evaluations += r.evaluations;
    degenerate += r.degenerate_restarts;
    if (!found || r.value > best.value) {
      found = true;
      best = std::move(r);
    }
  }
  best.evaluations = evaluations;
  best.degenerate_restarts = degenerate;
  best.seed = config.seed;
  best.oracle = rank_one_oracle(u);
  return best;
}

std::optional<OracleValue> rank_one_oracle(const Operator& u) {
  const auto f = rank_one_factors(u);
  if (!f) return std::nullopt;
  return OracleValue{u.domain().dual().norm(f->a) * u.codomain().norm(f->y), "rank-one: ||a||_{X*} ||y||_Y"};
}

double pi1_upper_oracle(const Operator& u) {
  if (!u.domain().is_inf() || !u.domain().unit_weights())
    throw ParameterError("pi1_upper_oracle: domain must be l_inf^n with unit weights");
  double s = 0.0;
  for (std::size_t j = 0; j < u.cols(); ++j) s += u.codomain().norm(u.column(j));
  return s;
}

std::optional<OracleValue> summing_oracle(const Operator& u, const SummingParams& params) {
  if (auto r = rank_one_oracle(u)) return r;
  if (params.q == 1.0 && params.p == 1.0 && params.sigma == 0.0 && u.domain().is_inf() && u.domain().unit_weights())
    return OracleValue{pi1_upper_oracle(u), "l_inf-domain column-norm sum (upper bound on pi_1)"};
  return std::nullopt;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Consistent:
      return "CONSISTENT";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
    case Verdict::Violation:
      return "VIOLATION";
    case Verdict::NotApplicable:
      return "NOT-APPLICABLE";
  }
  return "UNKNOWN";
}

InclusionReport corollary_inclusion_check(const Operator& u, const SummingParams& params1,
                                          const SummingParams& params2, std::size_t k_max, const SearchConfig& config,
                                          double tolerance) {
  if (params1.sigma != params2.sigma)
    throw ParameterError("corollary_inclusion_check: both parameter sets must share sigma");
  InclusionReport rep;
  rep.params1 = params1;
  rep.params2 = params2;
  rep.tolerance = tolerance;
  rep.gate = inclusion_condition(params1.p, params2.p, params1.q, params2.q);
  rep.lower1 = pi_norm_lb(u, params1, k_max, config);
  rep.lower2 = pi_norm_lb(u, params2, k_max, config);
  rep.oracle1 = summing_oracle(u, params1);
  rep.oracle2 = summing_oracle(u, params2);
  if (!rep.gate) {
    rep.verdict = Verdict::NotApplicable;
  } else if (rep.oracle1) {
    rep.verdict = rep.lower2.value <= rep.oracle1->value * (1.0 + tolerance) ? Verdict::Consistent : Verdict::Violation;
  } else {
    rep.verdict =
        rep.lower2.value <= rep.lower1.value * (1.0 + tolerance) ? Verdict::Consistent : Verdict::Inconclusive;
  }
  return rep;
}

RsSystem sigma_rs_system(const NormedSpace& domain, double sigma, const AtomicMeasure& measure) {
  if (!(sigma >= 0.0) || !(sigma < 1.0)) throw ParameterError("sigma_rs_system: sigma must lie in [0, 1)");
  RsSystem s{
      [](const Operator& u, const SimpleFunction& f, std::size_t i) { return u.codomain().norm(u.apply(f.value(i))); },
      [sigma](const SimpleFunction& f, std::span<const double> k, std::size_t i) {
        const double t = std::abs(dot(f.value(i), k));
        if (sigma == 0.0) return t;
        return std::pow(t, 1.0 - sigma) * std::pow(f.codomain().norm(f.value(i)), sigma);
      },
      DualBallParameters{domain.dual(), 1.0 / (1.0 - sigma)}, measure, domain};
  return s;
}

}  // namespace summing
