#include "summing/rs_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "summing/errors.hpp"
#include "summing/numerics.hpp"

namespace summing {

namespace {

void check_instance(const RsSystem& system, const SimpleFunction& f, const ScalarWeighting& g) {
  if (f.atoms() != system.measure.size() || g.values.size() != system.measure.size())
    throw InputError("RS instance: function and weighting must have one entry per atom (" +
                     std::to_string(system.measure.size()) + ")");
  if (f.codomain().dim() != system.domain.dim()) throw InputError("RS instance: function values have wrong dimension");
}

std::vector<SimpleFunction> atomwise_scaled(const SimpleFunction& f, const ScalarWeighting& g) {
  std::vector<SimpleFunction> out;
  out.reserve(g.values.size());
  for (double gi : g.values) out.push_back(f.scaled(gi));
  return out;
}

double integrate_r(const RsSystem& system, const std::vector<SimpleFunction>& gf, std::span<const double> k,
                   double p) {
  std::vector<double> vals(gf.size());
  for (std::size_t i = 0; i < gf.size(); ++i) vals[i] = system.R(gf[i], k, i);
  return power_norm(vals, system.measure.weights(), p);
}

}  // namespace

double rs_lhs(const RsSystem& system, const Operator& u, const SimpleFunction& f, const ScalarWeighting& g,
              double q) {
  check_instance(system, f, g);
  if (!(q >= 1.0)) throw ParameterError("rs_lhs: exponent must be >= 1");
  std::vector<double> vals(f.atoms());
  for (std::size_t i = 0; i < f.atoms(); ++i) vals[i] = system.S(u, f.scaled(g.values[i]), i);
  return power_norm(vals, system.measure.weights(), q);
}

double rs_rhs(const RsSystem& system, const SimpleFunction& f, const ScalarWeighting& g, double p,
              const SearchConfig& config) {
  check_instance(system, f, g);
  if (!(p >= 1.0)) throw ParameterError("rs_rhs: exponent must be >= 1");
  const auto gf = atomwise_scaled(f, g);
  if (const auto* finite = std::get_if<FiniteParameterSet>(&system.K)) {
    double best = 0.0;
    for (const auto& k : finite->points) best = std::max(best, integrate_r(system, gf, k, p));
    return best;
  }
  const auto& ball = std::get<DualBallParameters>(system.K);
  if (f.is_zero() || std::all_of(g.values.begin(), g.values.end(), [](double v) { return v == 0.0; })) return 0.0;
  BallObjective obj;
  obj.convex = p >= ball.convex_from;
  obj.value = [&](std::span<const double> k) { return integrate_r(system, gf, k, p); };
  if (ball.ball.dim() == system.domain.dim()) {
    const NormedSpace host = ball.ball.dual();
    for (std::size_t i = 0; i < f.atoms(); ++i) {
      if (host.norm(gf[i].value(i)) > 0.0) obj.starts.push_back(norming_functional(host, gf[i].value(i)).coordinates);
    }
  }
  return maximize_over_ball(obj, ball.ball, config).value;
}

double rs_ratio(const RsSystem& system, const Operator& u, const SimpleFunction& f, const ScalarWeighting& g,
                double q, double p, const SearchConfig& config) {
  const double rhs = rs_rhs(system, f, g, p, config);
  if (!(rhs > 0.0)) throw DegenerateFamilyError("rs_ratio: right-hand side vanishes");
  return rs_lhs(system, u, f, g, q) / rhs;
}

RsEstimate rs_constant_lb(const RsSystem& system, const Operator& u, double q, double p, std::size_t k_max,
                          const SearchConfig& config) {
  config.validate();
  if (!(q >= 1.0) || !(p >= 1.0)) throw ParameterError("rs_constant_lb: exponents must be >= 1");
  const std::size_t atoms = system.measure.size();
  if (k_max == 0 || k_max > atoms)
    throw ParameterError("rs_constant_lb: support size must lie in 1.." + std::to_string(atoms));
  const std::size_t d = system.domain.dim();
  const SearchConfig certify = config.certify();
  SearchConfig light = config.inner();
  light.restarts = 1;

  auto unpack = [&](std::span<const double> params, std::size_t k) {
    std::vector<std::vector<double>> values(atoms, std::vector<double>(d, 0.0));
    ScalarWeighting g{std::vector<double>(atoms, 0.0)};
    for (std::size_t i = 0; i < k; ++i) {
      values[i].assign(params.begin() + i * (d + 1), params.begin() + i * (d + 1) + d);
      g.values[i] = params[i * (d + 1) + d];
    }
    return std::pair{SimpleFunction(system.measure, system.domain, std::move(values)), std::move(g)};
  };

  RsEstimate best;
  bool found = false;
  long evaluations = 0;
  int degenerate = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    FamilyRatio fr;
    fr.evaluate = [&, k](std::span<const double> params) {
      auto [f, g] = unpack(params, k);
      return RatioValue{rs_lhs(system, u, f, g, q), rs_rhs(system, f, g, p, certify), {}};
    };
    if (std::holds_alternative<DualBallParameters>(system.K)) {
      fr.surrogate = [&, k](std::span<const double> params) {
        auto [f, g] = unpack(params, k);
        return RatioValue{rs_lhs(system, u, f, g, q), rs_rhs(system, f, g, p, light), {}};
      };
    }
    fr.normalize = [d, k](std::span<double> params, const RatioValue& at) {
      for (std::size_t i = 0; i < k; ++i) params[i * (d + 1) + d] /= at.rhs;
    };
    SearchConfig c = config;
    c.seed = derive_seed(config.seed, 1000 + k);
    EstimateReport r;
    try {
      r = maximize_family_ratio(fr, NormedSpace::lp(d + 1, 2.0), k, c);
    } catch (const EstimationError&) {
      degenerate += c.restarts;
      continue;
    }
    evaluations += r.evaluations;
    degenerate += r.degenerate_restarts;
    if (!found || r.value > best.report.value) {
      found = true;
      auto [f, g] = unpack(r.witness, k);
      best.witness = RsWitness{std::move(f), std::move(g), r.value};
      best.report = std::move(r);
    }
  }
  if (!found) throw EstimationError("rs_constant_lb: every restart was degenerate");
  best.report.evaluations = evaluations;
  best.report.degenerate_restarts = degenerate;
  best.report.seed = config.seed;
  return best;
}

bool inclusion_condition(double p1, double p2, double q1, double q2) {
  return p1 <= p2 && q1 <= q2 && (1.0 / p1 - 1.0 / p2) <= (1.0 / q1 - 1.0 / q2);
}

RsWitness amplify_witness(const RsSystem& system, const Operator& u, const RsWitness& witness, double q1, double q2,
                          double p1, double p2, const SearchConfig& config) {
  if (q1 == q2) throw ParameterError("amplify_witness: q1 = q2 leaves the reweighting exponent undefined");
  if (!inclusion_condition(p1, p2, q1, q2))
    throw ParameterError("amplify_witness: exponents fail the inclusion condition");
  check_instance(system, witness.f, witness.g);
  if (!(rs_rhs(system, witness.f, witness.g, p2, config.inner()) > 0.0))
    throw ParameterError("amplify_witness: witness has a vanishing right-hand side");
  // q2 / q with 1/q = 1/q1 - 1/q2.
  const double power = q2 / q1 - 1.0;
  ScalarWeighting g = witness.g;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double s = std::abs(system.S(u, witness.f.scaled(witness.g.values[i]), i));
    const double lambda = s == 0.0 ? 0.0 : std::pow(s, power);
    g.values[i] *= lambda;
  }
  RsWitness out{witness.f, std::move(g), 0.0};
  const double rhs = rs_rhs(system, out.f, out.g, p1, config.inner());
  out.ratio = rhs > 0.0 ? rs_lhs(system, u, out.f, out.g, q1) / rhs : 0.0;
  return out;
}

double inclusion_constant_bound(const AtomicMeasure& measure, double constant, double p1, double p2, double q1,
                                double q2) {
  if (!inclusion_condition(p1, p2, q1, q2))
    throw ParameterError("inclusion_constant_bound: exponents fail the inclusion condition");
  const double inv_p = 1.0 / p1 - 1.0 / p2;
  const double inv_q = 1.0 / q1 - 1.0 / q2;
  double embed = 1.0;
  if (inv_p < inv_q) {
    // p > q; p may be infinite.
    embed = inv_p == 0.0 ? std::pow(measure.min_weight(), -inv_q) : embedding_constant(measure, 1.0 / inv_p, 1.0 / inv_q);
  }
  return constant * embed;
}

RsSystem finite_parameter_system(const NormedSpace& domain, std::vector<std::vector<double>> points,
                                 const AtomicMeasure& measure) {
  for (const auto& k : points) {
    if (k.size() != domain.dim()) throw InputError("finite_parameter_system: point dimension mismatch");
  }
  RsSystem s{
      [](const Operator& u, const SimpleFunction& f, std::size_t i) { return u.codomain().norm(u.apply(f.value(i))); },
      [](const SimpleFunction& f, std::span<const double> k, std::size_t i) { return std::abs(dot(f.value(i), k)); },
      FiniteParameterSet{std::move(points)}, measure, domain};
  return s;
}

}  // namespace summing
