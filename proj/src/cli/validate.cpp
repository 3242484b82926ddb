#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "summing/cli.hpp"
#include "summing/measures.hpp"
#include "summing/operator.hpp"
#include "summing/rng.hpp"
#include "summing/sigma_summing.hpp"

namespace summing::cli {

namespace {

constexpr int kAngles = 2000;  // divisible by 8: grid hits the l_1 / l_inf vertices

// Unit sphere of a 2-dimensional space sampled by angle over [0, pi).
std::vector<std::array<double, 2>> sphere_grid(const NormedSpace& space) {
  std::vector<std::array<double, 2>> out;
  out.reserve(kAngles);
  for (int k = 0; k < kAngles; ++k) {
    const double t = std::numbers::pi * k / kAngles;
    std::array<double, 2> x{std::cos(t), std::sin(t)};
    const double n = space.norm(x);
    out.push_back({x[0] / n, x[1] / n});
  }
  return out;
}

OracleCheck make_check(std::string name, double brute, double oracle, double tolerance) {
  OracleCheck c{std::move(name), brute, oracle, std::abs(brute - oracle) / oracle, false};
  c.pass = c.relative_error <= tolerance;
  return c;
}

// Single-vector ratio ||u x|| / sup_{x'} |<x,x'>|^(1-s) ||x||^s over grids of
// both spheres.
double rank_one_grid(const Operator& u, double sigma) {
  const auto xs = sphere_grid(u.domain());
  const auto duals = sphere_grid(u.domain().dual());
  double best = 0.0;
  for (const auto& x : xs) {
    const double nx = u.domain().norm(x);
    double rhs = 0.0;
    for (const auto& d : duals) {
      const double t = std::abs(x[0] * d[0] + x[1] * d[1]);
      rhs = std::max(rhs, std::pow(t, 1.0 - sigma) * std::pow(nx, sigma));
    }
    best = std::max(best, u.codomain().norm(u.apply(x)) / rhs);
  }
  return best;
}

// sup over two-member families of l_2^2 of the (2,2,0) ratio, with the
// families swept by eigenvalue ratio and rotation of their Gram matrix.
double hilbert_grid() {
  const NormedSpace l2(2, 2.0);
  const auto duals = sphere_grid(l2);
  double best = 0.0;
  for (int a = 0; a <= 50; ++a) {
    const double l2nd = a / 50.0;
    for (int b = 0; b < 36; ++b) {
      const double phi = std::numbers::pi * b / 36.0;
      const std::array<double, 2> x1{std::cos(phi), std::sin(phi)};
      const std::array<double, 2> x2{-std::sqrt(l2nd) * std::sin(phi), std::sqrt(l2nd) * std::cos(phi)};
      const double lhs = std::sqrt(1.0 + l2nd);
      double rhs = 0.0;
      for (const auto& d : duals) {
        const double t1 = x1[0] * d[0] + x1[1] * d[1];
        const double t2 = x2[0] * d[0] + x2[1] * d[1];
        rhs = std::max(rhs, std::sqrt(t1 * t1 + t2 * t2));
      }
      best = std::max(best, lhs / rhs);
    }
  }
  return best;
}

// sup of the (1,1,0) ratio of u on l_inf^2 over all families of at most four
// vectors drawn (with repetition) from a grid of the square.  The dual ball
// is the l_1 ball, so its sup sits at a vertex +-e_j.
double pi1_grid(const Operator& u) {
  std::vector<std::array<double, 2>> pts;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      if (i != 0 || j != 0) pts.push_back({i / 2.0, j / 2.0});
  const std::size_t n = pts.size();
  std::vector<double> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = u.codomain().norm(u.apply(pts[i]));
  double best = 0.0;
  auto consider = [&](std::initializer_list<std::size_t> idx) {
    double lhs = 0.0, c0 = 0.0, c1 = 0.0;
    for (std::size_t i : idx) {
      lhs += image[i];
      c0 += std::abs(pts[i][0]);
      c1 += std::abs(pts[i][1]);
    }
    best = std::max(best, lhs / std::max(c0, c1));
  };
  for (std::size_t a = 0; a < n; ++a) {
    consider({a});
    for (std::size_t b = a; b < n; ++b) {
      consider({a, b});
      for (std::size_t c = b; c < n; ++c) {
        consider({a, b, c});
        for (std::size_t d = c; d < n; ++d) consider({a, b, c, d});
      }
    }
  }
  return best;
}

// Sampled sup of ||g||_s / ||g||_r over sparse, heavy-tailed g.
double embedding_sample(const AtomicMeasure& mu, double s, double r, SplitMix& rng, int samples) {
  std::uniform_int_distribution<std::size_t> atom(0, mu.size() - 1);
  std::cauchy_distribution<double> heavy(0.0, 1.0);
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    std::vector<double> g(mu.size(), 0.0);
    const std::size_t support = 1 + atom(rng);
    for (std::size_t j = 0; j < support; ++j) g[atom(rng)] = heavy(rng);
    if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; })) continue;
    best = std::max(best, lp_norm(mu, g, s) / lp_norm(mu, g, r));
  }
  return best;
}

}  // namespace

std::vector<OracleCheck> validate_oracles(std::uint64_t seed, double tolerance) {
  std::vector<OracleCheck> checks;
  SplitMix rng(seed);

  const double exps[] = {1.0, 2.0, kInf};
  for (double r : exps) {
    for (double sigma : {0.0, 0.5}) {
      const NormedSpace X(2, r), Y(2, 2.0);
      const auto a = gaussian_vector(rng, 2), y = gaussian_vector(rng, 2);
      const Operator u = Operator::rank_one(a, y, X, Y);
      checks.push_back(make_check("rank_one_k1 r=" + std::string(std::isinf(r) ? "inf" : std::to_string(int(r))) +
                                      " sigma=" + (sigma == 0.0 ? "0" : "0.5"),
                                  rank_one_grid(u, sigma), rank_one_oracle(u)->value, tolerance));
    }
  }

  checks.push_back(make_check("hilbert_n2", hilbert_grid(), std::sqrt(2.0), tolerance));

  const NormedSpace linf(2, kInf), l1(2, 1.0);
  for (int k = 0; k < 3; ++k) {
    const Operator u(gaussian_vector(rng, 4), linf, k == 2 ? NormedSpace(2, 2.0) : l1);
    // The column-norm sum bounds the ratio from above; only excess counts.
    const double brute = pi1_grid(u);
    const double oracle = pi1_upper_oracle(u);
    OracleCheck c{"pi1_linf_bound#" + std::to_string(k), brute, oracle, std::max(0.0, brute / oracle - 1.0), false};
    c.pass = c.relative_error <= tolerance;
    checks.push_back(c);
  }
  {
    const auto d = gaussian_vector(rng, 2);
    const Operator u({d[0], 0.0, 0.0, d[1]}, linf, l1);
    checks.push_back(make_check("pi1_linf_attained", pi1_grid(u), pi1_upper_oracle(u), tolerance));
  }

  const std::pair<double, double> pairs[] = {{2.0, 1.0}, {3.0, 2.0}, {4.0, 1.5}};
  for (int k = 0; k < 4; ++k) {
    std::uniform_int_distribution<std::size_t> atoms(2, 6);
    std::uniform_real_distribution<double> weight(0.05, 2.0);
    std::vector<double> w(atoms(rng));
    for (double& v : w) v = weight(rng);
    const AtomicMeasure mu(w);
    const auto [s, r] = pairs[k % 3];
    checks.push_back(make_check("embedding#" + std::to_string(k), embedding_sample(mu, s, r, rng, 20000),
                                embedding_constant(mu, s, r), tolerance));
  }
  return checks;
}

}  // namespace summing::cli
