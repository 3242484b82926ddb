#include <doctest.h>

#include "summing/errors.hpp"
#include "summing/spaces.hpp"
#include "support.hpp"

using namespace summing;
using testing::rel_close;

namespace {

NormedSpace random_space(SplitMix& rng, std::size_t dim) {
  const double r = testing::random_exponent(rng);
  if (rng() % 2 == 0) return NormedSpace(dim, r);
  return NormedSpace(dim, r, testing::positive_weights(rng, dim));
}

}  // namespace

TEST_SUITE("spaces") {
  TEST_CASE("norm examples") {
    CHECK(NormedSpace(2, 2.0).norm(std::vector<double>{3, 4}) == doctest::Approx(5.0));
    CHECK(NormedSpace(3, 1.5).norm(std::vector<double>{0, 0, 0}) == 0.0);
    CHECK(NormedSpace(3, 1.0).norm(std::vector<double>{1, -1, 1}) == doctest::Approx(3.0));
    CHECK(NormedSpace(2, kInf, {2.0, 1.0}).norm(std::vector<double>{1, -3}) == doctest::Approx(3.0));
    CHECK(NormedSpace(2, 2.0, {4.0, 1.0}).norm(std::vector<double>{1, 0}) == doctest::Approx(2.0));
  }

  TEST_CASE("invalid spaces and inputs") {
    CHECK_THROWS_AS(NormedSpace(0, 2.0), InputError);
    CHECK_THROWS_AS(NormedSpace(2, 0.5), ParameterError);
    CHECK_THROWS_AS(NormedSpace(2, 2.0, {1.0, 0.0}), ParameterError);
    CHECK_THROWS_AS(NormedSpace(2, 2.0, {1.0}), InputError);
    CHECK_THROWS_AS(NormedSpace(2, 2.0).norm(std::vector<double>{1, 2, 3}), InputError);
  }

  TEST_CASE("dual examples") {
    CHECK(NormedSpace(3, 2.0).dual() == NormedSpace(3, 2.0));
    CHECK(NormedSpace(3, 1.0).dual() == NormedSpace(3, kInf));
    CHECK(NormedSpace(3, kInf).dual() == NormedSpace(3, 1.0));
    CHECK(NormedSpace(3, 4.0).dual().exponent() == doctest::Approx(4.0 / 3.0));
    CHECK(conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0));
  }

  TEST_CASE("double dual is the original space") {
    SplitMix rng(1);
    for (int t = 0; t < 50; ++t) {
      const NormedSpace X = random_space(rng, 3);
      const NormedSpace dd = X.dual().dual();
      CHECK(rel_close(dd.exponent(), X.exponent(), 1e-12));
      for (std::size_t i = 0; i < 3; ++i) CHECK(rel_close(dd.weights()[i], X.weights()[i], 1e-12));
    }
  }

  TEST_CASE("norming functional examples") {
    const auto a = norming_functional(NormedSpace(2, 2.0), std::vector<double>{3, 4});
    CHECK(a.coordinates[0] == doctest::Approx(0.6));
    CHECK(a.coordinates[1] == doctest::Approx(0.8));
    const auto b = norming_functional(NormedSpace(2, 1.0), std::vector<double>{2, -5});
    CHECK(b.coordinates == std::vector<double>{1, -1});
    CHECK(b.host == NormedSpace(2, kInf));
    const auto c = norming_functional(NormedSpace(2, kInf), std::vector<double>{2, 2});
    CHECK(c.coordinates == std::vector<double>{1, 0});
    CHECK_THROWS_AS(norming_functional(NormedSpace(2, 2.0), std::vector<double>{0, 0}), InputError);
  }

  TEST_CASE("retract examples") {
    const NormedSpace l2(2, 2.0);
    const auto a = retract_to_ball(l2, std::vector<double>{3, 4});
    CHECK(a[0] == doctest::Approx(0.6));
    CHECK(a[1] == doctest::Approx(0.8));
    CHECK(retract_to_ball(NormedSpace(2, 1.0), std::vector<double>{0.2, 0.3}) == std::vector<double>{0.2, 0.3});
    CHECK(retract_to_ball(l2, std::vector<double>{0, 0}) == std::vector<double>{0, 0});
  }

  TEST_CASE("norming functional attains the norm with unit dual norm") {
    SplitMix rng(2);
    for (int t = 0; t < 500; ++t) {
      const NormedSpace X = random_space(rng, 1 + rng() % 5);
      const auto x = gaussian_vector(rng, X.dim());
      const DualPoint xp = norming_functional(X, x);
      CHECK(rel_close(dot(x, xp.coordinates), X.norm(x), 1e-12));
      CHECK(rel_close(xp.host.norm(xp.coordinates), 1.0, 1e-12));
    }
  }

  TEST_CASE("Hoelder inequality against the dual ball") {
    SplitMix rng(3);
    for (int t = 0; t < 500; ++t) {
      const NormedSpace X = random_space(rng, 1 + rng() % 5);
      const auto x = gaussian_vector(rng, X.dim());
      const auto xp = retract_to_ball(X.dual(), gaussian_vector(rng, X.dim()));
      CHECK(std::abs(dot(x, xp)) <= X.norm(x) + 1e-12);
    }
  }

  TEST_CASE("retraction is feasible and idempotent") {
    SplitMix rng(4);
    for (int t = 0; t < 500; ++t) {
      const NormedSpace X = random_space(rng, 1 + rng() % 5);
      auto x = gaussian_vector(rng, X.dim());
      for (double& v : x) v *= 3.0;
      const auto once = retract_to_ball(X, x);
      CHECK(X.norm(once) <= 1.0 + 1e-12);
      const auto twice = retract_to_ball(X, once);
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(twice[i] == doctest::Approx(once[i]).epsilon(1e-14));
    }
  }

  TEST_CASE("norm axioms") {
    SplitMix rng(5);
    for (int t = 0; t < 500; ++t) {
      const NormedSpace X = random_space(rng, 1 + rng() % 5);
      const auto x = gaussian_vector(rng, X.dim()), y = gaussian_vector(rng, X.dim());
      const double alpha = testing::uniform(rng, -4.0, 4.0);
      std::vector<double> ax(x), s(x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        ax[i] *= alpha;
        s[i] += y[i];
      }
      CHECK(rel_close(X.norm(ax), std::abs(alpha) * X.norm(x), 1e-12));
      CHECK(X.norm(s) <= X.norm(x) + X.norm(y) + 1e-12);
      CHECK(X.norm(x) > 0.0);
    }
  }

  TEST_CASE("exponent monotonicity at unit weights") {
    SplitMix rng(6);
    const double exps[] = {1.0, 1.5, 2.0, 3.0, 7.0, kInf};
    for (int t = 0; t < 200; ++t) {
      const auto x = gaussian_vector(rng, 4);
      for (int i = 0; i + 1 < 6; ++i) CHECK(NormedSpace(4, exps[i + 1]).norm(x) <= NormedSpace(4, exps[i]).norm(x) + 1e-12);
    }
  }
}
