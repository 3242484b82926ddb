#include <doctest.h>

#include "summing/errors.hpp"
#include "summing/operator.hpp"
#include "summing/simple_function.hpp"
#include "support.hpp"

using namespace summing;

TEST_SUITE("operator") {
  TEST_CASE("shape and application") {
    const NormedSpace X(3, 2.0), Y(2, 1.0);
    const Operator u({1, 2, 3, 4, 5, 6}, X, Y);
    CHECK(u.rows() == 2);
    CHECK(u.cols() == 3);
    CHECK(u.apply(std::vector<double>{1, 0, -1}) == std::vector<double>{-2, -2});
    CHECK(u.apply_transpose(std::vector<double>{1, 1}) == std::vector<double>{5, 7, 9});
    CHECK(u.column(1) == std::vector<double>{2, 5});
    CHECK(u.at(1, 2) == 6);
    CHECK_THROWS_AS(Operator({1, 2, 3}, X, Y), InputError);
    CHECK_THROWS_AS(u.apply(std::vector<double>{1, 2}), InputError);
  }

  TEST_CASE("rank-one factorization") {
    const NormedSpace X(2, kInf), Y(3, 2.0);
    const std::vector<double> a{2, -1}, y{1, 0.5, -3};
    const Operator u = Operator::rank_one(a, y, X, Y);
    const auto f = rank_one_factors(u);
    REQUIRE(f);
    const Operator back = Operator::rank_one(f->a, f->y, X, Y);
    for (std::size_t i = 0; i < u.matrix().size(); ++i) CHECK(back.matrix()[i] == doctest::Approx(u.matrix()[i]));
    CHECK_FALSE(rank_one_factors(Operator::identity(NormedSpace(2, 2.0))));
    const auto z = rank_one_factors(Operator::zero(X, Y));
    REQUIRE(z);
    CHECK(X.dual().norm(z->a) * Y.norm(z->y) == 0.0);
  }

  TEST_CASE("simple function arithmetic") {
    const AtomicMeasure mu({1.0, 2.0});
    const NormedSpace X(2, 1.0);
    const SimpleFunction f(mu, X, {{1, 2}, {3, 4}});
    const SimpleFunction g = SimpleFunction::constant(mu, X, std::vector<double>{1, 1});
    CHECK((f + g).value(1) == std::vector<double>{4, 5});
    CHECK((f - f).is_zero());
    CHECK(f.scaled(-2.0).value(0) == std::vector<double>{-2, -4});
    CHECK(f.pointwise_norms() == std::vector<double>{3, 7});
    CHECK(SimpleFunction::from_flat(mu, X, f.flat()).values() == f.values());
    const Operator swap({0, 1, 1, 0}, X, NormedSpace(2, 2.0));
    CHECK(f.composed(swap).value(1) == std::vector<double>{4, 3});
    CHECK_THROWS_AS(SimpleFunction(mu, X, {{1, 2}}), InputError);
    CHECK_THROWS_AS(SimpleFunction(mu, X, {{1, 2}, {1}}), InputError);
    CHECK_THROWS_AS(f + SimpleFunction::zero(AtomicMeasure::counting(2), X), InputError);
    CHECK_THROWS_AS(f.composed(Operator::identity(NormedSpace(2, 2.0))), InputError);
  }
}
