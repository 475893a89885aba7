#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oddfield/errors.hpp"
#include "oddfield/greens.hpp"
#include "oddfield/oracle.hpp"

using namespace oddfield;

TEST_CASE("half_power_derivative") {
  CHECK(half_power_derivative(0, 4.0) == doctest::Approx(0.5));
  CHECK(half_power_derivative(1, 1.0) == doctest::Approx(-0.5));
  CHECK(half_power_derivative(2, 1.0) == doctest::Approx(0.75));
  CHECK(half_power_derivative(3, 2.0) == doctest::Approx(-15.0 / 8.0 * std::pow(2.0, -3.5)));
}

TEST_CASE("double_factorial") {
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(3) == 3);
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(9) == 945);
  CHECK_THROWS_AS(double_factorial(-2), ContractError);
}

TEST_CASE("fp_sinh_integral") {
  const Estimate e1 = fp_sinh_integral(1);
  CHECK(std::abs(e1.value + 1.0) < 1e-10);
  CHECK(e1.error < 1e-10);
  CHECK(std::abs(fp_sinh_antiderivative(1) + 1.0) < 1e-15);
  CHECK(std::abs(fp_sinh_integral(2).value - fp_sinh_antiderivative(2)) < 1e-9);
  CHECK(fp_sinh_antiderivative(2) == doctest::Approx(2.0 / 3.0));
  for (int n = 3; n <= 5; ++n) {
    double num = 1.0;
    double den = 1.0;
    for (int k = 2 * n - 2; k > 0; k -= 2) num *= k;
    for (int k = 2 * n - 1; k > 0; k -= 2) den *= k;
    CHECK(fp_sinh_integral(n).value == doctest::Approx((n % 2 ? -1.0 : 1.0) * num / den).epsilon(1e-10));
    CHECK(fp_sinh_antiderivative(n) == doctest::Approx(fp_sinh_integral(n).value).epsilon(1e-10));
  }
  CHECK(std::abs(fp_sinh_integral(1, -20.0).value - fp_sinh_integral(1, -40.0).value) < 1e-12);
  CHECK_THROWS_AS(fp_sinh_integral(0), ContractError);
  CHECK_THROWS_AS(fp_sinh_integral(1, -0.5), ContractError);
}

TEST_CASE("fp_integral") {
  QuadratureSpec q;
  q.pole_order = 1;
  q.tail = TailMode::truncate;
  q.lambda_max = 9.0;
  CHECK(fp_integral([](double l) { return l; }, 1, q).value == doctest::Approx(-6.0).epsilon(1e-8));

  q = QuadratureSpec{};
  const Estimate b = fp_integral([](double l) { return 1.0 / std::sqrt(1.0 + l); }, 1, q);
  CHECK(b.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(fp_integral([](double) { return 2.5; }, 1, q).value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  q.pole_order = 2;
  q.rel_tol = 1e-6;
  const Estimate b2 = fp_integral([](double l) { return 1.0 / std::sqrt(4.0 + l); }, 2, q);
  CHECK(b2.value == doctest::Approx(0.75 * beta_half_moment(2.5, 4.0)).epsilon(1e-6));

  auto nth = [](double l) { return -0.5 * std::pow(1.0 + l, -1.5); };
  CHECK(fp_integral_from_derivative(nth, 1, QuadratureSpec{}).value == doctest::Approx(1.0).epsilon(1e-12));

  QuadratureSpec untouched;
  untouched.substitution = Substitution::none;
  CHECK(fp_integral_from_derivative(nth, 1, untouched).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("half_power_moment") {
  const Estimate m = half_power_moment([](double l) { return 1.0 / (1.0 + l); }, QuadratureSpec{});
  CHECK(m.value == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(beta_half_moment(1.0, 1.0) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("QuadratureSpec validation") {
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate());
  q.rel_tol = 0.0;
  CHECK_THROWS_AS(q.validate(), ContractError);
  q = QuadratureSpec{};
  q.lambda_max = -1.0;
  CHECK_THROWS_AS(q.validate(), ContractError);
  q = QuadratureSpec{};
  q.pole_order = 0;
  CHECK_THROWS_AS(q.validate(), ContractError);
}

TEST_CASE("coefficient_C") {
  const Dimension d5(5);
  CHECK(coefficient_C(d5).value == doctest::Approx(1.0 / (2.0 * d5.omega())).epsilon(1e-14));
  const Dimension d7(7);
  CHECK(coefficient_C(d7).value == doctest::Approx(1.0 / (2.0 * d7.omega())).epsilon(1e-12));
  const Dimension d11(11);
  CHECK(coefficient_C(d11).value == doctest::Approx(6.0 / (2.0 * d11.omega())).epsilon(1e-10));
  CHECK(coefficient_C(d5.with_omega(2.0 * d5.omega())).value ==
        doctest::Approx(0.5 * coefficient_C(d5).value).epsilon(1e-15));
}
