#include <doctest.h>

#include <cmath>
#include <random>

#include "oddfield/errors.hpp"
#include "oddfield/fields.hpp"
#include "support.hpp"

using namespace oddfield;
using oddfield::test::point;

TEST_CASE("FieldTensor storage") {
  FieldTensor F(5);
  F.set(0, 1, 2.0);
  F.set(3, 2, 1.5);
  CHECK(F(1, 0) == -2.0);
  CHECK(F(2, 3) == -1.5);
  CHECK(F(4, 4) == 0.0);
  CHECK(F.max_abs() == 2.0);
  CHECK(FieldTensor::independent_count(5) == 10);
  const auto v = F.independent();
  REQUIRE(v.size() == 10);
  CHECK(v[0] == 2.0);
  CHECK(v[7] == -1.5);  // (2,3): after 01 02 03 04 12 13 14
  CHECK_THROWS_AS(F.set(1, 1, 1.0), ContractError);
  CHECK_THROWS_AS(F(0, 5), ContractError);
  CHECK_THROWS_AS(F - FieldTensor(7), ContractError);
}

TEST_CASE("field_uniform of a static charge") {
  const Dimension d5(5);
  const LorentzVector b{1, 0, 0, 0, 0};
  const LorentzVector x{0.7, 0.6, -0.8, 0.3, 0.0};
  const FieldTensor F = field_uniform(x, b, d5, 1.0);
  const double r2 = 0.36 + 0.64 + 0.09;
  const double K = 2.0 * coefficient_C(d5).value;
  for (int i = 1; i < 5; ++i) {
    CHECK(F(0, i) == doctest::Approx(K * x[i] / (r2 * r2)).epsilon(1e-14).scale(1e-300));
    for (int j = i + 1; j < 5; ++j) CHECK(F(i, j) == 0.0);
  }
  CHECK(F.max_abs() > 0.0);
  CHECK_THROWS_AS(field_uniform(LorentzVector{2, 0, 0, 0, 0}, b, d5, 1.0), DegenerateError);

  const Dimension d7(7);
  const FieldTensor G = field_uniform(point(7, 0, 2), LorentzVector::basis(7, 0), d7, 1.0);
  const FieldTensor G2 = field_uniform(point(7, 0, 2), LorentzVector::basis(7, 0), d7, 1.0, FieldPrefactor::two);
  CHECK(G(0, 1) / G2(0, 1) == doctest::Approx(2.0));
  CHECK(prefactor_multiplier(FieldPrefactor::two_n, 3) == 6.0);
  CHECK(prefactor_multiplier(FieldPrefactor::two, 3) == 2.0);
}

TEST_CASE("field tensor covariance") {
  const Dimension d5(5);
  const LorentzVector b = boost(LorentzVector{1, 0, 0, 0, 0}, 0.5, 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const LorentzVector x = oddfield::test::uniform_sample(rng, b);
    const double xi = 0.15 * (i + 1);
    const FieldTensor lhs = field_uniform(boost(x, xi, 1), boost(b, xi, 1), d5, 1.0);
    const FieldTensor rhs = boost(field_uniform(x, b, d5, 1.0), xi, 1);
    CHECK((lhs - rhs).max_abs() < 1e-12 * rhs.max_abs());
  }
}

TEST_CASE("field_numeric") {
  const Dimension d5(5);
  const LorentzVector b = boost(LorentzVector{1, 0, 0, 0, 0}, 0.6, 1);
  auto A = [&](const LorentzVector& y) { return potential_uniform(y, b, d5, 1.0).A; };
  const LorentzVector x = point(5, 2.0, -0.5, 0.8);
  const FieldTensor exact = field_uniform(x, b, d5, 1.0);
  const double h = 1e-2;
  const double e1 = (field_numeric(x, A, d5, h) - exact).max_abs();
  const double e2 = (field_numeric(x, A, d5, h / 2) - exact).max_abs();
  CHECK(e1 < std::max(1e-6, 1e2 * std::pow(h, 4)) * exact.max_abs());
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
  CHECK((field_numeric(x, A, d5, 1e-2, true) - exact).max_abs() < e2 / 10);

  // Pure gauge input: A = d phi.
  auto grad = [](const LorentzVector& y) {
    LorentzVector g(5);
    g[0] = -std::cos(y[0]) * y[1] * y[1];
    g[1] = std::sin(y[0]) * 2.0 * y[1] + y[2];
    g[2] = y[1];
    return g;
  };
  CHECK(field_numeric(x, grad, d5, 1e-3).max_abs() < 1e-10);
  CHECK_THROWS_AS(field_numeric(x, A, d5, 0.0), ContractError);
}

TEST_CASE("Lorenz and wave residuals") {
  const Dimension d5(5);
  const LorentzVector b{1, 0, 0, 0, 0};
  auto A = [&](const LorentzVector& y) { return potential_uniform(y, b, d5, 1.0).A; };
  const LorentzVector x{2, 1, 0, 0, 0};
  CHECK(std::abs(residuals(x, A, d5, 1e-3).lorenz) <= 1e-6);
  const double w1 = residuals(x, A, d5, 1e-2).wave.max_abs();
  const double w2 = residuals(x, A, d5, 5e-3).wave.max_abs();
  CHECK(w1 <= 1e-3);
  CHECK(std::log2(w1 / w2) == doctest::Approx(2.0).epsilon(0.15));

  auto constant = [](const LorentzVector&) { return LorentzVector{0.3, -1, 2, 0, 5}; };
  const Residuals c = residuals(x, constant, d5, 1e-2);
  CHECK(c.lorenz == 0.0);
  CHECK(c.wave.max_abs() == 0.0);
}

TEST_CASE("field prefactor arbitration") {
  for (int d : {5, 7, 9}) {
    const PrefactorArbitration pa = arbitrate_field_prefactor(Dimension(d));
    CHECK(pa.n == (d - 3) / 2);
    CHECK(pa.confirmed == FieldPrefactor::two_n);
    CHECK(pa.deviation_two_n < 1e-6);
    CHECK(pa.measured == doctest::Approx(2.0 * pa.n).epsilon(1e-6));
    if (pa.n > 1) CHECK(pa.deviation_two > 0.4);
  }
  CHECK(to_string(FieldPrefactor::two_n) == "2nC");
  CHECK(to_string(FieldPrefactor::two) == "2C");
}
