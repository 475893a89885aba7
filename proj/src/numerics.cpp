#include "oddfield/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "oddfield/errors.hpp"

namespace oddfield {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

double difference_quotient(const ScalarFn& f, double x, int n, double h, Stencil stencil) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double c = binomial(n, k) * ((k % 2 == 0) ? 1.0 : -1.0);
    if (stencil == Stencil::central) {
      sum += c * f(x + (0.5 * n - k) * h);
    } else {
      // (-1)^{n-k} C(n,k) f(x + k h)
      sum += c * ((n % 2 == 0) ? 1.0 : -1.0) * f(x + k * h);
    }
  }
  return sum / std::pow(h, n);
}

}  // namespace

Estimate nth_derivative(const ScalarFn& f, double x, int n, double h, Stencil stencil) {
  if (n < 0) throw ContractError("nth_derivative: order must be >= 0");
  if (!(h > 0.0)) throw ContractError("nth_derivative: step must be positive");
  if (n == 0) return {f(x), 0.0};
  constexpr int kLevels = 10;
  const double base = stencil == Stencil::central ? 4.0 : 2.0;
  std::vector<std::vector<double>> t(kLevels, std::vector<double>(kLevels, 0.0));
  Estimate best{0.0, std::numeric_limits<double>::infinity()};
  double step = h;
  for (int i = 0; i < kLevels; ++i, step *= 0.5) {
    t[i][0] = difference_quotient(f, x, n, step, stencil);
    if (i == 0) {
      best.value = t[0][0];
      continue;
    }
    double factor = base;
    for (int j = 1; j <= i; ++j, factor *= base) {
      t[i][j] = t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / (factor - 1.0);
      const double err = std::max(std::abs(t[i][j] - t[i][j - 1]), std::abs(t[i][j] - t[i - 1][j - 1]));
      if (err <= best.error) best = {t[i][j], err};
    }
    // Roundoff has taken over once the newest diagonal drifts away again.
    if (std::abs(t[i][i] - t[i - 1][i - 1]) >= 2.0 * best.error) break;
  }
  return best;
}

QuadResult integrate_gk(const ScalarFn& f, double a, double b, double tol) {
  QuadResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &r.error, &r.l1);
  return r;
}

QuadResult integrate_tanh_sinh(const ScalarFn& f, double a, double b, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  QuadResult r;
  r.value = integrator.integrate(f, a, b, tol, &r.error, &r.l1);
  return r;
}

}  // namespace oddfield
