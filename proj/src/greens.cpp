#include "oddfield/greens.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "oddfield/errors.hpp"

namespace oddfield {

namespace {

// Power series in u truncated to `terms` coefficients.
using Series = std::vector<double>;

Series multiply(const Series& a, const Series& b) {
  Series r(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series reciprocal(const Series& a) {
  Series r(a.size(), 0.0);
  r[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += a[i] * r[k - i];
    r[k] = -s / a[0];
  }
  return r;
}

// Coefficients p_j of (theta / sinh theta)^{2n} = sum_j p_j theta^{2j}, j < terms.
// The first n give the principal part sum_j p_j theta^{2j-2n} of 1/sinh^{2n}.
Series laurent_coefficients(int n, int count) {
  const auto terms = static_cast<std::size_t>(count);
  Series shc(terms, 0.0);  // sinh(theta)/theta in u = theta^2
  double fact = 1.0;
  for (std::size_t j = 0; j < terms; ++j) {
    if (j > 0) fact *= static_cast<double>((2 * j) * (2 * j + 1));
    shc[j] = 1.0 / fact;
  }
  Series pw(terms, 0.0);
  pw[0] = 1.0;
  for (int k = 0; k < 2 * n; ++k) pw = multiply(pw, shc);
  return reciprocal(pw);
}

// Sum of the pole terms of the integral over [theta_min, -eps]: p_j eps^{-(2n-2j-1)}/(2n-2j-1).
double pole_terms(const Series& p, int n, double eps) {
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const int m = 2 * n - 2 * j - 1;
    s += p[static_cast<std::size_t>(j)] * std::pow(eps, -m) / m;
  }
  return s;
}

// Integral of 1/sinh^{2n} over (-inf, theta_min): 4^n sum_m C(2n+m-1, m) e^{(2n+2m) t}/(2n+2m).
double sinh_tail(int n, double theta_min) {
  double sum = 0.0;
  for (int m = 0; m < 200; ++m) {
    const double term = binomial(2 * n + m - 1, m) * std::exp((2 * n + 2 * m) * theta_min) / (2 * n + 2 * m);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::pow(4.0, n) * sum;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) throw ContractError("quadrature: lambda_max must be > 0");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw ContractError("quadrature: rel_tol must lie in (0, 1e-2]");
  if (pole_order < 1) throw ContractError("quadrature: pole order n must be >= 1");
  if (!(derivative_step > 0.0)) throw ContractError("quadrature: derivative step must be > 0");
}

std::int64_t double_factorial(int k) {
  if (k < -1) throw ContractError("double_factorial: k must be >= -1");
  if (k > 33) throw ContractError("double_factorial: k > 33 overflows 64 bits");
  std::int64_t r = 1;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

double half_power_derivative(int n, double lambda) {
  if (n < 0) throw ContractError("half_power_derivative: n must be >= 0");
  if (!(lambda > 0.0)) throw ContractError("half_power_derivative: lambda must be > 0");
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * static_cast<double>(double_factorial(2 * n - 1)) / std::ldexp(1.0, n) * std::pow(lambda, -n - 0.5);
}

Estimate fp_sinh_integral(int n, double theta_min) {
  if (n < 1) throw ContractError("fp_sinh_integral: n must be >= 1");
  if (!(theta_min <= -2.0)) throw ContractError("fp_sinh_integral: theta_min must be <= -2");

  // FP = int_{theta_min}^{-1} + int_{-1}^0 (csch^{2n} - principal part) + FP of the
  // principal part over (-1, 0) + tail below theta_min.
  constexpr int kExtra = 16;
  constexpr double kSeriesBelow = 0.5;
  const Series p = laurent_coefficients(n, n + kExtra);
  auto regular = [&](double t) {
    if (std::abs(t) < kSeriesBelow) {
      const double u = t * t;
      double acc = 0.0;
      for (int j = n + kExtra - 1; j >= n; --j) acc = acc * u + p[static_cast<std::size_t>(j)];
      return acc;
    }
    double principal = 0.0;
    for (int j = 0; j < n; ++j) principal += p[static_cast<std::size_t>(j)] * std::pow(t, 2 * j - 2 * n);
    return std::pow(std::sinh(t), -2 * n) - principal;
  };
  auto integrand = [n](double t) { return std::pow(std::sinh(t), -2 * n); };

  constexpr double kTol = 1e-13;
  const QuadResult outer = integrate_gk(integrand, theta_min, -1.0, kTol);
  const QuadResult inner = integrate_gk(regular, -1.0, 0.0, kTol);
  const double tail = sinh_tail(n, theta_min);
  const double poles = pole_terms(p, n, 1.0);
  const double value = outer.value + inner.value - poles + tail;
  // The Gauss/Kronrod gap Boost reports is far larger than the actual error on
  // these smooth integrands; use roundoff of the summed magnitudes instead.
  const double mag = std::abs(outer.value) + std::abs(inner.value) + std::abs(poles) + std::abs(tail);
  const Estimate r{value, 256.0 * std::numeric_limits<double>::epsilon() * mag};
  if (!std::isfinite(r.value)) throw QuadratureError("fp_sinh_integral: non-finite result");
  return r;
}

Estimate half_power_moment(const ScalarFn& f, const QuadratureSpec& spec) {
  spec.validate();
  const double lmax = spec.lambda_max;
  const double tol = 0.1 * spec.rel_tol;

  QuadResult body;
  if (spec.substitution == Substitution::sqrt) {
    body = integrate_gk([&](double u) { return 2.0 * f(u * u); }, 0.0, std::sqrt(lmax), tol);
  } else {
    body = integrate_tanh_sinh([&](double l) { return f(l) / std::sqrt(l); }, 0.0, lmax, tol);
  }

  QuadResult tail;
  if (spec.tail == TailMode::mapped) {
    const double root = std::sqrt(lmax);
    tail = integrate_gk(
        [&](double w) {
          const double l = lmax / (w * w);
          return 2.0 * root * f(l) / (w * w);
        },
        0.0, 1.0, tol);
  }

  Estimate r{body.value + tail.value, body.error + tail.error};
  const double l1 = body.l1 + tail.l1;
  if (!std::isfinite(r.value) || !std::isfinite(r.error)) {
    throw QuadratureError("half_power_moment: non-finite integral (tail diverges or integrand failed)");
  }
  if (r.error > spec.rel_tol * l1 && r.error > 1e-300) {
    std::ostringstream msg;
    msg << "half_power_moment: error estimate " << r.error << " exceeds rel_tol " << spec.rel_tol
        << " (body " << body.value << " +/- " << body.error << ", tail " << tail.value << " +/- " << tail.error
        << ")";
    throw QuadratureError(msg.str());
  }
  return r;
}

Estimate fp_integral_from_derivative(const ScalarFn& g_nth, int n, const QuadratureSpec& spec) {
  if (n < 1) throw ContractError("fp_integral: n must be >= 1");
  if (n != spec.pole_order) throw ContractError("fp_integral: n disagrees with the quadrature spec pole order");
  Estimate m = half_power_moment(g_nth, spec);
  if (n % 2 == 1) m.value = -m.value;
  return m;
}

Estimate fp_integral(const ScalarFn& g, int n, const QuadratureSpec& spec) {
  double worst_err = 0.0;
  double worst_val = 0.0;
  auto g_nth = [&](double lam) {
    double h = spec.derivative_step * (1.0 + lam);
    Stencil st = Stencil::central;
    if (lam - 0.5 * n * h <= 0.0) st = Stencil::forward;
    const Estimate d = nth_derivative(g, lam, n, h, st);
    if (!std::isfinite(d.value)) {
      throw QuadratureError("fp_integral: derivative estimation failed at lambda = " + std::to_string(lam));
    }
    worst_err = std::max(worst_err, d.error);
    worst_val = std::max(worst_val, std::abs(d.value));
    return d.value;
  };
  Estimate r = fp_integral_from_derivative(g_nth, n, spec);
  if (worst_val > 0.0) r.error += worst_err / worst_val * std::abs(r.value);
  return r;
}

namespace {

const Estimate& cached_fp_sinh(int n) {
  constexpr int kMaxN = (kMaxDim - 3) / 2;
  static std::array<std::once_flag, kMaxN + 1> once;
  static std::array<Estimate, kMaxN + 1> value;
  const auto i = static_cast<std::size_t>(n);
  std::call_once(once[i], [&] { value[i] = fp_sinh_integral(n); });
  return value[i];
}

}  // namespace

Estimate coefficient_C(const Dimension& dim) {
  const int n = dim.n();
  const Estimate& fp = cached_fp_sinh(n);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double factor = sign * static_cast<double>(double_factorial(2 * n - 1)) / std::ldexp(1.0, n) / dim.omega();
  return {factor * fp.value, std::abs(factor) * fp.error};
}

}  // namespace oddfield
