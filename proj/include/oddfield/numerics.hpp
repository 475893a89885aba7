#pragma once

#include <functional>

namespace oddfield {

using ScalarFn = std::function<double(double)>;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

enum class Stencil { central, forward };

/// n-th derivative of f at x by an n-th order difference quotient, refined by
/// Richardson extrapolation over steps h, h/2, h/4, ... (Ridders' scheme).
/// The central quotient has an error series in h^2, the forward one in h.
Estimate nth_derivative(const ScalarFn& f, double x, int n, double h, Stencil stencil = Stencil::central);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;  // integral of |f|
};

/// Adaptive 31-point Gauss-Kronrod on a finite interval.
QuadResult integrate_gk(const ScalarFn& f, double a, double b, double tol);

/// Double-exponential (tanh-sinh) quadrature on a finite interval; tolerates
/// integrable endpoint singularities.
QuadResult integrate_tanh_sinh(const ScalarFn& f, double a, double b, double tol);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace oddfield
