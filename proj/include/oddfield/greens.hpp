#pragma once

// Odd-dimensional retarded Green function machinery: derivatives of
// lambda^{-1/2}, Hadamard finite-part integrals and the dimensional constant
// of the uniform-motion potential.

#include <cstdint>

#include "oddfield/numerics.hpp"
#include "oddfield/spacetime.hpp"

namespace oddfield {

/// Treatment of the integrable lambda^{-1/2} endpoint.
enum class Substitution {
  sqrt,  // lambda = u^2, smooth integrand in u
  none   // integrate in lambda with a double-exponential rule
};

/// Treatment of (lambda_max, infinity).
enum class TailMode {
  mapped,   // lambda = lambda_max / w^2 onto (0, 1]; must converge
  truncate  // drop the tail; the result is the integral over [0, lambda_max]
};

struct QuadratureSpec {
  double lambda_max = 16.0;
  double rel_tol = 1e-10;
  /// n in the pole lambda^{-(n+1/2)}.
  int pole_order = 1;
  Substitution substitution = Substitution::sqrt;
  TailMode tail = TailMode::mapped;
  /// Initial finite-difference step relative to (1 + lambda).
  double derivative_step = 0.1;

  static QuadratureSpec for_dimension(const Dimension& dim) {
    QuadratureSpec q;
    q.pole_order = dim.n();
    return q;
  }

  /// Throws ContractError if a field is out of range.
  void validate() const;
};

/// k!! with (-1)!! = 1. Exact up to k = 33.
std::int64_t double_factorial(int k);

/// (d/dlambda)^n lambda^{-1/2} = (-1)^n (2n-1)!!/2^n lambda^{-n-1/2}.
double half_power_derivative(int n, double lambda);

/// Hadamard finite part of the integral of 1/sinh^{2n} over (-inf, 0).
///
/// The integral over [theta_min, -1] is taken numerically. On [-1, 0] the
/// Laurent principal part is subtracted from the integrand and its finite part
/// added in closed form. The exponentially small piece below theta_min is
/// added from its series. Closed form for reference: (-1)^n (2n-2)!!/(2n-1)!!.
Estimate fp_sinh_integral(int n, double theta_min = -20.0);

/// Integral over (0, inf) of lambda^{-1/2} f(lambda).
Estimate half_power_moment(const ScalarFn& f, const QuadratureSpec& spec);

/// FP of the integral of g(lambda) (d/dlambda)^n [theta(lambda) lambda^{-1/2}],
/// evaluated as (-1)^n times the integral of g^{(n)} lambda^{-1/2} with boundary
/// terms discarded. g^{(n)} comes from Richardson-refined difference quotients;
/// g is only ever sampled at lambda > 0.
Estimate fp_integral(const ScalarFn& g, int n, const QuadratureSpec& spec);

/// Same, with g^{(n)} supplied analytically.
Estimate fp_integral_from_derivative(const ScalarFn& g_nth, int n, const QuadratureSpec& spec);

/// C_{n,D} of A = C e b / r^{2n}: (-1)^n (2n-1)!!/2^n FP(n) / Omega_D.
/// Equals (n-1)! / (2 Omega_D).
Estimate coefficient_C(const Dimension& dim);

}  // namespace oddfield
