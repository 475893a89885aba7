#pragma once

// Independent brute-force evaluators. Slow, used by tests and the verify
// command to cross-check the primary pipeline.

#include <functional>
#include <string>

#include "oddfield/numerics.hpp"
#include "oddfield/spacetime.hpp"
#include "oddfield/worldline.hpp"

namespace oddfield {

struct OracleResult {
  LorentzVector value;
  double est_error = 0.0;
  std::string method;
};

/// Plain bisection on [lo, hi] down to |hi - lo| <= tol. Requires a sign change.
double bisect_root(const ScalarFn& f, double lo, double hi, double tol);

/// Upper endpoint s_-(a) of the a-regularized support: -R(s)^2 + a = 0, past
/// the retarded time. Requires 0 < a < -min R^2 between the retarded and
/// advanced roots.
double shifted_endpoint(const Worldline& w, const LorentzVector& x, double a);

/// Lower truncation of the s-integral: the retarded-branch point with
/// -R^2 = lambda_cut.
struct STruncation {
  double lambda_cut = 0.0;
};

/// Default truncation for order n: lambda_cut = scale * 10^(12/n), which keeps
/// the dropped piece of the n-th a-derivative near 1e-12 relative.
STruncation default_truncation(const Worldline& w, const LorentzVector& x, const Dimension& dim);

/// I^mu(a) = integral over [S, s_-(a)] of v^mu(s) / sqrt(-R(s)^2 + a) ds, with
/// s = s_-(a) - tau^2 removing the endpoint singularity. a > 0.
OracleResult direct_s_integral(const LorentzVector& x, const Worldline& w, const Dimension& dim, double a,
                               const STruncation& cut);

/// FP of the integral of 1/sinh^{2n} over (-inf, 0) from the antiderivative
/// -P(coth theta), P(c) = integral_0^c (u^2 - 1)^{n-1} du. P is odd, so the
/// Laurent expansion at 0- has no constant term and FP = -P(1).
double fp_sinh_antiderivative(int n);

/// Integral over (0, inf) of lambda^{-1/2} (r2 + lambda)^{-m}: B(1/2, m - 1/2) r2^{1/2 - m}. m > 1/2.
double beta_half_moment(double m, double r2);

}  // namespace oddfield
