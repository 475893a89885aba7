#pragma once

// Retarded vector potential A^mu(x) of a point charge: closed form for uniform
// motion, finite-part quadrature over lambda = -R^2 for any worldline, and the
// a-shift oracle.

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "oddfield/greens.hpp"
#include "oddfield/spacetime.hpp"
#include "oddfield/worldline.hpp"

namespace oddfield {

enum class PotentialMethod { closed, fp_quadrature, a_shift };

std::string_view to_string(PotentialMethod m);

struct PotentialSample {
  LorentzVector x;
  LorentzVector A;
  PotentialMethod method = PotentialMethod::closed;
  double est_error = 0.0;
};

/// Any map x -> A^mu(x). Must be reentrant.
using PotentialFn = std::function<LorentzVector(const LorentzVector&)>;

/// Global sign of the quadrature route relative to -e/(2 Omega) FP(...), fixed
/// once against the closed form.
inline constexpr double kGenericSignAnchor = 1.0;

/// A^mu = C e b^mu / r^{2n}, r^2 = (b.x)^2 + x^2.
PotentialSample potential_uniform(const LorentzVector& x, const LorentzVector& b, const Dimension& dim,
                                  double charge);

/// A^mu = -e/(2 Omega) FP int g^mu(lambda) (d/dlambda)^n [theta(lambda) lambda^{-1/2}] dlambda
/// with g^mu = v^mu/(R.v) on the retarded branch. The n-th lambda-derivatives
/// of g are exact, from Taylor jets of the branch.
PotentialSample potential_generic(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                                  const QuadratureSpec& spec);

/// Default a-steps: 0.2 (R.v)^2_ret / ((n+1) 2^k), k = 0..n+3.
std::vector<double> default_a_steps(const LorentzVector& x, const Worldline& w, const Dimension& dim);

/// A^mu = e/Omega (d/da)^n I^mu(a) at a = 0+, I^mu from the direct s-integral.
/// The derivative comes from n-th forward differences on a = h, 2h, ..., (n+1)h
/// for each h in a_steps, extrapolated to h -> 0 by Neville's scheme.
/// a_steps must be positive, strictly decreasing and hold at least n+2 entries.
/// Rows where round-off has taken over the difference table are dropped. The
/// result is reliable for n <= 3; beyond that the n-th difference of a double
/// precision integral has too few significant digits.
PotentialSample potential_ashift_oracle(const LorentzVector& x, const Worldline& w, const Dimension& dim,
                                        double charge, std::span<const double> a_steps);

/// Same extrapolated n-th derivative at 0+ applied to an arbitrary scalar I(a);
/// exposed for testing the stencil on closed-form inputs.
Estimate ashift_derivative(const std::function<double(double)>& I, int n, std::span<const double> a_steps);

}  // namespace oddfield
