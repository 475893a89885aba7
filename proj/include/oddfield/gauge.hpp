#pragma once

// The would-be pure-gauge scalar chi, the decomposition
//   v^mu/(R.v) = d^mu ln|R.v| (+/-) (v^2 - R.a)/(R.v) d^mu s   (fixed lambda)
// and the gap A^mu - d^mu chi left by the second term.

#include <string_view>

#include "oddfield/greens.hpp"
#include "oddfield/potentials.hpp"
#include "oddfield/worldline.hpp"

namespace oddfield {

enum class IdentitySign { minus, plus };

std::string_view to_string(IdentitySign s);
inline double sign_value(IdentitySign s) { return s == IdentitySign::plus ? 1.0 : -1.0; }

/// (-1)^{n+1} e / (2 Omega).
double chi_prefactor(const Dimension& dim, double charge);

/// chi(x) = (-1)^{n+1} e/(2 Omega) int_0^inf lambda^{-1/2} (d/dlambda)^n ln|R.v| dlambda.
Estimate chi(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
             const QuadratureSpec& spec);

struct GradChi {
  LorentzVector value;  // d^mu chi, index raised
  double error = 0.0;   // |G_h - G_2h| / 3, max over components
};

/// 2nd-order central differences of chi at step h, error from the 2h result.
GradChi grad_chi(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                 const QuadratureSpec& spec, double h);

/// The same stencil at step h only.
LorentzVector grad_chi_value(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                             const QuadratureSpec& spec, double h);

/// max_mu |v^mu/(R.v) - T1^mu - sign T2^mu| at s(x; lambda), where T1 is the
/// finite-difference gradient of ln|R.v| with s re-solved at every stencil
/// point and T2 = (v^2 - R.a)/(R.v) d^mu s.
double identity_residual(const LorentzVector& x, const Worldline& w, double lambda, const Dimension& dim,
                         IdentitySign sign);

/// |v^mu/(R.v)|_inf at s(x; lambda): the tolerance scale of identity_residual.
double identity_scale(const LorentzVector& x, const Worldline& w, double lambda, const Dimension& dim);

/// sign (-1)^{n+1} e/(2 Omega) int lambda^{-1/2} (d/dlambda)^n [(v^2 - R.a) R^mu/(R.v)^2] dlambda:
/// what A - d chi must equal if the identity holds with the given sign.
PotentialSample integrated_correction(const LorentzVector& x, const Worldline& w, const Dimension& dim,
                                      double charge, const QuadratureSpec& spec, IdentitySign sign);

struct GaugeReport {
  LorentzVector x;
  LorentzVector A;
  LorentzVector grad_chi;
  LorentzVector gap;  // A - grad_chi
  double gap_rel = 0.0;
  double lambda_ref = 0.0;  // (R.v)^2 at the retarded time
  double identity_residual_minus = 0.0;
  double identity_residual_plus = 0.0;
  double identity_scale = 0.0;
  IdentitySign chosen_sign = IdentitySign::plus;
  LorentzVector gap_integrated;     // integrated_correction with chosen_sign
  double consistency = 0.0;         // |gap - gap_integrated|_inf / |gap_integrated|_inf
  double error_budget = 0.0;        // A, grad chi and quadrature error estimates combined
};

/// Step for grad_chi when none is given: 1e-3 (1 + |x|).
double default_chi_step(const LorentzVector& x);

GaugeReport gauge_gap(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                      const QuadratureSpec& spec);

}  // namespace oddfield
