#pragma once

// Field strength F^{mu nu} = d^mu A^nu - d^nu A^mu: closed form for uniform
// motion, numerical curl of any potential, and wave/Lorenz residuals.

#include <array>
#include <string_view>
#include <vector>

#include "oddfield/potentials.hpp"
#include "oddfield/spacetime.hpp"

namespace oddfield {

/// Antisymmetric rank-2 contravariant tensor. Only mu < nu is stored, so
/// F(mu, nu) == -F(nu, mu) holds exactly.
class FieldTensor {
 public:
  FieldTensor() = default;
  explicit FieldTensor(int dim);

  int dim() const { return dim_; }
  double operator()(int mu, int nu) const;
  /// Sets F^{mu nu} (and thereby F^{nu mu}); mu != nu.
  void set(int mu, int nu, double value);

  static int independent_count(int dim) { return dim * (dim - 1) / 2; }
  /// Components with mu < nu in lexicographic order.
  std::vector<double> independent() const;
  double max_abs() const;

  FieldTensor& operator-=(const FieldTensor& o);
  friend FieldTensor operator-(FieldTensor a, const FieldTensor& b) { return a -= b; }

 private:
  static constexpr std::size_t kSlots = kMaxDim * (kMaxDim - 1) / 2;
  std::size_t slot(int mu, int nu) const;

  std::array<double, kSlots> upper_{};
  int dim_ = 0;
};

/// Prefactor K in F = K e (b^mu x^nu - b^nu x^mu) / r^{2n+2}, in units of C.
enum class FieldPrefactor {
  two_n,  // from differentiating C e b^mu / r^{2n}
  two     // the printed 2 C
};

std::string_view to_string(FieldPrefactor p);

double prefactor_multiplier(FieldPrefactor p, int n);

FieldTensor field_uniform(const LorentzVector& x, const LorentzVector& b, const Dimension& dim, double charge,
                          FieldPrefactor prefactor = FieldPrefactor::two_n);

/// Lambda^mu_alpha Lambda^nu_beta F^{alpha beta}.
FieldTensor boost(const FieldTensor& F, double rapidity, int axis);

/// 4th-order central differences, index raised with d^0 = -d_0. With
/// richardson, the result at h and h/2 is extrapolated ((16 F_{h/2} - F_h)/15).
FieldTensor field_numeric(const LorentzVector& x, const PotentialFn& A, const Dimension& dim, double h,
                          bool richardson = false);

struct Residuals {
  double lorenz = 0.0;  // d_mu A^mu
  LorentzVector wave;   // d_nu d^nu A^mu
};

/// lorenz from 4th-order central differences, wave from the 2nd-order
/// three-point Laplacian with metric signs.
Residuals residuals(const LorentzVector& x, const PotentialFn& A, const Dimension& dim, double h);

/// Stencil step: 1e-4 for closed-form potentials, 1e-3 (1 + |x|) for quadrature.
double default_field_step(const LorentzVector& x, bool closed_form);

struct PrefactorArbitration {
  int n = 1;
  double measured = 0.0;  // K / C from F_numeric(A_uniform)
  FieldPrefactor confirmed = FieldPrefactor::two_n;
  double deviation_two_n = 0.0;  // |measured - 2n| / 2n
  double deviation_two = 0.0;    // |measured - 2| / 2
};

/// Measures K/C at a static-charge sample point and picks the closer candidate.
PrefactorArbitration arbitrate_field_prefactor(const Dimension& dim);

}  // namespace oddfield
