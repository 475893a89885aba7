#pragma once

// Proper-time parameterized point-charge trajectories and the retarded branch
// s(x; lambda) defined by lambda = -R(s)^2, R = x - z(s).

#include <string_view>
#include <variant>
#include <vector>

#include "oddfield/jet.hpp"
#include "oddfield/spacetime.hpp"

namespace oddfield {

/// z(s) = b s with b.b = -1.
struct UniformMotion {
  LorentzVector velocity;
};

/// z^0 = sinh(g s)/g, z^axis = cosh(g s)/g, other components zero.
struct HyperbolicMotion {
  double acceleration = 1.0;
  int axis = 1;
  int dim = 5;
};

enum class WorldlineKind { uniform, hyperbolic };

std::string_view to_string(WorldlineKind kind);

struct Kinematics {
  LorentzVector z;  // position
  LorentzVector v;  // proper velocity, v.v = -1
  LorentzVector a;  // proper acceleration
};

/// Immutable trajectory value. Construct through the named factories, which
/// enforce the on-shell normalization.
class Worldline {
 public:
  /// b must satisfy b.b = -1 within 1e-10 and b^0 > 0.
  static Worldline uniform(const LorentzVector& velocity);
  /// b = gamma (1, beta) for a spatial velocity |beta| < 1.
  static Worldline uniform_from_beta(std::span<const double> beta);
  /// b = (cosh xi, ..., sinh xi along axis, ...).
  static Worldline uniform_from_rapidity(const Dimension& dim, double rapidity, int axis);
  static Worldline hyperbolic(const Dimension& dim, double acceleration, int axis);

  WorldlineKind kind() const;
  int dim() const;

  /// Constant velocity b for uniform motion, nullptr otherwise.
  const LorentzVector* uniform_velocity() const;
  const HyperbolicMotion* hyperbolic_motion() const;

  Kinematics eval(double s) const;

  /// Taylor coefficients z_k, z(s + d) = sum_k z_k d^k, k = 0..order.
  std::vector<LorentzVector> taylor(double s, int order) const;

  /// lambda(s) = -(x - z(s))^2, evaluated without the cancellation between
  /// exponentially large z^0 and z^axis on the hyperbolic kind.
  double interval(const LorentzVector& x, double s) const;

  /// z(s) - z(s - delta), free of cancellation for small delta.
  LorentzVector chord(double s, double delta) const;

  /// The same trajectory seen from a boosted frame (uniform kind only).
  Worldline boosted(double rapidity, int axis) const;

 private:
  explicit Worldline(std::variant<UniformMotion, HyperbolicMotion> m) : motion_(std::move(m)) {}
  std::variant<UniformMotion, HyperbolicMotion> motion_;
};

struct SeparationVector {
  LorentzVector R;
  double s = 0.0;
};

SeparationVector separation(const Worldline& w, const LorentzVector& x, double s);

enum class RootMethod {
  automatic,  // closed form where one exists (uniform), root finding otherwise
  numeric     // always bracket + safeguarded Newton
};

/// Retarded proper time: R(s)^2 = 0 with R^0 >= 0 (R = 0 on the worldline itself).
double retarded_root(const Worldline& w, const LorentzVector& x, const Dimension& dim,
                     RootMethod method = RootMethod::automatic);

/// Retarded-branch solution of -R(s)^2 = lambda (lambda >= 0), s <= s_ret.
double invert_lambda(const Worldline& w, const LorentzVector& x, double lambda,
                     const Dimension& dim, RootMethod method = RootMethod::automatic);

/// Covariant gradient ds/dx^mu = R_mu / (R.v) of s(x; lambda) at fixed lambda.
/// Throws DegenerateError when |R.v| < 1e-10 * (1 + |R|).
LorentzVector ds_dx(const Worldline& w, const LorentzVector& x, double lambda, const Dimension& dim);

/// Sign in front of lambda under the radical of the uniform-motion inversion
/// s = -(b.x) - sqrt((b.x)^2 + x^2 +/- lambda).
enum class RadicalSign { plus, minus };

std::string_view to_string(RadicalSign sign);

/// Candidate uniform-motion inversion with the chosen radical sign.
double uniform_inversion_candidate(const LorentzVector& b, const LorentzVector& x, double lambda,
                                   RadicalSign sign);

/// r^2 = (b.x)^2 + x^2, the invariant squared rest-frame distance for uniform motion.
double uniform_r2(const LorentzVector& b, const LorentzVector& x);

/// Retarded-branch quantities expanded in d = lambda - lambda0 to the given order.
struct BranchJets {
  Jet s;
  std::vector<Jet> R;  // contravariant components
  std::vector<Jet> v;
  std::vector<Jet> a;
  /// Invariants from closed forms of z.z, z.v, z.a, accurate for large lambda.
  Jet rv;  // R.v
  Jet vv;  // v.v = -1
  Jet ra;  // R.a
};

BranchJets branch_jets(const Worldline& w, const LorentzVector& x, double lambda0, int order,
                       const Dimension& dim);

/// Minkowski product of two jet vectors.
Jet dot(const std::vector<Jet>& u, const std::vector<Jet>& v);

}  // namespace oddfield
