#pragma once

// Minkowski geometry in odd spacetime dimension D = 2n + 3.
//
// Signature is mostly plus, (-,+,...,+). It is the only choice under which a
// unit timelike velocity satisfies b.b = -1 and the retarded support sits at
// x.x < 0. Index 0 is time; units are geometrized (c = 1).

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace oddfield {

/// Largest supported spacetime dimension (n = 5).
inline constexpr int kMaxDim = 13;

/// Odd spacetime dimension D >= 5 together with n = (D - 3) / 2 and the
/// solid-angle normalization Omega_D of the retarded Green function.
class Dimension {
 public:
  /// Omega_D defaults to the area of the unit (D-2)-sphere.
  explicit Dimension(int d);
  Dimension(int d, double omega);

  int d() const { return d_; }
  int n() const { return (d_ - 3) / 2; }
  double omega() const { return omega_; }

  /// Same D with a different Omega_D.
  Dimension with_omega(double omega) const { return Dimension(d_, omega); }

  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  int d_;
  double omega_;
};

/// Contravariant D-vector stored inline (no heap).
class LorentzVector {
 public:
  LorentzVector() = default;
  /// Zero vector of the given length.
  explicit LorentzVector(int dim);
  LorentzVector(std::initializer_list<double> components);
  explicit LorentzVector(std::span<const double> components);

  static LorentzVector zero(const Dimension& dim) { return LorentzVector(dim.d()); }
  static LorentzVector basis(int dim, int mu);

  int dim() const { return dim_; }
  double operator[](int mu) const { return c_[static_cast<std::size_t>(mu)]; }
  double& operator[](int mu) { return c_[static_cast<std::size_t>(mu)]; }
  std::span<const double> components() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  /// Index lowered (or raised): flips the sign of the time component.
  LorentzVector lowered() const;
  LorentzVector raised() const { return lowered(); }

  /// Largest absolute component.
  double max_abs() const;
  bool is_finite() const;

  LorentzVector& operator+=(const LorentzVector& o);
  LorentzVector& operator-=(const LorentzVector& o);
  LorentzVector& operator*=(double k);
  LorentzVector& operator/=(double k);

  friend LorentzVector operator+(LorentzVector a, const LorentzVector& b) { return a += b; }
  friend LorentzVector operator-(LorentzVector a, const LorentzVector& b) { return a -= b; }
  friend LorentzVector operator*(LorentzVector a, double k) { return a *= k; }
  friend LorentzVector operator*(double k, LorentzVector a) { return a *= k; }
  friend LorentzVector operator/(LorentzVector a, double k) { return a /= k; }
  friend LorentzVector operator-(LorentzVector a) { return a *= -1.0; }
  friend bool operator==(const LorentzVector& a, const LorentzVector& b);

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

/// Metric sign eta_{mu mu}.
inline double metric(int mu) { return mu == 0 ? -1.0 : 1.0; }

/// -u0 v0 + sum_i ui vi. Throws ContractError on length mismatch.
double dot(const LorentzVector& u, const LorentzVector& v);
/// As above, and both lengths must equal dim.d().
double dot(const LorentzVector& u, const LorentzVector& v, const Dimension& dim);
inline double square(const LorentzVector& u) { return dot(u, u); }

/// Throws ContractError unless x has length dim.d().
void require_dim(const LorentzVector& x, const Dimension& dim, const char* what);

enum class Causal { timelike, null, spacelike };

const char* to_string(Causal c);

/// timelike if x.x < -tol, null if |x.x| <= tol, spacelike otherwise.
Causal classify(const LorentzVector& x, double tol);

/// Hyperbolic rotation mixing time and the given spatial axis (1 <= axis < D).
LorentzVector boost(const LorentzVector& x, double rapidity, int axis);

/// Area of the unit k-sphere, 2 pi^{(k+1)/2} / Gamma((k+1)/2).
double unit_sphere_area(int k);

}  // namespace oddfield
