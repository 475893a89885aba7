#include "oddfield/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "oddfield/errors.hpp"

namespace oddfield {

namespace {

void check_length(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw ContractError("vector length " + std::to_string(dim) + " outside [1, " +
                        std::to_string(kMaxDim) + "]");
  }
}

}  // namespace

Dimension::Dimension(int d) : Dimension(d, d >= 3 ? unit_sphere_area(d - 2) : 1.0) {}

Dimension::Dimension(int d, double omega) : d_(d), omega_(omega) {
  if (d < 5 || d % 2 == 0) throw ContractError("dimension must be odd and ≥ 5");
  if (d > kMaxDim) {
    throw ContractError("dimension " + std::to_string(d) + " exceeds the supported maximum " +
                        std::to_string(kMaxDim));
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ContractError("solid-angle normalization must be positive and finite");
  }
}

LorentzVector::LorentzVector(int dim) : dim_(dim) { check_length(dim); }

LorentzVector::LorentzVector(std::initializer_list<double> components)
    : dim_(static_cast<int>(components.size())) {
  check_length(dim_);
  std::copy(components.begin(), components.end(), c_.begin());
}

LorentzVector::LorentzVector(std::span<const double> components)
    : dim_(static_cast<int>(components.size())) {
  check_length(dim_);
  std::copy(components.begin(), components.end(), c_.begin());
}

LorentzVector LorentzVector::basis(int dim, int mu) {
  LorentzVector e(dim);
  if (mu < 0 || mu >= dim) throw ContractError("basis index out of range");
  e[mu] = 1.0;
  return e;
}

LorentzVector LorentzVector::lowered() const {
  LorentzVector r = *this;
  r.c_[0] = -r.c_[0];
  return r;
}

double LorentzVector::max_abs() const {
  double m = 0.0;
  for (int mu = 0; mu < dim_; ++mu) m = std::max(m, std::abs((*this)[mu]));
  return m;
}

bool LorentzVector::is_finite() const {
  for (int mu = 0; mu < dim_; ++mu) {
    if (!std::isfinite((*this)[mu])) return false;
  }
  return true;
}

LorentzVector& LorentzVector::operator+=(const LorentzVector& o) {
  if (o.dim_ != dim_) throw ContractError("dimension mismatch in vector addition");
  for (int mu = 0; mu < dim_; ++mu) (*this)[mu] += o[mu];
  return *this;
}

LorentzVector& LorentzVector::operator-=(const LorentzVector& o) {
  if (o.dim_ != dim_) throw ContractError("dimension mismatch in vector subtraction");
  for (int mu = 0; mu < dim_; ++mu) (*this)[mu] -= o[mu];
  return *this;
}

LorentzVector& LorentzVector::operator*=(double k) {
  for (int mu = 0; mu < dim_; ++mu) (*this)[mu] *= k;
  return *this;
}

LorentzVector& LorentzVector::operator/=(double k) {
  for (int mu = 0; mu < dim_; ++mu) (*this)[mu] /= k;
  return *this;
}

bool operator==(const LorentzVector& a, const LorentzVector& b) {
  if (a.dim_ != b.dim_) return false;
  return std::equal(a.c_.begin(), a.c_.begin() + a.dim_, b.c_.begin());
}

double dot(const LorentzVector& u, const LorentzVector& v) {
  if (u.dim() != v.dim()) {
    throw ContractError("dot: dimension mismatch (" + std::to_string(u.dim()) + " vs " +
                        std::to_string(v.dim()) + ")");
  }
  double s = -u[0] * v[0];
  for (int mu = 1; mu < u.dim(); ++mu) s += u[mu] * v[mu];
  return s;
}

double dot(const LorentzVector& u, const LorentzVector& v, const Dimension& dim) {
  require_dim(u, dim, "dot");
  require_dim(v, dim, "dot");
  return dot(u, v);
}

void require_dim(const LorentzVector& x, const Dimension& dim, const char* what) {
  if (x.dim() != dim.d()) {
    throw ContractError(std::string(what) + ": vector has " + std::to_string(x.dim()) +
                        " components, expected D = " + std::to_string(dim.d()));
  }
}

const char* to_string(Causal c) {
  switch (c) {
    case Causal::timelike:
      return "timelike";
    case Causal::null:
      return "null";
    case Causal::spacelike:
      return "spacelike";
  }
  return "?";
}

Causal classify(const LorentzVector& x, double tol) {
  if (!(tol >= 0.0)) throw ContractError("classify: tolerance must be non-negative");
  const double x2 = square(x);
  if (x2 < -tol) return Causal::timelike;
  if (std::abs(x2) <= tol) return Causal::null;
  return Causal::spacelike;
}

LorentzVector boost(const LorentzVector& x, double rapidity, int axis) {
  if (axis < 1 || axis >= x.dim()) {
    throw ContractError("boost: axis " + std::to_string(axis) + " outside [1, " +
                        std::to_string(x.dim() - 1) + "]");
  }
  const double ch = std::cosh(rapidity);
  const double sh = std::sinh(rapidity);
  LorentzVector r = x;
  r[0] = ch * x[0] + sh * x[axis];
  r[axis] = sh * x[0] + ch * x[axis];
  return r;
}

double unit_sphere_area(int k) {
  if (k < 1) throw ContractError("unit_sphere_area: k must be >= 1");
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

}  // namespace oddfield
