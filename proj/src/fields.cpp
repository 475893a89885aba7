#include "oddfield/fields.hpp"

#include <cmath>

#include "oddfield/errors.hpp"

namespace oddfield {

FieldTensor::FieldTensor(int dim) : dim_(dim) {
  if (dim < 2 || dim > kMaxDim) throw ContractError("FieldTensor: dimension out of range");
}

std::size_t FieldTensor::slot(int mu, int nu) const {
  // mu < nu: rows 0..mu-1 hold (dim-1) + (dim-2) + ... entries.
  const int before = mu * dim_ - mu * (mu + 1) / 2;
  return static_cast<std::size_t>(before + (nu - mu - 1));
}

double FieldTensor::operator()(int mu, int nu) const {
  if (mu < 0 || nu < 0 || mu >= dim_ || nu >= dim_) throw ContractError("FieldTensor: index out of range");
  if (mu == nu) return 0.0;
  return mu < nu ? upper_[slot(mu, nu)] : -upper_[slot(nu, mu)];
}

void FieldTensor::set(int mu, int nu, double value) {
  if (mu < 0 || nu < 0 || mu >= dim_ || nu >= dim_) throw ContractError("FieldTensor: index out of range");
  if (mu == nu) throw ContractError("FieldTensor: diagonal is identically zero");
  if (mu < nu) {
    upper_[slot(mu, nu)] = value;
  } else {
    upper_[slot(nu, mu)] = -value;
  }
}

std::vector<double> FieldTensor::independent() const {
  return {upper_.begin(), upper_.begin() + independent_count(dim_)};
}

double FieldTensor::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < independent_count(dim_); ++i) m = std::max(m, std::abs(upper_[static_cast<std::size_t>(i)]));
  return m;
}

FieldTensor& FieldTensor::operator-=(const FieldTensor& o) {
  if (o.dim_ != dim_) throw ContractError("FieldTensor: dimension mismatch");
  for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] -= o.upper_[i];
  return *this;
}

std::string_view to_string(FieldPrefactor p) { return p == FieldPrefactor::two_n ? "2nC" : "2C"; }

double prefactor_multiplier(FieldPrefactor p, int n) { return p == FieldPrefactor::two_n ? 2.0 * n : 2.0; }

FieldTensor field_uniform(const LorentzVector& x, const LorentzVector& b, const Dimension& dim, double charge,
                          FieldPrefactor prefactor) {
  require_dim(x, dim, "field_uniform: x");
  require_dim(b, dim, "field_uniform: b");
  if (std::abs(square(b) + 1.0) > 1e-10) throw ContractError("field_uniform: b must satisfy b.b = -1");
  const double r2 = uniform_r2(b, x);
  if (!(r2 > 0.0)) throw DegenerateError("field_uniform: r^2 <= 0 (observation point on the worldline)");
  const int n = dim.n();
  const double k = prefactor_multiplier(prefactor, n) * coefficient_C(dim).value * charge / std::pow(r2, n + 1);
  FieldTensor F(dim.d());
  for (int mu = 0; mu < dim.d(); ++mu) {
    for (int nu = mu + 1; nu < dim.d(); ++nu) F.set(mu, nu, k * (b[mu] * x[nu] - b[nu] * x[mu]));
  }
  return F;
}

FieldTensor boost(const FieldTensor& F, double rapidity, int axis) {
  const int d = F.dim();
  // Transform the first index column by column, then the second row by row.
  std::vector<LorentzVector> cols;
  for (int beta = 0; beta < d; ++beta) {
    LorentzVector c(d);
    for (int alpha = 0; alpha < d; ++alpha) c[alpha] = F(alpha, beta);
    cols.push_back(boost(c, rapidity, axis));
  }
  FieldTensor out(d);
  for (int mu = 0; mu < d; ++mu) {
    LorentzVector row(d);
    for (int beta = 0; beta < d; ++beta) row[beta] = cols[static_cast<std::size_t>(beta)][mu];
    const LorentzVector t = boost(row, rapidity, axis);
    for (int nu = mu + 1; nu < d; ++nu) out.set(mu, nu, t[nu]);
  }
  return out;
}

namespace {

void check_potential(const LorentzVector& A, const Dimension& dim) {
  if (A.dim() != dim.d() || !A.is_finite()) throw NumericalError("potential evaluator returned an invalid vector");
}

// d_mu A^nu for all mu, nu by the 4th-order central stencil.
std::vector<LorentzVector> gradient4(const LorentzVector& x, const PotentialFn& A, const Dimension& dim, double h) {
  if (!(h > 0.0)) throw ContractError("stencil step must be > 0");
  std::vector<LorentzVector> grad;
  for (int mu = 0; mu < dim.d(); ++mu) {
    const LorentzVector e = LorentzVector::basis(dim.d(), mu) * h;
    const LorentzVector p1 = A(x + e);
    const LorentzVector m1 = A(x - e);
    const LorentzVector p2 = A(x + 2.0 * e);
    const LorentzVector m2 = A(x - 2.0 * e);
    for (const auto* v : {&p1, &m1, &p2, &m2}) check_potential(*v, dim);
    grad.push_back((8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h));
  }
  return grad;
}

FieldTensor curl(const std::vector<LorentzVector>& grad, const Dimension& dim) {
  FieldTensor F(dim.d());
  for (int mu = 0; mu < dim.d(); ++mu) {
    for (int nu = mu + 1; nu < dim.d(); ++nu) {
      const double d_mu_nu = metric(mu) * grad[static_cast<std::size_t>(mu)][nu];
      const double d_nu_mu = metric(nu) * grad[static_cast<std::size_t>(nu)][mu];
      F.set(mu, nu, d_mu_nu - d_nu_mu);
    }
  }
  return F;
}

}  // namespace

FieldTensor field_numeric(const LorentzVector& x, const PotentialFn& A, const Dimension& dim, double h,
                          bool richardson) {
  require_dim(x, dim, "field_numeric: x");
  FieldTensor F = curl(gradient4(x, A, dim, h), dim);
  if (!richardson) return F;
  const FieldTensor half = curl(gradient4(x, A, dim, 0.5 * h), dim);
  FieldTensor out(dim.d());
  for (int mu = 0; mu < dim.d(); ++mu) {
    for (int nu = mu + 1; nu < dim.d(); ++nu) out.set(mu, nu, (16.0 * half(mu, nu) - F(mu, nu)) / 15.0);
  }
  return out;
}

Residuals residuals(const LorentzVector& x, const PotentialFn& A, const Dimension& dim, double h) {
  require_dim(x, dim, "residuals: x");
  const std::vector<LorentzVector> grad = gradient4(x, A, dim, h);
  Residuals r{0.0, LorentzVector(dim.d())};
  for (int mu = 0; mu < dim.d(); ++mu) r.lorenz += grad[static_cast<std::size_t>(mu)][mu];

  const LorentzVector centre = A(x);
  check_potential(centre, dim);
  for (int nu = 0; nu < dim.d(); ++nu) {
    const LorentzVector e = LorentzVector::basis(dim.d(), nu) * h;
    const LorentzVector p = A(x + e);
    const LorentzVector m = A(x - e);
    check_potential(p, dim);
    check_potential(m, dim);
    r.wave += metric(nu) * ((p - centre) + (m - centre)) / (h * h);
  }
  return r;
}

double default_field_step(const LorentzVector& x, bool closed_form) {
  return closed_form ? 1e-4 : 1e-3 * (1.0 + x.max_abs());
}

PrefactorArbitration arbitrate_field_prefactor(const Dimension& dim) {
  const int d = dim.d();
  const LorentzVector b = LorentzVector::basis(d, 0);
  LorentzVector x(d);
  x[0] = 0.3;
  x[1] = 1.1;
  x[2] = 0.4;
  auto A = [&](const LorentzVector& y) { return potential_uniform(y, b, dim, 1.0).A; };
  const FieldTensor F = field_numeric(x, A, dim, 1e-3, true);
  const double r2 = uniform_r2(b, x);
  const double unit = coefficient_C(dim).value * (b[0] * x[1] - b[1] * x[0]) / std::pow(r2, dim.n() + 1);
  PrefactorArbitration a;
  a.n = dim.n();
  a.measured = F(0, 1) / unit;
  a.deviation_two_n = std::abs(a.measured - 2.0 * a.n) / (2.0 * a.n);
  a.deviation_two = std::abs(a.measured - 2.0) / 2.0;
  a.confirmed = a.deviation_two_n <= a.deviation_two ? FieldPrefactor::two_n : FieldPrefactor::two;
  return a;
}

}  // namespace oddfield
