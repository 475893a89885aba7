#include "oddfield/gauge.hpp"

#include <cmath>

#include "oddfield/errors.hpp"

namespace oddfield {

std::string_view to_string(IdentitySign s) { return s == IdentitySign::plus ? "plus" : "minus"; }

double chi_prefactor(const Dimension& dim, double charge) {
  const double sign = (dim.n() % 2 == 0) ? -1.0 : 1.0;
  return sign * charge / (2.0 * dim.omega());
}

namespace {

QuadratureSpec prepared(const QuadratureSpec& spec, const Dimension& dim) {
  QuadratureSpec q = spec;
  q.pole_order = dim.n();
  q.validate();
  return q;
}

double log_rv_at(const LorentzVector& x, const Worldline& w, double lambda, const Dimension& dim) {
  const double s = invert_lambda(w, x, lambda, dim);
  const Kinematics k = w.eval(s);
  return std::log(std::abs(dot(x - k.z, k.v)));
}

}  // namespace

Estimate chi(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
             const QuadratureSpec& spec) {
  require_dim(x, dim, "chi: x");
  const QuadratureSpec q = prepared(spec, dim);
  const int n = dim.n();
  (void)branch_jets(w, x, 0.0, n, dim);
  auto g_nth = [&](double lambda) {
    const BranchJets j = branch_jets(w, x, lambda, n, dim);
    return log_abs(j.rv).derivative(n);
  };
  const Estimate m = half_power_moment(g_nth, q);
  const double pref = chi_prefactor(dim, charge);
  return {pref * m.value, std::abs(pref) * m.error};
}

LorentzVector grad_chi_value(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                             const QuadratureSpec& spec, double h) {
  if (!(h > 0.0)) throw ContractError("grad_chi: step must be > 0");
  LorentzVector g(dim.d());
  for (int mu = 0; mu < dim.d(); ++mu) {
    const LorentzVector e = LorentzVector::basis(dim.d(), mu) * h;
    const double up = chi(x + e, w, dim, charge, spec).value;
    const double down = chi(x - e, w, dim, charge, spec).value;
    g[mu] = metric(mu) * (up - down) / (2.0 * h);
  }
  return g;
}

GradChi grad_chi(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                 const QuadratureSpec& spec, double h) {
  const LorentzVector fine = grad_chi_value(x, w, dim, charge, spec, h);
  const LorentzVector coarse = grad_chi_value(x, w, dim, charge, spec, 2.0 * h);
  return {fine, (fine - coarse).max_abs() / 3.0};
}

double identity_scale(const LorentzVector& x, const Worldline& w, double lambda, const Dimension& dim) {
  const double s = invert_lambda(w, x, lambda, dim);
  const Kinematics k = w.eval(s);
  return (k.v / dot(x - k.z, k.v)).max_abs();
}

double identity_residual(const LorentzVector& x, const Worldline& w, double lambda, const Dimension& dim,
                         IdentitySign sign) {
  require_dim(x, dim, "identity_residual: x");
  if (!(lambda >= 0.0)) throw ContractError("identity_residual: lambda must be >= 0");
  const double s = invert_lambda(w, x, lambda, dim);
  const Kinematics k = w.eval(s);
  const LorentzVector R = x - k.z;
  const double rv = dot(R, k.v);
  if (std::abs(rv) < 1e-10 * (1.0 + R.max_abs())) {
    throw DegenerateError("identity_residual: |R.v| below threshold (near-lightcone degeneracy)");
  }
  const LorentzVector lhs = k.v / rv;

  const double h = 1e-3 * std::abs(rv) / k.v.max_abs();
  LorentzVector t1(dim.d());
  for (int mu = 0; mu < dim.d(); ++mu) {
    const LorentzVector e = LorentzVector::basis(dim.d(), mu) * h;
    const double p1 = log_rv_at(x + e, w, lambda, dim);
    const double m1 = log_rv_at(x - e, w, lambda, dim);
    const double p2 = log_rv_at(x + 2.0 * e, w, lambda, dim);
    const double m2 = log_rv_at(x - 2.0 * e, w, lambda, dim);
    t1[mu] = metric(mu) * (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
  }
  const double coeff = (dot(k.v, k.v) - dot(R, k.a)) / rv;
  const LorentzVector t2 = coeff * ds_dx(w, x, lambda, dim).raised();
  return (lhs - t1 - sign_value(sign) * t2).max_abs();
}

PotentialSample integrated_correction(const LorentzVector& x, const Worldline& w, const Dimension& dim,
                                      double charge, const QuadratureSpec& spec, IdentitySign sign) {
  require_dim(x, dim, "integrated_correction: x");
  const QuadratureSpec q = prepared(spec, dim);
  const int n = dim.n();
  (void)branch_jets(w, x, 0.0, n, dim);
  const double pref = sign_value(sign) * chi_prefactor(dim, charge);
  PotentialSample out{x, LorentzVector(dim.d()), PotentialMethod::fp_quadrature, 0.0};
  double err2 = 0.0;
  for (int mu = 0; mu < dim.d(); ++mu) {
    auto g_nth = [&](double lambda) {
      const BranchJets j = branch_jets(w, x, lambda, n, dim);
      const Jet t2 = (j.vv - j.ra) * j.R[static_cast<std::size_t>(mu)] / (j.rv * j.rv);
      return t2.derivative(n);
    };
    const Estimate m = half_power_moment(g_nth, q);
    out.A[mu] = pref * m.value;
    err2 += std::pow(pref * m.error, 2);
  }
  out.est_error = std::sqrt(err2);
  return out;
}

double default_chi_step(const LorentzVector& x) { return 1e-3 * (1.0 + x.max_abs()); }

GaugeReport gauge_gap(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                      const QuadratureSpec& spec) {
  GaugeReport r;
  r.x = x;
  const PotentialSample A = potential_generic(x, w, dim, charge, spec);
  const GradChi G = grad_chi(x, w, dim, charge, spec, default_chi_step(x));
  r.A = A.A;
  r.grad_chi = G.value;
  r.gap = A.A - G.value;
  r.gap_rel = r.gap.max_abs() / std::max(A.A.max_abs(), 1e-300);

  const double s_ret = retarded_root(w, x, dim);
  const Kinematics k = w.eval(s_ret);
  const double rv = dot(x - k.z, k.v);
  r.lambda_ref = rv * rv;
  r.identity_residual_minus = identity_residual(x, w, r.lambda_ref, dim, IdentitySign::minus);
  r.identity_residual_plus = identity_residual(x, w, r.lambda_ref, dim, IdentitySign::plus);
  r.identity_scale = identity_scale(x, w, r.lambda_ref, dim);
  r.chosen_sign =
      r.identity_residual_plus <= r.identity_residual_minus ? IdentitySign::plus : IdentitySign::minus;

  const PotentialSample corr = integrated_correction(x, w, dim, charge, spec, r.chosen_sign);
  r.gap_integrated = corr.A;
  r.consistency = (r.gap - corr.A).max_abs() / std::max(corr.A.max_abs(), 1e-300);
  r.error_budget = A.est_error + G.error + corr.est_error;
  return r;
}

}  // namespace oddfield
