#include "oddfield/potentials.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "oddfield/errors.hpp"
#include "oddfield/oracle.hpp"

namespace oddfield {

std::string_view to_string(PotentialMethod m) {
  switch (m) {
    case PotentialMethod::closed:
      return "closed";
    case PotentialMethod::fp_quadrature:
      return "fp_quadrature";
    case PotentialMethod::a_shift:
      return "a_shift";
  }
  return "?";
}

PotentialSample potential_uniform(const LorentzVector& x, const LorentzVector& b, const Dimension& dim,
                                  double charge) {
  require_dim(x, dim, "potential_uniform: x");
  require_dim(b, dim, "potential_uniform: b");
  if (std::abs(square(b) + 1.0) > 1e-10) throw ContractError("potential_uniform: b must satisfy b.b = -1");
  const double r2 = uniform_r2(b, x);
  if (!(r2 > 0.0)) throw DegenerateError("potential_uniform: r^2 <= 0 (observation point on the worldline)");
  const Estimate c = coefficient_C(dim);
  const double k = charge / std::pow(r2, dim.n());
  return {x, c.value * k * b, PotentialMethod::closed, std::abs(c.error * k) * b.max_abs()};
}

PotentialSample potential_generic(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                                  const QuadratureSpec& spec) {
  require_dim(x, dim, "potential_generic: x");
  if (w.dim() != dim.d()) throw ContractError("potential_generic: worldline dimension mismatch");
  QuadratureSpec q = spec;
  q.pole_order = dim.n();
  q.validate();
  const int n = dim.n();
  // Fails early with NoRootError / DegenerateError when x has no usable branch.
  (void)branch_jets(w, x, 0.0, n, dim);

  const double pref = kGenericSignAnchor * -charge / (2.0 * dim.omega());
  PotentialSample out{x, LorentzVector(dim.d()), PotentialMethod::fp_quadrature, 0.0};
  double err2 = 0.0;
  for (int mu = 0; mu < dim.d(); ++mu) {
    auto g_nth = [&](double lambda) {
      const BranchJets j = branch_jets(w, x, lambda, n, dim);
      const Jet g = j.v[static_cast<std::size_t>(mu)] / j.rv;
      return g.derivative(n);
    };
    const Estimate fp = fp_integral_from_derivative(g_nth, n, q);
    out.A[mu] = pref * fp.value;
    err2 += std::pow(pref * fp.error, 2);
  }
  out.est_error = std::sqrt(err2);
  return out;
}

std::vector<double> default_a_steps(const LorentzVector& x, const Worldline& w, const Dimension& dim) {
  const double s_ret = retarded_root(w, x, dim);
  const Kinematics k = w.eval(s_ret);
  const double rv = dot(x - k.z, k.v);
  std::vector<double> steps;
  double h = 0.2 * rv * rv / (dim.n() + 1);
  for (int i = 0; i < dim.n() + 4; ++i, h *= 0.5) steps.push_back(h);
  return steps;
}

namespace {

void check_steps(std::span<const double> a_steps, int n) {
  if (static_cast<int>(a_steps.size()) < n + 2) {
    throw ContractError("a-shift oracle: need at least n+2 a-steps");
  }
  for (std::size_t i = 0; i < a_steps.size(); ++i) {
    if (!(a_steps[i] > 0.0)) throw ContractError("a-shift oracle: a-steps must be positive");
    if (i > 0 && !(a_steps[i] < a_steps[i - 1])) throw ContractError("a-shift oracle: a-steps must decrease");
  }
}

// Neville extrapolation of values[i] taken at steps[i] to step 0.
Estimate extrapolate_to_zero(const std::vector<double>& steps, const std::vector<double>& values) {
  const std::size_t m = values.size();
  std::vector<double> p = values;
  double prev_diag = p[0];
  Estimate best{p[0], std::numeric_limits<double>::infinity()};
  for (std::size_t lvl = 1; lvl < m; ++lvl) {
    for (std::size_t i = m - 1; i >= lvl; --i) {
      const double hi = steps[i - lvl];
      const double hj = steps[i];
      p[i] = (hi * p[i] - hj * p[i - 1]) / (hi - hj);
      if (i == lvl) break;
    }
    const double err = std::abs(p[m - 1] - prev_diag);
    if (err < best.error) best = {p[m - 1], err};
    prev_diag = p[m - 1];
  }
  return best;
}

}  // namespace

namespace {

struct DerivativeTable {
  Estimate estimate;
  std::vector<double> steps;
  std::vector<double> quotients;

  [[noreturn]] void fail(double scale) const {
    std::ostringstream msg;
    msg << "a-shift oracle: extrapolation did not converge (error " << estimate.error << " vs scale " << scale
        << "); h/difference table:";
    for (std::size_t i = 0; i < steps.size(); ++i) msg << " [" << steps[i] << ", " << quotients[i] << "]";
    throw QuadratureError(msg.str());
  }
};

// Quotients approach the derivative like c h; once round-off takes over,
// successive differences stop shrinking or flip sign. Rows from there on are
// dropped before extrapolation.
std::size_t clean_rows(const std::vector<double>& q) {
  std::size_t keep = std::min<std::size_t>(q.size(), 3);
  for (std::size_t i = 3; i < q.size(); ++i) {
    const double prev = q[i - 2] - q[i - 1];
    const double next = q[i - 1] - q[i];
    if (prev == 0.0 || next == 0.0) break;
    if ((prev > 0.0) != (next > 0.0) || std::abs(prev / next) < 1.2) break;
    keep = i + 1;
  }
  return keep;
}

DerivativeTable derivative_table(const std::function<double(double)>& I, int n, std::span<const double> a_steps) {
  if (n < 1) throw ContractError("a-shift oracle: derivative order must be >= 1");
  check_steps(a_steps, n);
  DerivativeTable t;
  t.steps.assign(a_steps.begin(), a_steps.end());
  for (double h : t.steps) {
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
      sum += sign * binomial(n, j) * I((j + 1) * h);
    }
    t.quotients.push_back(sum / std::pow(h, n));
  }
  const std::size_t keep = clean_rows(t.quotients);
  t.steps.resize(keep);
  t.quotients.resize(keep);
  t.estimate = extrapolate_to_zero(t.steps, t.quotients);
  if (!std::isfinite(t.estimate.value)) throw QuadratureError("a-shift oracle: non-finite derivative");
  return t;
}

constexpr double kAshiftRelTol = 1e-3;

}  // namespace

Estimate ashift_derivative(const std::function<double(double)>& I, int n, std::span<const double> a_steps) {
  const DerivativeTable t = derivative_table(I, n, a_steps);
  const double scale = std::abs(t.estimate.value);
  if (t.estimate.error > kAshiftRelTol * scale) t.fail(scale);
  return t.estimate;
}

PotentialSample potential_ashift_oracle(const LorentzVector& x, const Worldline& w, const Dimension& dim,
                                        double charge, std::span<const double> a_steps) {
  require_dim(x, dim, "potential_ashift_oracle: x");
  const int n = dim.n();
  check_steps(a_steps, n);
  const STruncation cut = default_truncation(w, x, dim);

  // Every component shares the same sample set in a; integrate once per a.
  std::vector<double> as;
  for (double h : a_steps) {
    for (int j = 0; j <= n; ++j) as.push_back((j + 1) * h);
  }
  std::vector<OracleResult> samples;
  samples.reserve(as.size());
  for (double a : as) samples.push_back(direct_s_integral(x, w, dim, a, cut));
  auto lookup = [&](double a, int mu) {
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (as[i] == a) return samples[i].value[mu];
    }
    throw ContractError("a-shift oracle: sample lookup failed");
  };

  const double pref = charge / dim.omega();
  PotentialSample out{x, LorentzVector(dim.d()), PotentialMethod::a_shift, 0.0};
  double err2 = 0.0;
  std::vector<DerivativeTable> tables;
  for (int mu = 0; mu < dim.d(); ++mu) {
    tables.push_back(derivative_table([&](double a) { return lookup(a, mu); }, n, a_steps));
    out.A[mu] = pref * tables.back().estimate.value;
    err2 += std::pow(pref * tables.back().estimate.error, 2);
  }
  out.est_error = std::sqrt(err2);
  const double scale = out.A.max_abs() / std::abs(pref);
  for (const DerivativeTable& t : tables) {
    if (t.estimate.error > kAshiftRelTol * scale) t.fail(scale);
  }
  return out;
}

}  // namespace oddfield
