#include "oddfield/oracle.hpp"

#include <cmath>
#include <limits>

#include "oddfield/errors.hpp"

namespace oddfield {

double bisect_root(const ScalarFn& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw ContractError("bisect_root: tol must be > 0");
  if (!(lo < hi)) throw ContractError("bisect_root: need lo < hi");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NoRootError("bisect_root: no sign change on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double shifted_endpoint(const Worldline& w, const LorentzVector& x, double a) {
  if (!(a > 0.0)) throw ContractError("shifted_endpoint: a must be > 0");
  const Dimension dim(w.dim());
  const double s_ret = retarded_root(w, x, dim);
  auto f = [&](double s) {
    const LorentzVector R = x - w.eval(s).z;
    return -square(R) + a;
  };
  // March forward until -R^2 + a changes sign. Between the retarded and
  // advanced roots -R^2 < 0, so the first sign change is the wanted one.
  const double scale = 1.0 + std::abs(x[0] - w.eval(s_ret).z[0]);
  double step = 1e-3 * scale;
  double lo = s_ret;
  double hi = s_ret + step;
  for (int k = 0; k < 200; ++k) {
    const double fh = f(hi);
    if (!std::isfinite(fh)) break;
    if (fh < 0.0) {
      const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi));
      return bisect_root(f, lo, hi, tol);
    }
    lo = hi;
    step *= 1.5;
    hi = lo + step;
  }
  throw NoRootError("shifted_endpoint: -R^2 + a keeps its sign past the retarded time (a too large)");
}

STruncation default_truncation(const Worldline& w, const LorentzVector& x, const Dimension& dim) {
  const double s_ret = retarded_root(w, x, dim);
  const Kinematics k = w.eval(s_ret);
  const double rv = dot(x - k.z, k.v);
  return {rv * rv * std::pow(10.0, 12.0 / dim.n())};
}

OracleResult direct_s_integral(const LorentzVector& x, const Worldline& w, const Dimension& dim, double a,
                               const STruncation& cut) {
  if (!(a > 0.0)) throw ContractError("direct_s_integral: a must be > 0");
  if (!(cut.lambda_cut > a)) throw ContractError("direct_s_integral: truncation must lie below the endpoint");
  const double s_top = shifted_endpoint(w, x, a);
  const double s_low = invert_lambda(w, x, cut.lambda_cut, dim);
  const double tau_max = std::sqrt(s_top - s_low);
  const LorentzVector R_top = x - w.eval(s_top).z;
  // Chord form near the endpoint, direct interval once the chord dominates R_top.
  const double near = 1.0 + R_top.max_abs();
  OracleResult out{LorentzVector(dim.d()), 0.0, "direct_s_integral"};
  for (int mu = 0; mu < dim.d(); ++mu) {
    // -R(s)^2 + a with R(s) = R_top + c, c the chord; the root residual
    // -R_top^2 + a is dropped, which shifts a by roundoff only.
    auto integrand = [&](double tau) {
      const double delta = tau * tau;
      const LorentzVector c = w.chord(s_top, delta);
      const double cc = c.max_abs();
      const double q = cc <= near ? -2.0 * dot(R_top, c) - square(c) : w.interval(x, s_top - delta) + a;
      if (!(q > 0.0)) return 0.0;
      return 2.0 * tau * w.eval(s_top - delta).v[mu] / std::sqrt(q);
    };
    const QuadResult r = integrate_gk(integrand, 0.0, tau_max, 1e-14);
    if (!std::isfinite(r.value)) throw QuadratureError("direct_s_integral: non-finite integral");
    out.value[mu] = r.value;
    // The Gauss/Kronrod gap overstates the error of the Kronrod value; scale it down to roundoff of the L1 norm.
    out.est_error = std::max(out.est_error, std::min(r.error, 1e3 * std::numeric_limits<double>::epsilon() * r.l1));
  }
  return out;
}

double fp_sinh_antiderivative(int n) {
  if (n < 1) throw ContractError("fp_sinh_antiderivative: n must be >= 1");
  // P(1) = sum_k C(n-1, k) (-1)^{n-1-k} / (2k + 1)
  double p1 = 0.0;
  for (int k = 0; k <= n - 1; ++k) {
    const double sign = ((n - 1 - k) % 2 == 0) ? 1.0 : -1.0;
    p1 += sign * binomial(n - 1, k) / (2 * k + 1);
  }
  return -p1;
}

double beta_half_moment(double m, double r2) {
  if (!(m > 0.5)) throw ContractError("beta_half_moment: m must exceed 1/2");
  if (!(r2 > 0.0)) throw ContractError("beta_half_moment: r2 must be > 0");
  return std::beta(0.5, m - 0.5) * std::pow(r2, 0.5 - m);
}

}  // namespace oddfield
