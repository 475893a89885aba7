#include "oddfield/worldline.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oddfield/errors.hpp"

namespace oddfield {

namespace {

constexpr int kMaxBracketSteps = 200;
constexpr int kMaxNewtonSteps = 200;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double spatial_norm(const LorentzVector& u) {
  double s = 0.0;
  for (int i = 1; i < u.dim(); ++i) s += u[i] * u[i];
  return std::sqrt(s);
}

// R^0 - |R|: positive strictly inside the past light cone of x, strictly
// decreasing in s along any timelike worldline.
struct ConeFunction {
  const Worldline& w;
  const LorentzVector& x;

  double value(double s) const {
    const LorentzVector R = x - w.eval(s).z;
    return R[0] - spatial_norm(R);
  }
  double slope(double s) const {
    const Kinematics k = w.eval(s);
    const LorentzVector R = x - k.z;
    const double rn = spatial_norm(R);
    double rv = 0.0;
    for (int i = 1; i < R.dim(); ++i) rv += R[i] * k.v[i];
    return -k.v[0] + (rn > 0.0 ? rv / rn : 0.0);
  }
};

// Newton iteration kept inside [lo, hi], where f(lo) and f(hi) have opposite signs.
template <class F, class DF>
double safeguarded_newton(const F& f, const DF& df, double lo, double hi, bool increasing) {
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxNewtonSteps; ++it) {
    const double fs = f(s);
    if (fs == 0.0) return s;
    if ((fs > 0.0) == increasing) {
      hi = s;
    } else {
      lo = s;
    }
    const double d = df(s);
    double next = (d != 0.0 && std::isfinite(d)) ? s - fs / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 4.0 * kEps * std::max(1.0, std::abs(s)) ||
        hi - lo <= 4.0 * kEps * std::max(1.0, std::abs(s))) {
      return next;
    }
    s = next;
  }
  return s;
}

double retarded_root_numeric(const Worldline& w, const LorentzVector& x) {
  const ConeFunction cone{w, x};
  double step = 1.0;
  double lo = x[0];
  double hi = x[0];
  auto finite_or_throw = [](double v) {
    if (!std::isfinite(v)) throw NoRootError("retarded root: worldline evaluation overflowed while bracketing");
    return v;
  };
  if (finite_or_throw(cone.value(x[0])) > 0.0) {
    int k = 0;
    for (hi = lo + step; finite_or_throw(cone.value(hi)) > 0.0; hi = lo + step) {
      lo = hi;
      step *= 2.0;
      if (++k > kMaxBracketSteps) throw NoRootError("retarded root: no bracket found marching forward");
    }
  } else {
    int k = 0;
    for (lo = hi - step; finite_or_throw(cone.value(lo)) <= 0.0; lo = hi - step) {
      hi = lo;
      step *= 2.0;
      if (++k > kMaxBracketSteps) {
        throw NoRootError("retarded root: observation point is not in the causal future of the worldline");
      }
    }
  }
  return safeguarded_newton([&](double s) { return cone.value(s); },
                            [&](double s) { return cone.slope(s); }, lo, hi, false);
}

void check_retarded(const Worldline& w, const LorentzVector& x, double s) {
  const LorentzVector R = separation(w, x, s).R;
  const double scale = std::max(1.0, R.max_abs() * R.max_abs());
  // R = 0 (observer on the worldline) is a valid root; quantities built on it degenerate later.
  if (R[0] < -1e-12 * (1.0 + x.max_abs())) throw NoRootError("retarded root: root lies on the advanced cone");
  if (std::abs(square(R)) > 1e-10 * scale) {
    throw NoRootError("retarded root: residual R^2 = " + std::to_string(square(R)) + " above tolerance");
  }
}

double invert_lambda_numeric(const Worldline& w, const LorentzVector& x, double lambda, double s_ret) {
  if (lambda == 0.0) return s_ret;
  auto h = [&](double s) { return w.interval(x, s) - lambda; };
  auto dh = [&](double s) {
    const Kinematics k = w.eval(s);
    return 2.0 * dot(x - k.z, k.v);
  };
  const double slope = std::abs(dh(s_ret));
  double step = slope > 0.0 ? lambda / slope : 1.0;
  if (!(step > 0.0) || !std::isfinite(step)) step = 1.0;
  double hi = s_ret;
  double lo = s_ret - step;
  int k = 0;
  while (true) {
    if (++k > kMaxBracketSteps) throw NoRootError("invert_lambda: no solution on the retarded branch");
    const double v = h(lo);
    if (!std::isfinite(v)) {
      // Overshot into overflow; pull the trial point back toward the bracket.
      step = 0.5 * (step + (s_ret - hi));
      lo = s_ret - step;
      continue;
    }
    if (v >= 0.0) break;
    hi = lo;
    step *= 2.0;
    lo = s_ret - step;
  }
  return safeguarded_newton(h, dh, lo, hi, false);
}

}  // namespace

std::string_view to_string(WorldlineKind kind) {
  return kind == WorldlineKind::uniform ? "uniform" : "hyperbolic";
}

std::string_view to_string(RadicalSign sign) { return sign == RadicalSign::plus ? "plus" : "minus"; }

Worldline Worldline::uniform(const LorentzVector& velocity) {
  if (!velocity.is_finite()) throw ContractError("uniform worldline: velocity is not finite");
  if (std::abs(square(velocity) + 1.0) > 1e-10) {
    throw ContractError("uniform worldline: velocity must satisfy b.b = -1 (got " +
                        std::to_string(square(velocity)) + ")");
  }
  if (!(velocity[0] > 0.0)) throw ContractError("uniform worldline: velocity must be future pointing");
  return Worldline(UniformMotion{velocity});
}

Worldline Worldline::uniform_from_beta(std::span<const double> beta) {
  double b2 = 0.0;
  for (double c : beta) b2 += c * c;
  if (!(b2 < 1.0)) throw ContractError("uniform worldline: |beta| must be < 1");
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  LorentzVector b(static_cast<int>(beta.size()) + 1);
  b[0] = gamma;
  for (std::size_t i = 0; i < beta.size(); ++i) b[static_cast<int>(i) + 1] = gamma * beta[i];
  // Renormalize away rounding so the on-shell check is tight.
  b /= std::sqrt(-square(b));
  return uniform(b);
}

Worldline Worldline::uniform_from_rapidity(const Dimension& dim, double rapidity, int axis) {
  return uniform(boost(LorentzVector::basis(dim.d(), 0), rapidity, axis));
}

Worldline Worldline::hyperbolic(const Dimension& dim, double acceleration, int axis) {
  if (!(acceleration > 0.0) || !std::isfinite(acceleration)) {
    throw ContractError("hyperbolic worldline: acceleration must be positive");
  }
  if (axis < 1 || axis >= dim.d()) throw ContractError("hyperbolic worldline: axis out of range");
  return Worldline(HyperbolicMotion{acceleration, axis, dim.d()});
}

WorldlineKind Worldline::kind() const {
  return std::holds_alternative<UniformMotion>(motion_) ? WorldlineKind::uniform : WorldlineKind::hyperbolic;
}

int Worldline::dim() const {
  if (const auto* u = std::get_if<UniformMotion>(&motion_)) return u->velocity.dim();
  return std::get<HyperbolicMotion>(motion_).dim;
}

const LorentzVector* Worldline::uniform_velocity() const {
  const auto* u = std::get_if<UniformMotion>(&motion_);
  return u ? &u->velocity : nullptr;
}

const HyperbolicMotion* Worldline::hyperbolic_motion() const { return std::get_if<HyperbolicMotion>(&motion_); }

std::vector<LorentzVector> Worldline::taylor(double s, int order) const {
  if (!std::isfinite(s)) throw ContractError("worldline: proper time must be finite");
  std::vector<LorentzVector> z(static_cast<std::size_t>(order) + 1, LorentzVector(dim()));
  if (const auto* u = std::get_if<UniformMotion>(&motion_)) {
    z[0] = u->velocity * s;
    if (order >= 1) z[1] = u->velocity;
    return z;
  }
  const auto& h = std::get<HyperbolicMotion>(motion_);
  const double g = h.acceleration;
  const double sh = std::sinh(g * s);
  const double ch = std::cosh(g * s);
  double coef = 1.0 / g;  // g^{k-1} / k!
  for (int k = 0; k <= order; ++k) {
    const bool even = k % 2 == 0;
    z[static_cast<std::size_t>(k)][0] = coef * (even ? sh : ch);
    z[static_cast<std::size_t>(k)][h.axis] = coef * (even ? ch : sh);
    coef *= g / (k + 1);
  }
  return z;
}

Kinematics Worldline::eval(double s) const {
  const auto z = taylor(s, 2);
  return {z[0], z[1], z[2] * 2.0};
}

double Worldline::interval(const LorentzVector& x, double s) const {
  if (const auto* u = uniform_velocity()) return -square(x - *u * s);
  const auto& h = std::get<HyperbolicMotion>(motion_);
  const double g = h.acceleration;
  // Light-cone components: z^0 - z^axis = -e^{-gs}/g, z^0 + z^axis = e^{gs}/g.
  const double minus = x[0] - x[h.axis] + std::exp(-g * s) / g;
  const double plus = x[0] + x[h.axis] - std::exp(g * s) / g;
  double perp = 0.0;
  for (int i = 1; i < x.dim(); ++i) {
    if (i != h.axis) perp += x[i] * x[i];
  }
  return minus * plus - perp;
}

LorentzVector Worldline::chord(double s, double delta) const {
  if (const auto* u = uniform_velocity()) return *u * delta;
  const auto& h = std::get<HyperbolicMotion>(motion_);
  const double g = h.acceleration;
  const double mid = g * (s - 0.5 * delta);
  const double sh = 2.0 * std::sinh(0.5 * g * delta) / g;
  LorentzVector c(h.dim);
  c[0] = std::cosh(mid) * sh;
  c[h.axis] = std::sinh(mid) * sh;
  return c;
}

Worldline Worldline::boosted(double rapidity, int axis) const {
  if (const auto* u = uniform_velocity()) return uniform(boost(*u, rapidity, axis));
  throw ContractError("only uniform worldlines can be boosted");
}

SeparationVector separation(const Worldline& w, const LorentzVector& x, double s) {
  return {x - w.eval(s).z, s};
}

double uniform_r2(const LorentzVector& b, const LorentzVector& x) {
  const double bx = dot(b, x);
  return bx * bx + square(x);
}

double uniform_inversion_candidate(const LorentzVector& b, const LorentzVector& x, double lambda,
                                   RadicalSign sign) {
  const double bx = dot(b, x);
  const double radicand = bx * bx + square(x) + (sign == RadicalSign::plus ? lambda : -lambda);
  if (radicand < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return -bx - std::sqrt(radicand);
}

double retarded_root(const Worldline& w, const LorentzVector& x, const Dimension& dim, RootMethod method) {
  require_dim(x, dim, "retarded_root");
  if (w.dim() != dim.d()) throw ContractError("retarded_root: worldline dimension mismatch");
  if (!x.is_finite()) throw ContractError("retarded_root: observation point is not finite");
  double s = 0.0;
  if (const auto* b = w.uniform_velocity(); b && method == RootMethod::automatic) {
    s = -dot(*b, x) - std::sqrt(std::max(0.0, uniform_r2(*b, x)));
  } else {
    s = retarded_root_numeric(w, x);
  }
  check_retarded(w, x, s);
  return s;
}

double invert_lambda(const Worldline& w, const LorentzVector& x, double lambda, const Dimension& dim,
                     RootMethod method) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ContractError("invert_lambda: lambda must be >= 0");
  if (const auto* b = w.uniform_velocity(); b && method == RootMethod::automatic) {
    require_dim(x, dim, "invert_lambda");
    if (uniform_r2(*b, x) <= 0.0) throw DegenerateError("invert_lambda: observation point lies on the worldline");
    return uniform_inversion_candidate(*b, x, lambda, RadicalSign::plus);
  }
  const double s_ret = retarded_root(w, x, dim, method);
  const double s = invert_lambda_numeric(w, x, lambda, s_ret);
  const LorentzVector R = separation(w, x, s).R;
  if (std::abs(w.interval(x, s) - lambda) > 1e-10 * std::max(1.0, lambda) * std::max(1.0, R.max_abs())) {
    throw NoRootError("invert_lambda: root did not converge on the retarded branch");
  }
  return s;
}

LorentzVector ds_dx(const Worldline& w, const LorentzVector& x, double lambda, const Dimension& dim) {
  const double s = invert_lambda(w, x, lambda, dim);
  const Kinematics k = w.eval(s);
  const LorentzVector R = x - k.z;
  const double rv = dot(R, k.v);
  if (std::abs(rv) < 1e-10 * (1.0 + R.max_abs())) {
    throw DegenerateError("ds_dx: |R.v| below threshold (near-lightcone degeneracy)");
  }
  return R.lowered() / rv;
}

Jet dot(const std::vector<Jet>& u, const std::vector<Jet>& v) {
  if (u.size() != v.size() || u.empty()) throw ContractError("jet dot: dimension mismatch");
  Jet r = u[0] * v[0] * -1.0;
  for (std::size_t mu = 1; mu < u.size(); ++mu) r += u[mu] * v[mu];
  return r;
}

BranchJets branch_jets(const Worldline& w, const LorentzVector& x, double lambda0, int order,
                       const Dimension& dim) {
  if (order < 0) throw ContractError("branch_jets: order must be >= 0");
  const double s0 = invert_lambda(w, x, lambda0, dim);
  const auto z = w.taylor(s0, order + 2);
  const int d = dim.d();
  std::vector<Jet> zj(static_cast<std::size_t>(d), Jet(order));
  std::vector<Jet> v(static_cast<std::size_t>(d), Jet(order));
  std::vector<Jet> a(static_cast<std::size_t>(d), Jet(order));
  std::vector<Jet> xj;
  for (int mu = 0; mu < d; ++mu) {
    auto m = static_cast<std::size_t>(mu);
    xj.emplace_back(order, x[mu]);
    for (int k = 0; k <= order; ++k) {
      auto kk = static_cast<std::size_t>(k);
      zj[m][k] = z[kk][mu];
      v[m][k] = (k + 1) * z[kk + 1][mu];
      a[m][k] = (k + 1) * (k + 2) * z[kk + 2][mu];
    }
  }
  // z.z, z.v and z.a in closed form. Forming them from components loses all
  // precision once z grows exponentially along the hyperbolic branch.
  Jet zz(order);
  Jet zv(order);
  Jet za(order);
  if (w.uniform_velocity() != nullptr) {
    const Jet sj = Jet::variable(order, s0);
    zz = -(sj * sj);
    zv = -sj;
  } else {
    const double g = w.hyperbolic_motion()->acceleration;
    zz = Jet(order, 1.0 / (g * g));
    za = Jet(order, 1.0);
  }
  const Jet xz = dot(xj, zj);
  const Jet lambda_of_s = -(Jet(order, square(x)) - 2.0 * xz + zz);
  if (std::abs(lambda_of_s[1]) < 1e-10 * (1.0 + std::abs(x[0] - z[0][0]))) {
    throw DegenerateError("branch_jets: |R.v| below threshold (near-lightcone degeneracy)");
  }
  const Jet ds = revert(lambda_of_s);
  const Jet rv_s = dot(xj, v) - zv;
  const Jet ra_s = dot(xj, a) - za;

  BranchJets out;
  out.s = ds + s0;
  out.R.reserve(zj.size());
  out.v.reserve(zj.size());
  out.a.reserve(zj.size());
  for (std::size_t m = 0; m < zj.size(); ++m) {
    out.R.push_back(compose(xj[m] - zj[m], ds));
    out.v.push_back(compose(v[m], ds));
    out.a.push_back(compose(a[m], ds));
  }
  out.rv = compose(rv_s, ds);
  out.vv = Jet(order, -1.0);
  out.ra = compose(ra_s, ds);
  return out;
}

}  // namespace oddfield
