// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oddfield/errors.hpp"
#include "oddfield/fields.hpp"
#include "oddfield/gauge.hpp"
#include "oddfield/oracle.hpp"
#include "oddfield/potentials.hpp"
#include "support.hpp"

using namespace oddfield;
using oddfield::test::rel;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome finite_part_constant() {
  const double e1 = std::abs(fp_sinh_integral(1).value - fp_sinh_antiderivative(1));
  const double e2 = std::abs(fp_sinh_integral(2).value - fp_sinh_antiderivative(2));
  return {e1 <= 1e-10 && e2 <= 1e-9, fmt("|FP(1)+1| = %.2e, |FP(2)-oracle| = %.2e", e1, e2)};
}

Outcome closed_form_agreement() {
  double generic = 0.0;
  double ashift = 0.0;
  for (int d : {5, 7}) {
    const Dimension dim(d);
    const QuadratureSpec spec = QuadratureSpec::for_dimension(dim);
    std::mt19937_64 rng(100 + d);
    for (int i = 0; i < 20; ++i) {
      const Worldline w = Worldline::uniform_from_rapidity(dim, 0.1 * i, 1 + i % (d - 1));
      const LorentzVector& b = *w.uniform_velocity();
      const LorentzVector x = oddfield::test::uniform_sample(rng, b);
      const LorentzVector exact = potential_uniform(x, b, dim, 1.0).A;
      generic = std::max(generic, rel(potential_generic(x, w, dim, 1.0, spec).A, exact));
      if (i % 4 == 0) {
        const LorentzVector o = potential_ashift_oracle(x, w, dim, 1.0, default_a_steps(x, w, dim)).A;
        ashift = std::max(ashift, rel(o, exact));
      }
    }
  }
  return {generic <= 1e-6 && ashift <= 1e-4,
          fmt("max rel A_generic = %.2e (40 pts), A_ashift = %.2e (10 pts)", generic, ashift)};
}

Outcome nonzero_fields() {
  double fmax = std::numeric_limits<double>::infinity();
  double ratio = std::numeric_limits<double>::infinity();
  for (int d : {5, 7}) {
    const Dimension dim(d);
    const QuadratureSpec spec = QuadratureSpec::for_dimension(dim);
    const Worldline w = Worldline::uniform_from_rapidity(dim, 0.5, 1);
    const LorentzVector& b = *w.uniform_velocity();
    double grid_max = 0.0;
    double fa = 0.0;
    double fc = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const LorentzVector x = oddfield::test::point(d, 2.0, -1.0 + i, -0.7 + 0.7 * j);
        if (uniform_r2(b, x) < 0.1) continue;  // x on the b ray
        grid_max = std::max(grid_max, field_uniform(x, b, dim, 1.0).max_abs());
        if ((i + j) % 4 != 0) continue;
        const double h = default_field_step(x, false);
        auto Afn = [&](const LorentzVector& y) { return potential_generic(y, w, dim, 1.0, spec).A; };
        auto Gfn = [&](const LorentzVector& y) { return grad_chi_value(y, w, dim, 1.0, spec, h); };
        fa = std::max(fa, field_numeric(x, Afn, dim, h).max_abs());
        fc = std::max(fc, field_numeric(x, Gfn, dim, h).max_abs());
      }
    }
    fmax = std::min(fmax, grid_max);
    ratio = std::min(ratio, fa / std::max(fc, 1e-300));
  }
  return {fmax > 0.0 && ratio >= 1e3, fmt("min over D of max|F| = %.3e, |F[A]|/|F[grad chi]| >= %.3e", fmax, ratio)};
}

Outcome identity_sign() {
  const Dimension dim(5);
  const Worldline uni = Worldline::uniform_from_rapidity(dim, 0.8, 1);
  const Worldline hyp = Worldline::hyperbolic(dim, 1.0, 1);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lam_dist(-6.0, 2.0);
  int plus = 0;
  int minus = 0;
  int both_or_neither = 0;
  for (int i = 0; i < 30; ++i) {
    const bool use_hyp = i % 2 == 1;
    const Worldline& w = use_hyp ? hyp : uni;
    const LorentzVector x = use_hyp ? oddfield::test::hyperbolic_sample(rng, hyp, dim)
                                    : oddfield::test::uniform_sample(rng, *uni.uniform_velocity());
    const double lam = std::exp(lam_dist(rng));
    const double scale = identity_scale(x, w, lam, dim);
    const bool p = identity_residual(x, w, lam, dim, IdentitySign::plus) <= 1e-6 * scale;
    const bool m = identity_residual(x, w, lam, dim, IdentitySign::minus) <= 1e-6 * scale;
    if (p == m) ++both_or_neither;
    plus += p;
    minus += m;
  }
  const bool pass = both_or_neither == 0 && (plus == 30 || minus == 30);
  return {pass, std::string("winning sign: ") + (plus == 30 ? "plus" : minus == 30 ? "minus" : "none") +
                    fmt(" (plus %g/30, minus %g/30)", plus, minus)};
}

Outcome gap_consistency() {
  double consistency = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (int d : {5, 7}) {
    const Dimension dim(d);
    const QuadratureSpec spec = QuadratureSpec::for_dimension(dim);
    std::mt19937_64 rng(200 + d);
    for (int i = 0; i < 4; ++i) {
      const Worldline w = Worldline::uniform_from_rapidity(dim, 0.3 * i, 1);
      const LorentzVector x = oddfield::test::uniform_sample(rng, *w.uniform_velocity());
      const GaugeReport r = gauge_gap(x, w, dim, 1.0, spec);
      consistency = std::max(consistency, r.consistency);
      gap = std::min(gap, r.gap_rel);
    }
  }
  return {consistency <= 1e-3 && gap > 0.1, fmt("max consistency = %.2e, min gap_rel = %.3f", consistency, gap)};
}

Outcome covariance() {
  const Dimension dim(5);
  const QuadratureSpec spec = QuadratureSpec::for_dimension(dim);
  const LorentzVector rest = LorentzVector::basis(5, 0);
  std::mt19937_64 rng(31);
  double closed = 0.0;
  double quadrature = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double xi = 0.25 * (i + 1);
    const LorentzVector x0 = oddfield::test::uniform_sample(rng, rest);
    const LorentzVector x = boost(x0, xi, 1);
    const FieldTensor from_static = boost(field_uniform(x0, rest, dim, 1.0), xi, 1);
    const LorentzVector b = boost(rest, xi, 1);
    closed = std::max(closed, (field_uniform(x, b, dim, 1.0) - from_static).max_abs() / from_static.max_abs());
    if (i % 2 == 1) {
      const Worldline w = Worldline::uniform(b);
      auto Afn = [&](const LorentzVector& y) { return potential_generic(y, w, dim, 1.0, spec).A; };
      const FieldTensor direct = field_numeric(x, Afn, dim, default_field_step(x, false), true);
      quadrature = std::max(quadrature, (direct - from_static).max_abs() / from_static.max_abs());
    }
  }
  return {closed <= 1e-5 && quadrature <= 1e-5,
          fmt("rapidity <= 1.5: closed form %.2e, quadrature + numeric curl %.2e", closed, quadrature)};
}

Outcome pde_residuals() {
  const Dimension dim(5);
  double lorenz = 0.0;
  double worst_order = 0.0;
  std::mt19937_64 rng(47);
  for (int i = 0; i < 5; ++i) {
    const LorentzVector b = boost(LorentzVector::basis(5, 0), 0.3 * i, 1 + i % 4);
    const LorentzVector x = oddfield::test::uniform_sample(rng, b);
    auto A = [&](const LorentzVector& y) { return potential_uniform(y, b, dim, 1.0).A; };
    lorenz = std::max(lorenz, std::abs(residuals(x, A, dim, 1e-3).lorenz));
    const double w1 = residuals(x, A, dim, 2e-2).wave.max_abs();
    const double w2 = residuals(x, A, dim, 1e-2).wave.max_abs();
    const double w3 = residuals(x, A, dim, 5e-3).wave.max_abs();
    const double order = 0.5 * (std::log2(w1 / w2) + std::log2(w2 / w3));
    worst_order = std::max(worst_order, std::abs(order - 2.0));
  }
  return {lorenz <= 1e-6 && worst_order <= 0.3,
          fmt("max |lorenz| = %.2e, max |order - 2| = %.3f", lorenz, worst_order)};
}

Outcome prefactor() {
  std::string detail;
  bool pass = true;
  for (int d : {5, 7, 9}) {
    const PrefactorArbitration pa = arbitrate_field_prefactor(Dimension(d));
    pass = pass && pa.confirmed == FieldPrefactor::two_n && pa.deviation_two_n <= 1e-6;
    detail += fmt("D=%g K/C=%.6f ", d, pa.measured);
  }
  return {pass, detail + "-> K = 2nC"};
}

Outcome radical_sign() {
  const Dimension dim(5);
  std::mt19937_64 rng(61);
  double plus = 0.0;
  double minus = 0.0;
  double branch = 0.0;
  for (int i = 0; i < 30; ++i) {
    const Worldline w = Worldline::uniform_from_rapidity(dim, 0.05 * i, 1 + i % 4);
    const LorentzVector& b = *w.uniform_velocity();
    const LorentzVector x = oddfield::test::uniform_sample(rng, b);
    for (double lam : {1e-3, 0.5, 3.0, 40.0}) {
      const double sp = uniform_inversion_candidate(b, x, lam, RadicalSign::plus);
      const double sm = uniform_inversion_candidate(b, x, lam, RadicalSign::minus);
      plus = std::max(plus, std::abs(-square(x - b * sp) - lam) / lam);
      minus = std::max(minus, std::isfinite(sm) ? std::abs(-square(x - b * sm) - lam) / lam : 1.0);
      const double s = invert_lambda(w, x, lam, dim);
      branch = std::max(branch, std::abs(w.interval(x, s) - lam) / lam);
    }
  }
  return {plus <= 1e-10 && branch <= 1e-10 && minus > 1e-3,
          fmt("+lambda round trip %.2e (invert_lambda %.2e)", plus, branch) + fmt(", -lambda %.2e", minus)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 finite-part constant", finite_part_constant},
      {"2 closed-form/quadrature agreement", closed_form_agreement},
      {"3 nonzero fields vs pure-gauge control", nonzero_fields},
      {"4 decomposition identity sign", identity_sign},
      {"5 gap consistency", gap_consistency},
      {"6 covariance", covariance},
      {"7 Lorenz and wave residuals", pde_residuals},
      {"8 field prefactor", prefactor},
      {"9 radical sign of the inversion", radical_sign},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const Error& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
