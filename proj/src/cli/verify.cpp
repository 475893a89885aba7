#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <json.hpp>

#include "oddfield/cli.hpp"
#include "oddfield/fields.hpp"
#include "oddfield/gauge.hpp"
#include "oddfield/oracle.hpp"
#include "oddfield/potentials.hpp"

namespace oddfield::cli {

using nlohmann::ordered_json;

namespace {

struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

class Report {
 public:
  // pass when measured <= tolerance
  void at_most(const std::string& suite, const std::string& name, double measured, double tolerance,
               std::string note = {}) {
    checks_.push_back({suite, name, measured, tolerance, std::isfinite(measured) && measured <= tolerance,
                       std::move(note)});
  }
  // pass when measured >= bound
  void at_least(const std::string& suite, const std::string& name, double measured, double bound,
                std::string note = {}) {
    checks_.push_back({suite, name, measured, bound, std::isfinite(measured) && measured >= bound, std::move(note)});
  }
  void guarded(const std::string& suite, const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      checks_.push_back({suite, name, std::nan(""), 0.0, false, e.what()});
    }
  }
  void skip(const std::string& suite, const std::string& name, const std::string& why) {
    skipped_.push_back({{"suite", suite}, {"name", name}, {"reason", why}});
  }
  const std::vector<Check>& checks() const { return checks_; }
  const ordered_json& skipped() const { return skipped_; }
  ordered_json extra = ordered_json::object();

 private:
  std::vector<Check> checks_;
  ordered_json skipped_ = ordered_json::array();
};

constexpr int kMaxAshiftOrder = 3;

LorentzVector sample_uniform_point(std::mt19937_64& rng, const LorentzVector& b, int d) {
  std::uniform_real_distribution<double> t(-1.0, 3.0);
  std::uniform_real_distribution<double> s(-2.0, 2.0);
  while (true) {
    LorentzVector x(d);
    x[0] = t(rng);
    for (int i = 1; i < std::min(d, 4); ++i) x[i] = s(rng);
    const double r2 = uniform_r2(b, x);
    if (r2 >= 0.5 && r2 <= 10.0) return x;
  }
}

// Hyperbolic sample with (v^2 - R.a) = -g^2 x.z bounded away from zero.
LorentzVector sample_hyperbolic_point(std::mt19937_64& rng, const Worldline& w, const Dimension& dim) {
  std::uniform_real_distribution<double> t(0.5, 2.5);
  std::uniform_real_distribution<double> s(-1.0, 1.5);
  while (true) {
    LorentzVector x(dim.d());
    x[0] = t(rng);
    x[1] = s(rng);
    x[2] = 0.5 * s(rng);
    if (x[0] + x[1] < 0.3) continue;
    try {
      const double sr = retarded_root(w, x, dim);
      const Kinematics k = w.eval(sr);
      if (std::abs(dot(x, k.z)) < 0.2 || std::abs(dot(x - k.z, k.v)) < 0.2) continue;
      return x;
    } catch (const NumericalError&) {
    }
  }
}

double rel(const LorentzVector& a, const LorentzVector& b) {
  return (a - b).max_abs() / std::max(b.max_abs(), 1e-300);
}

void suite_geometry(Report& r, const Dimension& dim) {
  const std::string S = "geometry";
  const int d = dim.d();
  double sig = 0.0;
  for (int mu = 0; mu < d; ++mu) {
    const LorentzVector e = LorentzVector::basis(d, mu);
    sig = std::max(sig, std::abs(dot(e, e) - metric(mu)));
  }
  r.at_most(S, "signature_exact", sig, 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> xi(-3.0, 3.0);
  double worst = 0.0;
  int flips = 0;
  for (int i = 0; i < 50; ++i) {
    LorentzVector x(d), y(d);
    for (int mu = 0; mu < d; ++mu) {
      x[mu] = u(rng);
      y[mu] = u(rng);
    }
    const double k = xi(rng);
    const int axis = 1 + i % (d - 1);
    const double before = dot(x, y);
    const double after = dot(boost(x, k, axis), boost(y, k, axis));
    worst = std::max(worst, std::abs(after - before) / (1.0 + std::abs(before)));
    if (std::abs(square(x)) > 1e-9 && classify(x, 1e-10) != classify(boost(x, k, axis), 1e-10)) ++flips;
  }
  r.at_most(S, "boost_preserves_dot", worst, 1e-12);
  r.at_most(S, "classify_boost_invariant", flips, 0.0);
  r.at_most(S, "unit_sphere_area_k2", std::abs(unit_sphere_area(2) - 4.0 * std::numbers::pi), 1e-13);
}

void suite_worldline(Report& r, const Dimension& dim) {
  const std::string S = "worldline";
  const int d = dim.d();
  std::mt19937_64 rng(23);
  const Worldline uni = Worldline::uniform_from_rapidity(dim, 0.6, 1);
  const Worldline hyp = Worldline::hyperbolic(dim, 1.0, 1);

  r.guarded(S, "retarded_closed_vs_numeric", [&] {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const LorentzVector x = sample_uniform_point(rng, *uni.uniform_velocity(), d);
      const double a = retarded_root(uni, x, dim);
      const double b = retarded_root(uni, x, dim, RootMethod::numeric);
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    r.at_most(S, "retarded_closed_vs_numeric", worst, 1e-12);
  });

  r.guarded(S, "hyperbolic_retarded_vs_bisection", [&] {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const LorentzVector x = sample_hyperbolic_point(rng, hyp, dim);
      const double s = retarded_root(hyp, x, dim);
      auto cone = [&](double q) {
        const LorentzVector R = x - hyp.eval(q).z;
        double sp = 0.0;
        for (int k = 1; k < d; ++k) sp += R[k] * R[k];
        return R[0] - std::sqrt(sp);
      };
      const double o = bisect_root(cone, s - 10.0, x[0], 1e-14);
      worst = std::max(worst, std::abs(s - o));
    }
    r.at_most(S, "hyperbolic_retarded_vs_bisection", worst, 1e-10);
  });

  r.guarded(S, "lambda_radical_sign", [&] {
    double plus = 0.0;
    double minus = 0.0;
    const LorentzVector& b = *uni.uniform_velocity();
    for (int i = 0; i < 10; ++i) {
      const LorentzVector x = sample_uniform_point(rng, b, d);
      for (double lam : {0.25, 1.0, 4.0, 9.0}) {
        const double sp = uniform_inversion_candidate(b, x, lam, RadicalSign::plus);
        const double sm = uniform_inversion_candidate(b, x, lam, RadicalSign::minus);
        plus = std::max(plus, std::abs(-square(x - b * sp) - lam) / lam);
        const double dm = std::isnan(sm) ? 1.0 : std::abs(-square(x - b * sm) - lam) / lam;
        minus = std::max(minus, dm);
      }
    }
    r.at_most(S, "lambda_inversion_plus_roundtrip", plus, 1e-10, "radical sign +lambda confirmed");
    r.at_least(S, "lambda_inversion_minus_fails", minus, 1e-3);
    r.extra["radical_sign"] = plus <= 1e-10 && minus > 1e-3 ? "plus" : "undetermined";
  });

  r.guarded(S, "hyperbolic_roundtrip_and_ordering", [&] {
    double worst = 0.0;
    bool ordered = true;
    for (int i = 0; i < 5; ++i) {
      const LorentzVector x = sample_hyperbolic_point(rng, hyp, dim);
      double prev = retarded_root(hyp, x, dim);
      for (double lam : {0.1, 0.5, 2.0, 8.0, 32.0}) {
        const double s = invert_lambda(hyp, x, lam, dim);
        worst = std::max(worst, std::abs(hyp.interval(x, s) - lam) / lam);
        ordered = ordered && s < prev;
        prev = s;
      }
    }
    r.at_most(S, "hyperbolic_lambda_roundtrip", worst, 1e-10);
    r.at_most(S, "branch_ordering_violations", ordered ? 0.0 : 1.0, 0.0);
  });

  r.guarded(S, "ds_dx_vs_finite_difference", [&] {
    double worst = 0.0;
    for (const Worldline* w : {&uni, &hyp}) {
      for (int i = 0; i < 3; ++i) {
        const LorentzVector x = w == &uni ? sample_uniform_point(rng, *uni.uniform_velocity(), d)
                                          : sample_hyperbolic_point(rng, hyp, dim);
        const double lam = 0.7;
        const LorentzVector g = ds_dx(*w, x, lam, dim);
        for (int mu = 0; mu < d; ++mu) {
          auto f = [&](double q) {
            LorentzVector y = x;
            y[mu] = q;
            return invert_lambda(*w, y, lam, dim);
          };
          const Estimate fd = nth_derivative(f, x[mu], 1, 1e-2);
          worst = std::max(worst, std::abs(fd.value - g[mu]) / std::max(1.0, std::abs(g[mu])));
        }
      }
    }
    r.at_most(S, "ds_dx_vs_finite_difference", worst, 1e-6);
  });
}

void suite_greens(Report& r, const Dimension& dim) {
  const std::string S = "greens";
  r.guarded(S, "fp_sinh_integral", [&] {
    double worst = 0.0;
    double tail = 0.0;
    for (int n = 1; n <= std::max(2, dim.n()); ++n) {
      worst = std::max(worst, std::abs(fp_sinh_integral(n).value - fp_sinh_antiderivative(n)));
      tail = std::max(tail, std::abs(fp_sinh_integral(n, -15.0).value - fp_sinh_integral(n, -40.0).value));
    }
    r.at_most(S, "fp_sinh_vs_antiderivative", worst, 1e-10);
    r.at_most(S, "fp_sinh_theta_min_independence", tail, 1e-10);
  });
  r.guarded(S, "coefficient_C", [&] {
    double fact = 1.0;
    for (int i = 2; i < dim.n(); ++i) fact *= i;
    const double closed = fact / (2.0 * dim.omega());
    r.at_most(S, "C_vs_closed_form", std::abs(coefficient_C(dim).value - closed) / closed, 1e-12);
    r.at_least(S, "C_positive", coefficient_C(dim).value, 0.0);
  });
  r.guarded(S, "fp_integral_beta", [&] {
    double worst = 0.0;
    for (int n = 1; n <= 2; ++n) {
      QuadratureSpec q;
      q.pole_order = n;
      const Estimate fp = fp_integral([](double l) { return 1.0 / std::sqrt(1.0 + l); }, n, q);
      const double exact = static_cast<double>(double_factorial(2 * n - 1)) / std::ldexp(1.0, n) *
                           beta_half_moment(n + 0.5, 1.0);
      worst = std::max(worst, std::abs(fp.value - exact) / exact);
    }
    r.at_most(S, "fp_integral_vs_beta_function", worst, 1e-8);
  });
}

void suite_potentials_covariance(Report& r, const Dimension& dim, const QuadratureSpec& spec) {
  const std::string S = "potentials";
  const int d = dim.d();
  r.guarded(S, "generic_covariance", [&] {
    const Worldline rest = Worldline::uniform_from_rapidity(dim, 0.0, 1);
    LorentzVector x(d);
    x[0] = 1.3;
    x[1] = 0.9;
    x[2] = -0.5;
    const double xi = 1.2;
    const LorentzVector moved = potential_generic(boost(x, xi, 1), rest.boosted(xi, 1), dim, 1.0, spec).A;
    const LorentzVector expect = boost(potential_generic(x, rest, dim, 1.0, spec).A, xi, 1);
    r.at_most(S, "generic_covariance", rel(moved, expect), 1e-5);
  });
}

void suite_potentials(Report& r, const Dimension& dim) {
  const std::string S = "potentials";
  const int d = dim.d();
  const QuadratureSpec spec = QuadratureSpec::for_dimension(dim);
  const Worldline uni = Worldline::uniform_from_rapidity(dim, 0.6, 2);
  const LorentzVector& b = *uni.uniform_velocity();
  std::mt19937_64 rng(37);
  r.guarded(S, "generic_vs_uniform", [&] {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      const LorentzVector x = sample_uniform_point(rng, b, d);
      worst = std::max(worst, rel(potential_generic(x, uni, dim, 1.0, spec).A, potential_uniform(x, b, dim, 1.0).A));
    }
    r.at_most(S, "generic_vs_uniform", worst, 1e-6);
  });
  if (dim.n() > kMaxAshiftOrder) {
    for (const char* name : {"ashift_vs_uniform", "hyperbolic_generic_vs_ashift"}) {
      r.skip(S, name, "a-shift oracle is ill-conditioned in double precision for n > 3");
    }
    return suite_potentials_covariance(r, dim, spec);
  }
  r.guarded(S, "ashift_vs_uniform", [&] {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      const LorentzVector x = sample_uniform_point(rng, b, d);
      const auto steps = default_a_steps(x, uni, dim);
      worst = std::max(worst, rel(potential_ashift_oracle(x, uni, dim, 1.0, steps).A,
                                  potential_uniform(x, b, dim, 1.0).A));
    }
    r.at_most(S, "ashift_vs_uniform", worst, 1e-4);
  });
  r.guarded(S, "hyperbolic_generic_vs_ashift", [&] {
    const Worldline hyp = Worldline::hyperbolic(dim, 1.0, 1);
    const LorentzVector x = sample_hyperbolic_point(rng, hyp, dim);
    const PotentialSample g = potential_generic(x, hyp, dim, 1.0, spec);
    const PotentialSample o = potential_ashift_oracle(x, hyp, dim, 1.0, default_a_steps(x, hyp, dim));
    r.at_most(S, "hyperbolic_generic_vs_ashift", rel(g.A, o.A), 1e-4);
  });
  suite_potentials_covariance(r, dim, spec);
}

void suite_fields(Report& r, const Dimension& dim) {
  const std::string S = "fields";
  const int d = dim.d();
  const Worldline uni = Worldline::uniform_from_rapidity(dim, 0.6, 1);
  const LorentzVector& b = *uni.uniform_velocity();
  auto A = [&](const LorentzVector& y) { return potential_uniform(y, b, dim, 1.0).A; };
  std::mt19937_64 rng(41);
  r.guarded(S, "numeric_vs_closed", [&] {
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
      const LorentzVector x = sample_uniform_point(rng, b, d);
      const FieldTensor Fu = field_uniform(x, b, dim, 1.0);
      worst = std::max(worst, (field_numeric(x, A, dim, 1e-3) - Fu).max_abs() / Fu.max_abs());
    }
    r.at_most(S, "field_numeric_vs_closed", worst, 1e-6);
  });
  r.guarded(S, "prefactor", [&] {
    const PrefactorArbitration pa = arbitrate_field_prefactor(dim);
    r.at_most(S, "field_prefactor_2nC", pa.deviation_two_n, 1e-6, "K = 2n C");
    r.extra["field_prefactor"] = {{"confirmed", to_string(pa.confirmed)}, {"measured_K_over_C", pa.measured}};
  });
  r.guarded(S, "residuals", [&] {
    LorentzVector x(d);
    x[0] = 2.0;
    x[1] = -0.5;
    x[2] = 0.8;
    const Residuals a = residuals(x, A, dim, 4e-2);
    const Residuals c = residuals(x, A, dim, 2e-2);
    const Residuals e = residuals(x, A, dim, 1e-2);
    r.at_most(S, "lorenz_residual", std::abs(residuals(x, A, dim, 1e-3).lorenz), 1e-6);
    const double order = 0.5 * (std::log2(a.wave.max_abs() / c.wave.max_abs()) +
                                 std::log2(c.wave.max_abs() / e.wave.max_abs()));
    r.at_most(S, "wave_order_minus_2", std::abs(order - 2.0), 0.3);
  });
  r.guarded(S, "covariance", [&] {
    double worst = 0.0;
    double boosted_static = 0.0;
    const LorentzVector rest = LorentzVector::basis(d, 0);
    for (int i = 0; i < 5; ++i) {
      const LorentzVector x = sample_uniform_point(rng, b, d);
      const double xi = 0.3 * (i + 1);
      const FieldTensor lhs = field_uniform(boost(x, xi, 2), boost(b, xi, 2), dim, 1.0);
      const FieldTensor rhs = boost(field_uniform(x, b, dim, 1.0), xi, 2);
      worst = std::max(worst, (lhs - rhs).max_abs() / rhs.max_abs());
      const FieldTensor moving = field_uniform(boost(x, xi, 1), boost(rest, xi, 1), dim, 1.0);
      const FieldTensor from_static = boost(field_uniform(x, rest, dim, 1.0), xi, 1);
      boosted_static = std::max(boosted_static, (moving - from_static).max_abs() / moving.max_abs());
    }
    r.at_most(S, "tensor_covariance", worst, 1e-10);
    r.at_most(S, "boosted_static_equals_moving", boosted_static, 1e-5);
  });
  r.guarded(S, "nonzero", [&] {
    double mx = 0.0;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        LorentzVector x(d);
        x[0] = 2.0;
        x[1] = -1.0 + 0.5 * i;
        x[2] = -1.0 + 0.5 * j + 0.1;
        mx = std::max(mx, field_uniform(x, b, dim, 1.0).max_abs());
      }
    }
    r.at_least(S, "max_field_nonzero", mx, 1e-12);
  });
}

void suite_gauge(Report& r, const Dimension& dim) {
  const std::string S = "gauge";
  const int d = dim.d();
  const QuadratureSpec spec = QuadratureSpec::for_dimension(dim);
  const Worldline uni = Worldline::uniform_from_rapidity(dim, 0.5, 1);
  const Worldline hyp = Worldline::hyperbolic(dim, 1.0, 1);
  std::mt19937_64 rng(53);
  r.guarded(S, "identity_sign", [&] {
    int exclusive_failures = 0;
    int plus_wins = 0;
    int minus_wins = 0;
    double worst_winner = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Worldline& w = i % 2 == 0 ? uni : hyp;
      const LorentzVector x =
          i % 2 == 0 ? sample_uniform_point(rng, *uni.uniform_velocity(), d) : sample_hyperbolic_point(rng, hyp, dim);
      const double lam = 0.2 * (i + 1);
      const double scale = identity_scale(x, w, lam, dim);
      const double rp = identity_residual(x, w, lam, dim, IdentitySign::plus) / scale;
      const double rm = identity_residual(x, w, lam, dim, IdentitySign::minus) / scale;
      if ((rp <= 1e-6) == (rm <= 1e-6)) ++exclusive_failures;
      if (rp <= 1e-6) ++plus_wins;
      if (rm <= 1e-6) ++minus_wins;
      worst_winner = std::max(worst_winner, std::min(rp, rm));
    }
    r.at_most(S, "identity_exactly_one_sign", exclusive_failures, 0.0);
    r.at_most(S, "identity_winner_constant", plus_wins > 0 && minus_wins > 0 ? 1.0 : 0.0, 0.0);
    r.at_most(S, "identity_winner_residual", worst_winner, 1e-6);
    r.extra["chosen_sign"] = plus_wins > minus_wins ? "plus" : "minus";
  });
  r.guarded(S, "gap", [&] {
    double min_gap = std::numeric_limits<double>::infinity();
    double worst_consistency = 0.0;
    ordered_json gaps = ordered_json::array();
    for (int i = 0; i < 3; ++i) {
      const LorentzVector x = sample_uniform_point(rng, *uni.uniform_velocity(), d);
      const GaugeReport g = gauge_gap(x, uni, dim, 1.0, spec);
      min_gap = std::min(min_gap, g.gap_rel);
      worst_consistency = std::max(worst_consistency, g.consistency);
      gaps.push_back({{"x", std::vector<double>(x.components().begin(), x.components().end())},
                      {"gap_rel", g.gap_rel},
                      {"consistency", g.consistency},
                      {"chosen_sign", to_string(g.chosen_sign)}});
    }
    r.at_least(S, "gap_rel_min", min_gap, 0.1);
    r.at_most(S, "gap_consistency", worst_consistency, 1e-3);
    r.extra["gap_samples"] = gaps;
  });
  r.guarded(S, "pure_gauge_control", [&] {
    LorentzVector x(d);
    x[0] = 1.7;
    x[1] = 0.6;
    x[2] = 0.9;
    const double h = default_field_step(x, false);
    auto Afn = [&](const LorentzVector& y) { return potential_generic(y, uni, dim, 1.0, spec).A; };
    auto Gfn = [&](const LorentzVector& y) { return grad_chi_value(y, uni, dim, 1.0, spec, h); };
    const double fa = field_numeric(x, Afn, dim, h).max_abs();
    const double fc = field_numeric(x, Gfn, dim, h).max_abs();
    r.at_most(S, "control_field_vs_h2", fc, 1e2 * h * h * std::max(1.0, fa));
    r.at_least(S, "field_over_control", fa / std::max(fc, 1e-300), 1e3);
  });
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (std::find(std::begin(kSuites), std::end(kSuites), cfg.suite) == std::end(kSuites)) {
    throw ContractError("unknown suite '" + cfg.suite + "'");
  }
  const Dimension dim = make_dimension(cfg);
  Report r;
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "geometry") suite_geometry(r, dim);
  if (all || cfg.suite == "worldline") suite_worldline(r, dim);
  if (all || cfg.suite == "greens") suite_greens(r, dim);
  if (all || cfg.suite == "potentials") suite_potentials(r, dim);
  if (all || cfg.suite == "fields") suite_fields(r, dim);
  if (all || cfg.suite == "gauge") suite_gauge(r, dim);

  ordered_json j;
  j["suite"] = cfg.suite;
  j["D"] = dim.d();
  j["checks"] = ordered_json::array();
  int failed = 0;
  for (const Check& c : r.checks()) {
    ordered_json row{{"suite", c.suite}, {"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance},
                     {"pass", c.pass}};
    if (!c.note.empty()) row["note"] = c.note;
    j["checks"].push_back(row);
    if (!c.pass) {
      ++failed;
      err << "FAIL " << c.suite << "/" << c.name << ": measured " << format_real(c.measured) << " vs "
          << format_real(c.tolerance) << (c.note.empty() ? "" : " (" + c.note + ")") << '\n';
    }
  }
  for (auto& [k, v] : r.extra.items()) j[k] = v;
  if (!r.skipped().empty()) j["skipped"] = r.skipped();
  j["passed"] = static_cast<int>(r.checks().size()) - failed;
  j["failed"] = failed;
  j["all_pass"] = failed == 0;
  out << j.dump(2) << '\n';
  return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace oddfield::cli
