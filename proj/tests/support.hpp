#pragma once

#include <algorithm>
#include <random>

#include "oddfield/spacetime.hpp"
#include "oddfield/worldline.hpp"

namespace oddfield::test {

inline double rel(const LorentzVector& a, const LorentzVector& b) {
  return (a - b).max_abs() / std::max(b.max_abs(), 1e-300);
}

inline LorentzVector rest_velocity(int d) { return LorentzVector::basis(d, 0); }

/// x = (t, x1, x2, 0, ...).
inline LorentzVector point(int d, double t, double x1, double x2 = 0.0) {
  LorentzVector x(d);
  x[0] = t;
  x[1] = x1;
  x[2] = x2;
  return x;
}

/// Random point with 0.5 <= r^2 <= 10 for uniform velocity b.
inline LorentzVector uniform_sample(std::mt19937_64& rng, const LorentzVector& b) {
  std::uniform_real_distribution<double> t(-1.0, 3.0);
  std::uniform_real_distribution<double> s(-2.0, 2.0);
  while (true) {
    LorentzVector x(b.dim());
    x[0] = t(rng);
    for (int i = 1; i < std::min(b.dim(), 4); ++i) x[i] = s(rng);
    const double r2 = uniform_r2(b, x);
    if (r2 >= 0.5 && r2 <= 10.0) return x;
  }
}

/// Random point for the hyperbolic worldline away from x.z = 0 and R.v = 0.
inline LorentzVector hyperbolic_sample(std::mt19937_64& rng, const Worldline& w, const Dimension& dim) {
  std::uniform_real_distribution<double> t(0.5, 2.5);
  std::uniform_real_distribution<double> s(-1.0, 1.5);
  while (true) {
    const LorentzVector x = point(dim.d(), t(rng), s(rng), 0.5 * s(rng));
    if (x[0] + x[1] < 0.3) continue;
    const Kinematics k = w.eval(retarded_root(w, x, dim));
    if (std::abs(dot(x, k.z)) < 0.2 || std::abs(dot(x - k.z, k.v)) < 0.2) continue;
    return x;
  }
}

}  // namespace oddfield::test
