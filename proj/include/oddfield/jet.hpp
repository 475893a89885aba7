#pragma once

// Truncated Taylor series f(t0 + d) = sum_k c[k] d^k, k = 0..order.
// Used to push derivatives along the retarded branch through the change of
// variable s -> lambda without finite differences.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "oddfield/errors.hpp"

namespace oddfield {

class Jet {
 public:
  Jet() = default;
  explicit Jet(int order, double value = 0.0) : c_(static_cast<std::size_t>(order) + 1, 0.0) {
    c_[0] = value;
  }
  explicit Jet(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

  /// The variable itself around t0: t0 + d.
  static Jet variable(int order, double t0) {
    Jet j(order, t0);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  double value() const { return c_.front(); }

  /// k-th derivative at t0.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return (*this)[k] * f;
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(double a) {
    for (double& v : c_) v *= a;
    return *this;
  }
  Jet& operator+=(double a) {
    c_[0] += a;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double k) { return a *= k; }
  friend Jet operator*(double k, Jet a) { return a *= k; }
  friend Jet operator+(Jet a, double k) { return a += k; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
      r[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check(b);
    if (b[0] == 0.0) throw NumericalError("jet division by a series with zero constant term");
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) {
      double s = a[k];
      for (int i = 1; i <= k; ++i) s -= b[i] * r[k - i];
      r[k] = s / b[0];
    }
    return r;
  }

  /// log|f|, valid while f(t0) != 0.
  friend Jet log_abs(const Jet& f) {
    if (f[0] == 0.0) throw NumericalError("jet log of a series vanishing at the expansion point");
    // (log f)' = f'/f, integrated term by term.
    Jet r(f.order());
    r[0] = std::log(std::abs(f[0]));
    for (int k = 1; k <= f.order(); ++k) {
      double s = k * f[k];
      for (int i = 1; i < k; ++i) s -= i * r[i] * f[k - i];
      r[k] = s / (k * f[0]);
    }
    return r;
  }

  /// Evaluate the outer series (in d) at d = inner(t) - inner[0]: outer o (inner - inner0).
  friend Jet compose(const Jet& outer, const Jet& inner) {
    const int order = inner.order();
    Jet shift = inner;
    shift[0] = 0.0;
    Jet result(order);
    Jet power(order, 1.0);
    for (int k = 0; k <= std::min(order, outer.order()); ++k) {
      for (int i = 0; i <= order; ++i) result[i] += outer[k] * power[i];
      power = power * shift;
    }
    return result;
  }

  /// Series reversion: given y(d) with y[1] != 0, the series d(y - y0).
  friend Jet revert(const Jet& y) {
    const int order = y.order();
    if (order >= 1 && y[1] == 0.0) throw NumericalError("jet reversion with vanishing slope");
    Jet inv(order);
    if (order == 0) return inv;
    inv[1] = 1.0 / y[1];
    for (int m = 2; m <= order; ++m) {
      Jet shifted = y;
      shifted[0] = 0.0;
      Jet comp = compose(shifted, inv);
      inv[m] = -comp[m] / y[1];
    }
    return inv;
  }

 private:
  void check(const Jet& o) const {
    if (o.c_.size() != c_.size()) throw ContractError("jet order mismatch");
  }

  std::vector<double> c_;
};

}  // namespace oddfield
