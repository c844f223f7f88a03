#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature with bisection, plus
// an exact change of variables for algebraically decaying tails. Integrands
// may be real or complex valued; the error estimate is the modulus of the
// Kronrod-Gauss difference, which bounds the real and imaginary parts
// separately.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "qstat/errors.hpp"

namespace qstat::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-13;
  int max_panels = 50000;
  int initial_panels = 1;
};

template <class T>
struct Result {
  T value{};
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the center.
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  const T value = kron * h;
  const double err = std::abs((kron - gauss) * h);
  return {a, b, value, err};
}

}  // namespace detail

/// Integral of `f` over the union of consecutive intervals [breaks[i], breaks[i+1]].
template <class F>
auto integrate(F&& f, std::span<const double> breaks, const Options& opt = {})
    -> Result<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (breaks.size() < 2) throw invalid_argument_error("integrate: need at least two breakpoints");

  std::priority_queue<detail::Panel<T>> heap;
  int evals = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b >= a)) throw invalid_argument_error("integrate: breakpoints must be nondecreasing");
    if (b == a) continue;
    const int n = std::max(1, opt.initial_panels);
    for (int j = 0; j < n; ++j) {
      const double lo = a + (b - a) * j / n;
      const double hi = (j + 1 == n) ? b : a + (b - a) * (j + 1) / n;
      heap.push(detail::gk15<T>(f, lo, hi));
      evals += 15;
    }
  }

  T total{};
  double err = 0.0;
  std::vector<detail::Panel<T>> done;  // panels too narrow to split further
  auto recompute = [&] {
    total = T{};
    err = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      total += copy.top().value;
      err += copy.top().error;
      copy.pop();
    }
    for (const auto& p : done) {
      total += p.value;
      err += p.error;
    }
  };
  recompute();

  int panels = static_cast<int>(heap.size());
  int since_resum = 0;
  while (!heap.empty() && err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (panels >= opt.max_panels) break;
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <= 64 * std::numeric_limits<double>::epsilon() *
                                   std::max(std::abs(worst.a), std::abs(worst.b))) {
      done.push_back(worst);
      continue;
    }
    auto left = detail::gk15<T>(f, worst.a, mid);
    auto right = detail::gk15<T>(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
    if (++since_resum == 256) {
      recompute();
      since_resum = 0;
    }
  }
  recompute();

  Result<T> r;
  r.value = total;
  r.abs_error = err;
  r.evaluations = evals;
  r.converged = err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  return r;
}

template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {}) {
  const std::array<double, 2> br{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(br), opt);
}

/// Integral of f over [x0, inf) for f(x) ~ C x^{-p} with p > 1.
///
/// Substitutes x = x0 t^{-m} with m = 1/(p - 1), which maps the algebraic
/// tail onto t in (0, 1] with a bounded integrand. No truncation is involved.
template <class F>
auto integrate_power_tail(F&& f, double x0, double p, const Options& opt = {}) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (!(x0 > 0.0)) throw invalid_argument_error("integrate_power_tail: x0 must be positive");
  if (!(p > 1.0)) throw domain_error("integrate_power_tail: tail exponent must exceed 1");
  const double m = 1.0 / (p - 1.0);
  // Past x_far the integrand is at its t -> 0 limit m x0^{1-p} lim f(x) x^p;
  // only reachable when p is close to 1, where the map overflows quickly.
  const double x_far = x0 * 1e100;
  std::optional<T> far;
  auto g = [&](double t) -> T {
    const double lt = std::log(t);
    const double x = x0 * std::exp(-m * lt);
    if (!(x < x_far)) {
      if (!far) far = f(x_far) * (m * std::exp(p * std::log(x_far) + (1.0 - p) * std::log(x0)));
      return *far;
    }
    const double jac = m * x0 * std::exp((-m - 1.0) * lt);
    const T v = f(x);
    return v * jac;
  };
  return integrate(g, 0.0, 1.0, opt);
}

}  // namespace qstat::quad
