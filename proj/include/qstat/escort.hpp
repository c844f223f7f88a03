#pragma once

// Coupled (escort) probabilities p^{1-q} / sum p^{1-q}, the q-entropy, and
// q-moments, for discrete distributions and uniformly sampled densities.

#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qstat/coupling.hpp"
#include "qstat/errors.hpp"
#include "qstat/qgaussian.hpp"

namespace qstat {

class DiscreteDist {
 public:
  explicit DiscreteDist(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw invalid_argument_error("DiscreteDist: empty");
    double s = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw domain_error("DiscreteDist: probabilities must be nonnegative");
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) {
      throw domain_error("DiscreteDist: probabilities sum to " + std::to_string(s));
    }
  }

  const std::vector<double>& p() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// Nonnegative function sampled at x0 + i dx.
class DensityGrid {
 public:
  DensityGrid(double x0, double dx, std::vector<double> f) : x0_(x0), dx_(dx), f_(std::move(f)) {
    if (!(dx > 0.0)) throw invalid_argument_error("DensityGrid: dx must be positive");
    if (f_.size() < 2) throw invalid_argument_error("DensityGrid: need at least two samples");
    for (double v : f_) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw domain_error("DensityGrid: samples must be finite and nonnegative");
    }
  }

  template <class F>
  static DensityGrid sample(F&& f, double lo, double hi, std::size_t n) {
    const double dx = (hi - lo) / static_cast<double>(n - 1);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(lo + dx * static_cast<double>(i));
    return DensityGrid(lo, dx, std::move(v));
  }

  double x0() const { return x0_; }
  double dx() const { return dx_; }
  std::size_t size() const { return f_.size(); }
  double x(std::size_t i) const { return x0_ + dx_ * static_cast<double>(i); }
  const std::vector<double>& values() const { return f_; }
  double operator[](std::size_t i) const { return f_[i]; }

  /// Trapezoid integral of g(x_i, f_i) over the grid.
  template <class G>
  double trapezoid(G&& g) const {
    double s = 0.5 * (g(x(0), f_.front()) + g(x(size() - 1), f_.back()));
    for (std::size_t i = 1; i + 1 < size(); ++i) s += g(x(i), f_[i]);
    return s * dx_;
  }

  double mass() const {
    return trapezoid([](double, double v) { return v; });
  }

 private:
  double x0_;
  double dx_;
  std::vector<double> f_;
};

/// Escort distribution P_i = p_i^{1-q} / sum_j p_j^{1-q}. Zero states stay
/// zero; with zero states present q must be below 1.
inline DiscreteDist coupled_discrete(const DiscreteDist& p, Coupling q) {
  const double k = q.value();
  bool has_zero = false;
  for (double v : p.p()) has_zero = has_zero || v == 0.0;
  if (has_zero && k >= 1.0) throw domain_error("coupled_discrete: zero-probability states require q < 1");
  std::vector<double> w(p.size());
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    w[i] = p[i] > 0.0 ? std::pow(p[i], 1.0 - k) : 0.0;
    s += w[i];
  }
  for (double& v : w) v /= s;
  // Renormalized explicitly so the sum matches the DiscreteDist tolerance.
  const double t = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= t;
  return DiscreteDist(std::move(w));
}

/// Pointwise power f^{1-q} renormalized by its trapezoid mass.
inline DensityGrid coupled_density(const DensityGrid& g, Coupling q) {
  const double k = q.value();
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = g[i] > 0.0 ? std::pow(g[i], 1.0 - k) : 0.0;
  DensityGrid raw(g.x0(), g.dx(), w);
  const double m = raw.mass();
  if (!(m > 0.0) || !std::isfinite(m)) throw domain_error("coupled_density: normalizer is zero or divergent");
  for (double& v : w) v /= m;
  return DensityGrid(g.x0(), g.dx(), std::move(w));
}

/// S_q = <ln_q(1/p_i)> = (-1 + sum p_i^{1-q}) / q; zero states contribute 0.
inline double entropy_discrete(const DiscreteDist& p, Coupling q) {
  const double k = q.value();
  double s = 0.0;
  for (double v : p.p()) {
    if (v <= 0.0) continue;
    const double l = std::log(v);
    // p (p^{-q} - 1) / q, written with expm1 so q near 0 keeps full precision.
    s += q.is_zero() ? v * (-l + 0.5 * k * l * l) : v * std::expm1(-k * l) / k;
  }
  return s;
}

/// S_q = (-1 + integral f^{1-q}) / q by the trapezoid rule over the grid.
inline double entropy_density(const DensityGrid& g, Coupling q) {
  const double k = q.value();
  double s = 0.0;
  if (q.is_zero()) {
    s = g.trapezoid([&](double, double v) {
      if (v <= 0.0) return 0.0;
      const double l = std::log(v);
      return v * (-l + 0.5 * k * l * l);
    });
  } else {
    // integral f^{1-q} = mass + integral f (f^{-q} - 1)
    const double excess = g.trapezoid([&](double, double v) {
      return v > 0.0 ? v * std::expm1(-k * std::log(v)) : 0.0;
    });
    s = (excess + (g.mass() - 1.0)) / k;
  }
  if (!std::isfinite(s)) throw domain_error("entropy_density: integral diverges");
  return s;
}

struct QMoments {
  double mu_q;
  double sigma_q_sq;
};

/// q-mean and q-variance: ordinary moments of the coupled density.
inline QMoments q_moments(const DensityGrid& g, Coupling q) {
  const DensityGrid c = coupled_density(g, q);
  const double mu = c.trapezoid([](double x, double v) { return x * v; });
  const double var = c.trapezoid([&](double x, double v) { return (x - mu) * (x - mu) * v; });
  if (!std::isfinite(mu) || !std::isfinite(var)) throw domain_error("q_moments: moment diverges");
  return {mu, var};
}

/// q-moments of a q-Gaussian under coupling q, by adaptive quadrature of the
/// closed-form coupled density (exact treatment of algebraic tails).
inline QMoments q_moments(const QGaussian& g, Coupling q) {
  const double k = q.value();
  auto powered = [&](double x) {
    const double v = g.pdf(x);
    return v > 0.0 ? std::pow(v, 1.0 - k) : 0.0;
  };
  Decay d = g.decay();
  const Decay base = d;
  if (base.kind == Decay::Kind::power) {
    // f^{1-q} ~ |x|^{-p(1-q)}; the second moment loses two powers.
    const double p = base.tail_power * (1.0 - k);
    if (!(p - 2.0 > 1.0)) throw domain_error("q_moments: coupled second moment diverges");
    d.tail_power = p;
  } else if (base.kind == Decay::Kind::rapid && k != 0.0) {
    d.radius = base.radius / std::sqrt(std::max(1.0 - k, 1e-3));
  }
  const quad::Options opt{1e-14, 1e-13};
  const double norm = integrate_line(powered, g.mu(), d, opt).value;
  if (!(norm > 0.0) || !std::isfinite(norm)) throw domain_error("q_moments: normalizer diverges");
  Decay d1 = d;
  if (d.kind == Decay::Kind::power) d1.tail_power = d.tail_power - 1.0;
  const double mu =
      g.mu() + integrate_line([&](double x) { return (x - g.mu()) * powered(x); }, g.mu(), d1, opt).value / norm;
  Decay d2 = d;
  if (d.kind == Decay::Kind::power) d2.tail_power = d.tail_power - 2.0;
  const double var =
      integrate_line([&](double x) { return (x - mu) * (x - mu) * powered(x); }, g.mu(), d2, opt).value / norm;
  return {mu, var};
}

}  // namespace qstat
