#pragma once

// q-Gaussian G_q(x) = (sqrt(beta_q) / C_q) e_q^{-beta_q (x - mu_q)^2} and the
// (q, alpha) family a e_q^{-beta |x|^alpha}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "qstat/coupling.hpp"
#include "qstat/errors.hpp"
#include "qstat/line_integral.hpp"
#include "qstat/qcore.hpp"
#include "qstat/qseq.hpp"

namespace qstat {

/// Normalization C_q = integral of e_q^{-x^2} over the real line; q > -2.
inline double c_q(Coupling q) {
  const double k = q.value();
  if (!(k > -2.0)) throw domain_error("c_q: requires q > -2, got " + std::to_string(k));
  if (q.is_zero()) return std::sqrt(std::numbers::pi);
  if (k > 0.0) {
    // sqrt(pi/q) Gamma(1/q + 1) / Gamma(1/q + 3/2)
    return std::sqrt(std::numbers::pi / k) * boost::math::tgamma_delta_ratio(1.0 / k + 1.0, 0.5);
  }
  // sqrt(pi/-q) Gamma(-1/q - 1/2) / Gamma(-1/q)
  return std::sqrt(std::numbers::pi / -k) * boost::math::tgamma_delta_ratio(-1.0 / k - 0.5, 0.5);
}

struct Interval {
  double lo;
  double hi;
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

namespace detail {

// How e_q^{-beta |x|^alpha} decays away from its center.
inline Decay kernel_decay(Coupling q, double beta, double alpha = 2.0) {
  const double k = q.value();
  if (q.is_zero()) return Decay::rapid(std::pow(60.0 / beta, 1.0 / alpha));
  // beta |x|^alpha at which the kernel has fallen to e^{-60}; for small |q|
  // this is far inside the support (or the algebraic regime).
  const double cut = -std::expm1(-60.0 * k) / k;
  if (k > 0.0) {
    if (cut < 0.99 / k) return Decay::rapid(std::pow(cut / beta, 1.0 / alpha));
    return Decay::compact(std::pow(1.0 / (k * beta), 1.0 / alpha));
  }
  return Decay::power(std::pow(std::min(cut, 10.0 / -k) / beta, 1.0 / alpha), -alpha / k);
}

}  // namespace detail

/// q-Gaussian parameterized by its q-mean and q-variance; beta_q is derived.
class QGaussian {
 public:
  QGaussian(Coupling q, double mu_q, double sigma_q_sq) : q_(q), mu_(mu_q), sigma_sq_(sigma_q_sq) {
    if (!(q.value() > -2.0)) {
      throw domain_error("QGaussian: requires q > -2, got " + std::to_string(q.value()));
    }
    if (!std::isfinite(mu_q)) throw invalid_argument_error("QGaussian: mu must be finite");
    if (!(sigma_q_sq > 0.0) || !std::isfinite(sigma_q_sq)) {
      throw domain_error("QGaussian: sigma_q^2 must be positive and finite");
    }
    beta_ = 1.0 / ((2.0 + q.value()) * sigma_sq_);
    c_ = c_q(q);
  }

  static QGaussian from_beta(Coupling q, double mu_q, double beta) {
    if (!(beta > 0.0)) throw domain_error("QGaussian: beta must be positive");
    if (!(q.value() > -2.0)) throw domain_error("QGaussian: requires q > -2");
    return QGaussian(q, mu_q, 1.0 / ((2.0 + q.value()) * beta));
  }

  Coupling q() const { return q_; }
  double mu() const { return mu_; }
  double sigma_q_sq() const { return sigma_sq_; }
  double beta() const { return beta_; }
  double c() const { return c_; }
  /// Peak density sqrt(beta_q) / C_q.
  double amplitude() const { return std::sqrt(beta_) / c_; }

  Interval support() const {
    if (q_.value() > 0.0 && !q_.is_zero()) {
      const double h = 1.0 / std::sqrt(q_.value() * beta_);
      return {mu_ - h, mu_ + h};
    }
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }

  double pdf(double x) const {
    const double d = x - mu_;
    return amplitude() * exp_q(q_, -beta_ * d * d);
  }

  Decay decay() const { return detail::kernel_decay(q_, beta_); }

 private:
  Coupling q_;
  double mu_;
  double sigma_sq_;
  double beta_;
  double c_;
};

inline double qgaussian_pdf(const QGaussian& g, double x) { return g.pdf(x); }
inline Interval support_bounds(const QGaussian& g) { return g.support(); }

/// Adaptive-quadrature integral of e_q^{-beta x^2}; the algebraic tail for
/// q < 0 is integrated exactly by substitution.
inline quad::Result<double> integrate_qgaussian_kernel(Coupling q, double beta,
                                                       const quad::Options& opt = {}) {
  if (!(q.value() > -2.0)) throw domain_error("kernel integral diverges for q <= -2");
  if (!(beta > 0.0)) throw domain_error("beta must be positive");
  auto f = [&](double x) { return exp_q(q, -beta * x * x); };
  return integrate_line(f, 0.0, detail::kernel_decay(q, beta), opt);
}

/// Numeric mass of a q-Gaussian pdf.
inline quad::Result<double> qgaussian_mass(const QGaussian& g, const quad::Options& opt = {}) {
  return integrate_line([&](double x) { return g.pdf(x); }, g.mu(), g.decay(), opt);
}

/// (q, alpha) family a e_q^{-beta |x|^alpha}, centered at 0.
struct QAlphaFamily {
  Coupling q;
  AlphaExponent alpha;
  double a;
  double beta;

  QAlphaFamily(Coupling q_, AlphaExponent alpha_, double a_, double beta_)
      : q(q_), alpha(alpha_), a(a_), beta(beta_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw domain_error("QAlphaFamily: a must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw domain_error("QAlphaFamily: beta must be positive");
  }

  double operator()(double x) const {
    return a * exp_q(q, -beta * std::pow(std::abs(x), alpha.value()));
  }

  Decay decay() const { return detail::kernel_decay(q, beta, alpha.value()); }
};

inline double q_alpha_pdf_unnorm(const QAlphaFamily& f, double x) { return f(x); }

/// Mass of a (q, alpha) family; finite only for q > -alpha.
inline quad::Result<double> q_alpha_mass(const QAlphaFamily& f, const quad::Options& opt = {}) {
  if (!(f.q.value() > -f.alpha.value())) {
    throw domain_error("q_alpha_mass: mass diverges for q <= -alpha");
  }
  // Integrate the even function on [0, inf) so the cusp of |x|^alpha sits on
  // a panel endpoint.
  const Decay d = f.decay();
  auto g = [&](double x) { return f(x); };
  auto core = quad::integrate(g, 0.0, d.radius, opt);
  if (d.kind == Decay::Kind::power) {
    auto tail = quad::integrate_power_tail(g, d.radius, d.tail_power, opt);
    core.value += tail.value;
    core.abs_error += tail.abs_error;
    core.evaluations += tail.evaluations;
    core.converged = core.converged && tail.converged;
  }
  core.value *= 2.0;
  core.abs_error *= 2.0;
  return core;
}

/// Rescales the amplitude so the family integrates to one.
inline QAlphaFamily q_alpha_normalize(const QAlphaFamily& f) {
  const auto m = q_alpha_mass(f);
  if (!std::isfinite(m.value) || !(m.value > 0.0)) throw domain_error("q_alpha_normalize: mass not finite");
  QAlphaFamily out = f;
  out.a = f.a / m.value;
  return out;
}

}  // namespace qstat
