#pragma once

// q-Fourier transform F_q[f](w) = integral f(x) e_q^{i x w f(x)^{-q}} dx,
// extended to q > 0 through the q-hat conjugation of the input's
// q-parameters, and the conjugate (q-tilde) transform. Closed forms for the
// q-Gaussian and the uniform density serve as oracles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qstat/coupling.hpp"
#include "qstat/errors.hpp"
#include "qstat/escort.hpp"
#include "qstat/line_integral.hpp"
#include "qstat/qcore.hpp"
#include "qstat/qgaussian.hpp"
#include "qstat/qseq.hpp"

namespace qstat {

/// a e_q^{-beta x^2}; a and beta are independent of q.
struct QGaussianFamily {
  double a;
  double beta;
  Coupling q;

  QGaussianFamily(double a_, double beta_, Coupling q_) : a(a_), beta(beta_), q(q_) {
    if (!(a > 0.0) || !(beta > 0.0)) throw domain_error("QGaussianFamily: a and beta must be positive");
    if (!(q.value() > -2.0)) throw domain_error("QGaussianFamily: not integrable for q <= -2");
  }

  static QGaussianFamily normalized(Coupling q, double beta) {
    return {std::sqrt(beta) / c_q(q), beta, q};
  }

  double operator()(double x) const { return a * exp_q(q, -beta * x * x); }
  Decay decay() const { return detail::kernel_decay(q, beta); }
};

/// U(x) = 1/2 on |x| <= 1.
struct UniformBox {
  double operator()(double x) const { return std::abs(x) <= 1.0 ? 0.5 : 0.0; }
};

using TransformInput = std::variant<QGaussianFamily, QAlphaFamily, UniformBox, DensityGrid>;

enum class TransformMethod { numeric, closed_form };

struct TransformResult {
  std::vector<double> ws;
  std::vector<std::complex<double>> values;
  TransformMethod method = TransformMethod::numeric;
  double est_abs_error = 0.0;
};

/// A e_{q_out}^{-B w^2}.
struct ClosedFormQGaussian {
  double A;
  double B;
  Coupling q_out;

  double operator()(double w) const { return A * exp_q(q_out, -B * w * w); }
  /// q_out <= -2: the transform is not normalizable.
  bool subnormalizable() const { return q_out.value() <= -2.0; }

  TransformResult evaluate(std::span<const double> ws) const {
    TransformResult r;
    r.method = TransformMethod::closed_form;
    r.ws.assign(ws.begin(), ws.end());
    for (double w : ws) r.values.emplace_back((*this)(w), 0.0);
    return r;
  }
};

/// Closed-form transform of a e_q^{-beta x^2}: A = a C_q / sqrt(beta),
/// B = (2 + q) / (8 beta a^{2q}), q_out = z_1(q).
inline ClosedFormQGaussian qft_qgaussian_closed(double a, double beta, Coupling q) {
  if (!(q.value() > -2.0)) throw domain_error("qft_qgaussian_closed: requires q > -2");
  if (!(a > 0.0) || !(beta > 0.0)) throw domain_error("qft_qgaussian_closed: a, beta must be positive");
  const double k = q.value();
  return {a * c_q(q) / std::sqrt(beta), (2.0 + k) / (8.0 * beta * std::pow(a, 2.0 * k)), z_n(q, 1)};
}

/// Conjugate transform of a e_q^{-beta x^2}: the forward closed form at
/// q-tilde, whose output coupling z_1(q-tilde) equals q-hat.
inline ClosedFormQGaussian cqft_qgaussian_closed(double a, double beta, Coupling q) {
  const Coupling qt = conj_tilde(q);
  if (!(qt.value() > -2.0)) {
    throw domain_error("cqft_qgaussian_closed: q-tilde = " + std::to_string(qt.value()) + " <= -2");
  }
  auto r = qft_qgaussian_closed(a, beta, qt);
  r.q_out = conj_hat(q);
  return r;
}

/// sinc_{q_2}[(1 + q) 2^q w], valid on both domains.
inline double qft_uniform_closed(Coupling q, double w) {
  const double k = q.value();
  if (!(k > -2.0)) throw domain_error("qft_uniform_closed: requires q > -2");
  if (detail::near_pole(1.0 + k, k)) throw pole_error("qft_uniform_closed: q = -1");
  return sinc_q(z_n(q, 2), (1.0 + k) * std::exp2(k) * w);
}

/// sinc_{-q}[(1 - q_2) 2^{-q_2} w].
inline double cqft_uniform_closed(Coupling q, double w) {
  const double k = q.value();
  if (detail::near_pole(1.0 + k, k)) throw pole_error("cqft_uniform_closed: q = -1");
  const double q2 = z_n(q, 2).value();
  return sinc_q(-k, (1.0 - q2) * std::exp2(-q2) * w);
}

namespace detail {

inline constexpr double kCouplingMatchTol = 1e-12;

inline bool same_coupling(Coupling a, Coupling b) {
  return std::abs(a.value() - b.value()) <= kCouplingMatchTol * std::max(1.0, std::abs(b.value()));
}

struct Integral {
  std::complex<double> value;
  double abs_error;
};

// f e_q^{i x w f^{-q}}; zero where f vanishes.
inline std::complex<double> qft_integrand(Coupling q, double fx, double x, double w) {
  if (!(fx > 0.0)) return {0.0, 0.0};
  const double k = q.value();
  const double scale = q.is_zero() ? 1.0 : std::exp(-k * std::log(fx));
  return fx * exp_q_complex(q, std::complex<double>(0.0, x * w * scale));
}

inline int oscillation_panels(double radius, double w, double max_f, Coupling q) {
  if (w == 0.0) return 4;
  const double k = q.value();
  const double scale = q.is_zero() ? 1.0 : std::pow(max_f, -k);
  const double width = std::numbers::pi / (4.0 * std::abs(w) * scale);
  return std::clamp(static_cast<int>(std::ceil(radius / width)), 4, 4000);
}

template <class F>
Integral direct_family(const F& f, Decay decay, double peak, Coupling q, double w) {
  auto g = [&](double x) { return qft_integrand(q, f(x), x, w); };
  quad::Options opt{1e-13, 1e-13};
  double extra_error = 0.0;
  if (q.is_zero() && w != 0.0 && decay.kind == Decay::Kind::power) {
    // An oscillatory algebraic tail cannot go through the tail map; truncate
    // and charge the omitted mass to the error estimate.
    const double p = decay.tail_power;
    const double r = decay.radius * 1e3;
    const double fr = f(r);
    extra_error = 2.0 * fr * r / (p - 1.0);
    decay = Decay::rapid(r);
  }
  opt.initial_panels = oscillation_panels(decay.radius, w, peak, q);
  const auto res = integrate_line(g, 0.0, decay, opt);
  return {res.value, res.abs_error + extra_error};
}

inline Integral direct_grid(const DensityGrid& g, Coupling q, double w) {
  std::vector<std::complex<double>> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = qft_integrand(q, g[i], g.x(i), w);
  const double h = g.dx();
  std::complex<double> fine = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) fine += v[i];
  fine *= h;
  // Coarse rule on every other point; the leftover interval (even sizes)
  // reuses the fine rule so the two differ only by discretization.
  const std::size_t last = (v.size() - 1) % 2 == 0 ? v.size() - 1 : v.size() - 2;
  if (last < 2) return {fine, std::abs(fine)};
  std::complex<double> coarse = 0.5 * (v[0] + v[last]);
  for (std::size_t i = 2; i < last; i += 2) coarse += v[i];
  coarse *= 2.0 * h;
  if (last != v.size() - 1) coarse += 0.5 * h * (v[last] + v.back());
  return {fine, std::abs(fine - coarse) / 3.0};
}

inline Integral direct(const TransformInput& in, Coupling q, double w) {
  return std::visit(
      [&](const auto& f) -> Integral {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DensityGrid>) {
          return direct_grid(f, q, w);
        } else if constexpr (std::is_same_v<T, UniformBox>) {
          return direct_family(f, Decay::compact(1.0), 0.5, q, w);
        } else {
          return direct_family(f, f.decay(), f(0.0), q, w);
        }
      },
      in);
}

// Input mass (the transform at w = 0) must be finite for the transform to exist.
inline void require_integrable(const TransformInput& in) {
  if (const auto* f = std::get_if<QAlphaFamily>(&in)) {
    if (!(f->q.value() > -f->alpha.value())) throw domain_error("qft: (q, alpha) input is not integrable");
  }
}

// Compact-support path for a e_q^{-beta x^2}, q > 0: integrate the q-hat
// conjugate numerically, read off its q-hat parameters at each w, and map
// them back to q.
inline TransformResult conjugated_qgaussian(const QGaussianFamily& f, Coupling q,
                                            std::span<const double> ws) {
  const double k = q.value();
  const Coupling qh = conj_hat(q);
  const double kh = qh.value();
  const QGaussianFamily fh(f.a, f.beta, qh);
  const TransformInput hat_input = fh;
  const Integral at0 = direct(hat_input, qh, 0.0);
  const double a_hat = at0.value.real();
  if (!(a_hat > 0.0)) throw domain_error("qft: conjugate transform has nonpositive mass");

  const Coupling hat_out = z_n(qh, 1);  // equals -q
  const Coupling out = z_n(q, 1);
  const double amp = a_hat * c_q(q) / c_q(qh);
  const double exponent_map = (2.0 + k) / (2.0 + kh) * std::pow(f.a, 2.0 * kh - 2.0 * k);
  auto map_back = [&](double ratio) {
    // ratio = e_{hat_out}^{-B_hat w^2}
    const double t_hat = -ln_q(hat_out, ratio);
    return amp * exp_q(out, -t_hat * exponent_map);
  };

  TransformResult r;
  r.ws.assign(ws.begin(), ws.end());
  r.method = TransformMethod::numeric;
  for (double w : ws) {
    const Integral iw = w == 0.0 ? at0 : direct(hat_input, qh, w);
    const double ratio = iw.value.real() / a_hat;
    if (!(ratio > 0.0)) throw domain_error("qft: conjugate transform not of q-Gaussian form");
    const double v = map_back(ratio);
    const double delta = (iw.abs_error + std::abs(iw.value.imag()) + ratio * at0.abs_error) / a_hat;
    const double hi = map_back(ratio + delta);
    const double lo = ratio - delta > 0.0 ? map_back(ratio - delta) : 0.0;
    const double err = std::max(std::abs(hi - v), std::abs(v - lo)) + amp / a_hat * at0.abs_error;
    r.values.emplace_back(v, 0.0);
    r.est_abs_error = std::max(r.est_abs_error, err);
  }
  return r;
}

}  // namespace detail

/// Numerical q-Fourier transform at each frequency in `ws`.
///
/// For -2 < q <= 0 the defining integral is evaluated by adaptive quadrature.
/// For q > 0 the transform acts through the input's q-parameters:
/// q-Gaussian families whose coupling equals q take the conjugation path,
/// the uniform density (no q-parameters) keeps its functional form, and
/// other inputs raise unsupported_input_error.
inline TransformResult qft_numeric(const TransformInput& input, Coupling q, std::span<const double> ws) {
  const double k = q.value();
  if (!(k > -2.0)) throw domain_error("qft_numeric: requires q > -2");
  detail::require_integrable(input);

  if (k > 0.0 && !q.is_zero()) {
    if (std::holds_alternative<DensityGrid>(input)) {
      throw unsupported_input_error("qft_numeric: a density grid carries no q-parameters for q > 0");
    }
    std::optional<QGaussianFamily> family;
    if (const auto* g = std::get_if<QGaussianFamily>(&input)) family = *g;
    if (const auto* g = std::get_if<QAlphaFamily>(&input); g && g->alpha.value() == 2.0) {
      family = QGaussianFamily(g->a, g->beta, g->q);
    }
    if (family) {
      if (!detail::same_coupling(family->q, q)) {
        throw unsupported_input_error("qft_numeric: q > 0 requires the family coupling to equal q");
      }
      return detail::conjugated_qgaussian(*family, q, ws);
    }
    if (!std::holds_alternative<UniformBox>(input)) {
      throw unsupported_input_error("qft_numeric: q > 0 supports q-Gaussian and uniform inputs only");
    }
  }

  TransformResult r;
  r.ws.assign(ws.begin(), ws.end());
  r.method = TransformMethod::numeric;
  for (double w : ws) {
    const auto iw = detail::direct(input, q, w);
    if (!std::isfinite(iw.value.real()) || !std::isfinite(iw.value.imag())) {
      throw domain_error("qft_numeric: integral diverges");
    }
    r.values.push_back(iw.value);
    r.est_abs_error = std::max(r.est_abs_error, iw.abs_error);
  }
  return r;
}

/// Conjugate q-Fourier transform: q-tilde substituted into the input's
/// q-parameters, then the q-FT at q-tilde.
inline TransformResult cqft_numeric(const TransformInput& input, Coupling q, std::span<const double> ws) {
  const Coupling qt = conj_tilde(q);
  if (!(qt.value() > -2.0)) {
    throw domain_error("cqft_numeric: q-tilde = " + std::to_string(qt.value()) + " <= -2");
  }
  TransformInput mapped = input;
  if (auto* g = std::get_if<QGaussianFamily>(&mapped); g && detail::same_coupling(g->q, q)) {
    g->q = qt;
  }
  if (auto* g = std::get_if<QAlphaFamily>(&mapped); g && detail::same_coupling(g->q, q)) {
    g->q = qt;
  }
  return qft_numeric(mapped, qt, ws);
}

}  // namespace qstat
