#pragma once

// Scalar q-deformed algebra: q-exponential/logarithm, q-sum, q-product and
// their inverses, complex q-exponential, q-sine, and closed-form derivatives
// and antiderivatives of the q-exponential.

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>

#include "qstat/coupling.hpp"
#include "qstat/errors.hpp"

namespace qstat {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// e_q^x = [1 + q x]_+^{1/q}.
///
/// At 1 + q x = 0 the result is 0 for q > 0 (continuous extension) and +inf
/// for q < 0 (a genuine pole). Couplings inside the zero band use
/// exp(x (1 - q x / 2)).
inline double exp_q(Coupling q, double x) {
  if (std::isnan(x)) throw invalid_argument_error("exp_q: x is NaN");
  const double k = q.value();
  if (q.is_zero()) return std::exp(x * (1.0 - 0.5 * k * x));
  const double qx = k * x;
  const double base = 1.0 + qx;
  if (base > 0.0) return std::exp(std::log1p(qx) / k);
  if (base < 0.0) return 0.0;
  return k > 0.0 ? 0.0 : kInf;
}

/// ln_q(x) = (x^q - 1) / q, the inverse of exp_q on its open support.
inline double ln_q(Coupling q, double x) {
  if (std::isnan(x)) throw invalid_argument_error("ln_q: x is NaN");
  if (!(x > 0.0)) throw domain_error("ln_q: x must be positive, got " + std::to_string(x));
  const double k = q.value();
  const double l = std::log(x);
  if (q.is_zero()) return l * (1.0 + 0.5 * k * l);
  return std::expm1(k * l) / k;
}

/// x (+)_q y = x + y + q x y.
inline double q_add(Coupling q, double x, double y) { return x + y + q.value() * x * y; }

/// x (-)_q y = (x - y) / (1 + q y).
inline double q_sub(Coupling q, double x, double y) {
  const double d = 1.0 + q.value() * y;
  if (d == 0.0) throw singular_divisor_error("q_sub: 1 + q y = 0");
  return (x - y) / d;
}

namespace detail {

// [1 + s]_+^{1/q} with exp_q's boundary conventions, where s is an already
// assembled sum of (x_i^q - 1) terms.
inline double bracket_power(Coupling q, double s) {
  const double base = 1.0 + s;
  if (base > 0.0) return std::exp(std::log1p(s) / q.value());
  if (base < 0.0) return 0.0;
  return q.value() > 0.0 ? 0.0 : kInf;
}

inline double pow_minus_one(Coupling q, double x) { return std::expm1(q.value() * std::log(x)); }

inline void require_positive(const char* op, double x) {
  if (std::isnan(x)) throw invalid_argument_error(std::string(op) + ": argument is NaN");
  if (!(x > 0.0)) {
    throw domain_error(std::string(op) + ": arguments must be positive, got " + std::to_string(x));
  }
}

}  // namespace detail

/// x (x)_q y = [x^q + y^q - 1]_+^{1/q}.
inline double q_prod(Coupling q, double x, double y) {
  detail::require_positive("q_prod", x);
  detail::require_positive("q_prod", y);
  if (q.is_zero()) return x * y;
  return detail::bracket_power(q, detail::pow_minus_one(q, x) + detail::pow_minus_one(q, y));
}

/// x (/)_q y = [x^q - y^q + 1]_+^{1/q}.
inline double q_div(Coupling q, double x, double y) {
  detail::require_positive("q_div", x);
  detail::require_positive("q_div", y);
  if (q.is_zero()) return x / y;
  return detail::bracket_power(q, detail::pow_minus_one(q, x) - detail::pow_minus_one(q, y));
}

/// Left fold of q_add; 0 for an empty sequence.
inline double q_add_n(Coupling q, std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc = q_add(q, acc, x);
  return acc;
}

/// N-ary q-product [sum x_i^q - (N - 1)]_+^{1/q}; 1 for an empty sequence.
inline double q_prod_n(Coupling q, std::span<const double> xs) {
  for (double x : xs) detail::require_positive("q_prod_n", x);
  if (xs.empty()) return 1.0;
  if (q.is_zero()) {
    double p = 1.0;
    for (double x : xs) p *= x;
    return p;
  }
  double s = 0.0;
  for (double x : xs) s += detail::pow_minus_one(q, x);
  return detail::bracket_power(q, s);
}

struct RescaledExponent {
  Coupling q;
  double x;
};

/// (e_q^x)^p = e_{q/p}^{p x}.
inline RescaledExponent power_rescale(Coupling q, double x, double p) {
  if (p == 0.0) throw domain_error("power_rescale: p must be nonzero");
  return {Coupling(q.value() / p), p * x};
}

/// Principal-branch (1 + q z)^{1/q}. Throws branch_cut_error when 1 + q z
/// lies on the closed negative real axis.
inline std::complex<double> exp_q_complex(Coupling q, std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw invalid_argument_error("exp_q_complex: z must be finite");
  }
  const double k = q.value();
  if (q.is_zero()) return std::exp(z * (1.0 - 0.5 * k * z));
  const std::complex<double> qz = k * z;
  const double re = 1.0 + qz.real();
  const double im = qz.imag();
  if (im == 0.0 && re <= 0.0) {
    throw branch_cut_error("exp_q_complex: 1 + q z on the branch cut");
  }
  // log(1 + qz) with log1p accuracy in the real part when qz is small.
  const double log_mod = 0.5 * std::log1p(2.0 * qz.real() + std::norm(qz));
  const std::complex<double> log_w(log_mod, std::atan2(im, re));
  return std::exp(log_w / k);
}

/// sin_q(x) = (e_q^{ix} - e_q^{-ix}) / 2i.
inline double sin_q(Coupling q, double x) {
  if (!std::isfinite(x)) throw invalid_argument_error("sin_q: x must be finite");
  const std::complex<double> i(0.0, 1.0);
  const auto ep = exp_q_complex(q, i * x);
  const auto em = exp_q_complex(q, -i * x);
  const std::complex<double> s = (ep - em) / (2.0 * i);
  if (std::abs(s.imag()) >= 1e-12 * std::max(1.0, std::abs(ep))) {
    throw branch_cut_error("sin_q: non-real result, conjugate symmetry broken");
  }
  return s.real();
}

/// sin_q(x) / x with sinc_q(0) = 1.
inline double sinc_q(Coupling q, double x) {
  if (x == 0.0) return 1.0;
  return sin_q(q, x) / x;
}

/// n-th derivative of e_q^{a x}:
///   [a^n prod_{i=1}^n (1 - (i-1) q)] e_{q/(1-nq)}^{(1-nq) a x}.
inline double dn_exp_q(Coupling q, double a, int n, double x) {
  if (n < 1) throw invalid_argument_error("dn_exp_q: n must be >= 1");
  const double k = q.value();
  for (int i = 1; i <= n; ++i) {
    if (detail::near_pole(1.0 - i * k, 1.0)) {
      throw pole_error("dn_exp_q: q = 1/" + std::to_string(i));
    }
  }
  double coeff = 1.0;
  for (int i = 1; i <= n; ++i) coeff *= a * (1.0 - (i - 1) * k);
  const double shrink = 1.0 - n * k;
  return coeff * exp_q(Coupling(k / shrink), shrink * a * x);
}

/// n-th antiderivative of e_q^{a x} with all integration constants zero:
///   [a^{-n} prod_{i=1}^n 1/(1 + i q)] e_{q/(1+nq)}^{(1+nq) a x}.
inline double intn_exp_q(Coupling q, double a, int n, double x) {
  if (n < 1) throw invalid_argument_error("intn_exp_q: n must be >= 1");
  if (a == 0.0) throw domain_error("intn_exp_q: a must be nonzero");
  const double k = q.value();
  for (int i = 1; i <= n; ++i) {
    if (detail::near_pole(1.0 + i * k, 1.0)) {
      throw pole_error("intn_exp_q: q = -1/" + std::to_string(i));
    }
  }
  double coeff = 1.0;
  for (int i = 1; i <= n; ++i) coeff /= a * (1.0 + i * k);
  const double grow = 1.0 + n * k;
  return coeff * exp_q(Coupling(k / grow), grow * a * x);
}

}  // namespace qstat
