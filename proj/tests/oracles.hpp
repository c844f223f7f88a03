#pragma once

// Reference computations that share no code path with the library: direct
// power formulas, finite differences and Boost.Math quadrature.

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

/// (1 + q x)_+^{1/q} written out with pow.
inline double exp_q(double q, double x) {
  if (q == 0.0) return std::exp(x);
  const double b = 1.0 + q * x;
  if (b <= 0.0) return q > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::pow(b, 1.0 / q);
}

/// Central first difference with step 1e-5 (1 + |x|).
template <class F>
double d1(F&& f, double x) {
  const double h = 1e-5 * (1.0 + std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Central second difference; a larger step balances roundoff.
template <class F>
double d2(F&& f, double x) {
  const double h = 1e-4 * (1.0 + std::abs(x));
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Integral of f over [0, inf) by exp-sinh quadrature.
inline double integral_half_line(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

/// Integral of f over [a, b] by tanh-sinh quadrature.
inline double integral(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b);
}

/// Integral of an even function over the real line.
inline double integral_even(const std::function<double(double)>& f, double half_width = 0.0) {
  if (half_width > 0.0) return 2.0 * integral(f, 0.0, half_width);
  return 2.0 * integral_half_line(f);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace oracle
