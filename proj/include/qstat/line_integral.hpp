#pragma once

// Integration over the real line for integrands whose decay away from a
// center is known: compact support, super-exponential decay, or an
// algebraic tail |x|^{-p}.

#include <array>
#include <cmath>

#include "qstat/quadrature.hpp"

namespace qstat {

struct Decay {
  enum class Kind { compact, rapid, power };

  Kind kind = Kind::rapid;
  // compact: support half-width; rapid: truncation radius beyond which the
  // integrand is negligible; power: radius where the algebraic tail begins.
  double radius = 1.0;
  // power only: the integrand behaves like |x - center|^{-tail_power}.
  double tail_power = 0.0;

  static Decay compact(double half_width) { return {Kind::compact, half_width, 0.0}; }
  static Decay rapid(double radius) { return {Kind::rapid, radius, 0.0}; }
  static Decay power(double core_radius, double p) { return {Kind::power, core_radius, p}; }
};

template <class F>
auto integrate_line(F&& f, double center, const Decay& decay, const quad::Options& opt = {}) {
  const double r = decay.radius;
  const std::array<double, 3> br{center - r, center, center + r};
  auto core = quad::integrate(f, std::span<const double>(br), opt);
  if (decay.kind != Decay::Kind::power) return core;

  auto right = quad::integrate_power_tail([&](double u) { return f(center + u); }, r,
                                          decay.tail_power, opt);
  auto left = quad::integrate_power_tail([&](double u) { return f(center - u); }, r,
                                         decay.tail_power, opt);
  core.value += right.value + left.value;
  core.abs_error += right.abs_error + left.abs_error;
  core.evaluations += right.evaluations + left.evaluations;
  core.converged = core.converged && right.converged && left.converged;
  return core;
}

}  // namespace qstat
