#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qstat/errors.hpp"
#include "qstat/qgaussian.hpp"

namespace qstat {

namespace detail {

// Below this coupling the uniform envelope on the support accepts too rarely;
// the Gaussian e^{-beta x^2} >= e_q^{-beta x^2} envelope is used instead.
inline constexpr double kUniformEnvelopeMinQ = 0.05;

inline bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

}  // namespace detail

/// Draws n samples from a q-Gaussian; the sequence depends only on `seed`.
///
///   q < 0  Student-T construction T = Z / sqrt(V / nu), nu = -2/q - 1,
///          scaled to beta. V is a sum of squared normals for integer nu.
///   q ~ 0  Normal with variance 1 / (2 beta).
///   q > 0  Rejection sampling on the finite support.
inline std::vector<double> sample_qgaussian(const QGaussian& g, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw invalid_argument_error("sample_qgaussian: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out;
  out.reserve(n);
  const double k = g.q().value();
  const double beta = g.beta();

  if (g.q().is_zero()) {
    const double sd = std::sqrt(0.5 / beta);
    for (std::size_t i = 0; i < n; ++i) out.push_back(g.mu() + sd * normal(rng));
    return out;
  }

  if (k < 0.0) {
    const double nu = -2.0 / k - 1.0;
    // Student-T with nu dof is e_q^{-beta_t t^2} with beta_t = (nu+1)/(2 nu).
    const double scale = std::sqrt((nu + 1.0) / (2.0 * nu) / beta);
    const bool integer_dof = detail::is_integer(nu) && nu <= 64.0;
    std::gamma_distribution<double> chi2(0.5 * nu, 2.0);
    const int dof = static_cast<int>(std::round(nu));
    for (std::size_t i = 0; i < n; ++i) {
      const double z = normal(rng);
      double v = 0.0;
      if (integer_dof) {
        for (int j = 0; j < dof; ++j) {
          const double e = normal(rng);
          v += e * e;
        }
      } else {
        v = chi2(rng);
      }
      out.push_back(g.mu() + scale * z / std::sqrt(v / nu));
    }
    return out;
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Interval s = g.support();
  if (k >= detail::kUniformEnvelopeMinQ) {
    while (out.size() < n) {
      const double x = s.lo + (s.hi - s.lo) * unit(rng);
      const double d = x - g.mu();
      if (unit(rng) <= exp_q(g.q(), -beta * d * d)) out.push_back(x);
    }
  } else {
    const double sd = std::sqrt(0.5 / beta);
    while (out.size() < n) {
      const double d = sd * normal(rng);
      if (!s.contains(g.mu() + d)) continue;
      const double ratio = exp_q(g.q(), -beta * d * d) / std::exp(-beta * d * d);
      if (unit(rng) <= ratio) out.push_back(g.mu() + d);
    }
  }
  return out;
}

}  // namespace qstat
