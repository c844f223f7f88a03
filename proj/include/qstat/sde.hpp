#pragma once

// Multiplicative-noise diffusion
//   dX = J(X) dt + sqrt(2M) g(X) dW_m + sqrt(2A) dW_a,
// whose Fokker-Planck drift and diffusion are J = f + M g g' and
// D = A + M g^2 with f = -tau g g'. The stationary law is a q-Gaussian in
// g(x) with q = -2M/(tau + M), beta = (tau + M)/(2A).

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qstat/coupling.hpp"
#include "qstat/errors.hpp"

namespace qstat {

/// Noise shape g with its derivative.
struct NoiseShape {
  std::function<double(double)> g = [](double x) { return x; };
  std::function<double(double)> dg = [](double) { return 1.0; };

  static NoiseShape identity() { return {}; }
};

struct SdeConfig {
  double M = 0.0;    // multiplicative noise amplitude
  double A = 1.0;    // additive noise amplitude
  double tau = 1.0;  // drift strength, V(x) = (tau/2) g(x)^2
  NoiseShape shape{};
  double dt = 0.01;
  std::size_t steps = 0;    // per path, including burn-in
  std::size_t n_paths = 1;
  std::size_t burn_in = 0;  // per path
  std::uint64_t seed = 0;
  double x0 = 0.0;

  /// Decorrelation stride between recorded samples, max(1, ceil(1/(tau dt))).
  std::size_t stride() const {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(1.0 / (tau * dt))));
  }

  /// Default burn-in of 10 / (tau dt) steps.
  std::size_t default_burn_in() const { return static_cast<std::size_t>(std::ceil(10.0 / (tau * dt))); }

  /// Steps per path needed for `per_path` recorded samples after the default burn-in.
  static SdeConfig for_samples(double M, double tau, double A, std::size_t total_samples,
                               std::size_t n_paths, std::uint64_t seed, double dt = 0.01) {
    SdeConfig c;
    c.M = M;
    c.tau = tau;
    c.A = A;
    c.dt = dt;
    c.n_paths = n_paths;
    c.seed = seed;
    c.burn_in = c.default_burn_in();
    const std::size_t per_path = (total_samples + n_paths - 1) / n_paths;
    c.steps = c.burn_in + per_path * c.stride();
    return c;
  }

  void validate() const {
    if (!(M >= 0.0) || !std::isfinite(M)) throw domain_error("SdeConfig: M must be nonnegative");
    if (!(A > 0.0) || !std::isfinite(A)) throw domain_error("SdeConfig: A must be positive");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw domain_error("SdeConfig: tau must be positive");
    if (!(dt > 0.0)) throw domain_error("SdeConfig: dt must be positive");
    if (!(dt * tau < 0.1)) throw domain_error("SdeConfig: dt * tau must be below 0.1 for stability");
    if (!(burn_in < steps)) throw domain_error("SdeConfig: burn_in must be smaller than steps");
    if (n_paths < 1) throw domain_error("SdeConfig: n_paths must be >= 1");
    if (!shape.g || !shape.dg) throw invalid_argument_error("SdeConfig: noise shape not set");
  }
};

struct StationaryPrediction {
  Coupling q;
  double beta;
  double q_hat;  // 2M / tau
};

inline StationaryPrediction predicted_stationary(double M, double tau, double A) {
  if (!(tau > 0.0) || !(A > 0.0) || !(M >= 0.0)) {
    throw domain_error("predicted_stationary: requires tau > 0, A > 0, M >= 0");
  }
  return {Coupling(-2.0 * M / (tau + M)), (tau + M) / (2.0 * A), 2.0 * M / tau};
}

struct FpCoefficients {
  double J;  // drift f + M g g'
  double D;  // diffusion A + M g^2
};

inline FpCoefficients fp_coefficients(double M, double tau, double A, double x,
                                      const NoiseShape& shape = {}) {
  const double g = shape.g(x);
  const double dg = shape.dg(x);
  const double f = -tau * g * dg;
  return {f + M * g * dg, A + M * g * g};
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Seed of path `index`, derived from the run seed only.
inline std::uint64_t path_seed(std::uint64_t seed, std::size_t index) {
  return detail::splitmix64(seed ^ detail::splitmix64(static_cast<std::uint64_t>(index) + 1));
}

/// Euler-Maruyama simulation; returns the recorded post-burn-in states,
/// ordered by path index and then by step.
///
/// The drift used in the increment is the Fokker-Planck drift J = f + M g g',
/// so the discretized process has exactly the coefficients J and D.
inline std::vector<double> simulate(const SdeConfig& cfg) {
  cfg.validate();
  const std::size_t stride = cfg.stride();
  const double sm = std::sqrt(2.0 * cfg.M * cfg.dt);
  const double sa = std::sqrt(2.0 * cfg.A * cfg.dt);
  std::vector<double> out;
  out.reserve(cfg.n_paths * ((cfg.steps - cfg.burn_in) / stride + 1));

  for (std::size_t p = 0; p < cfg.n_paths; ++p) {
    std::mt19937_64 rng(path_seed(cfg.seed, p));
    std::normal_distribution<double> normal(0.0, 1.0);
    double x = cfg.x0;
    for (std::size_t s = 1; s <= cfg.steps; ++s) {
      const double g = cfg.shape.g(x);
      const double dg = cfg.shape.dg(x);
      const double drift = (cfg.M - cfg.tau) * g * dg;
      const double xm = normal(rng);
      const double xa = normal(rng);
      x += drift * cfg.dt + sm * g * xm + sa * xa;
      if (!(std::abs(x) <= 1e12)) {
        throw instability_error("simulate: |X| exceeded 1e12 at step " + std::to_string(s) +
                                " of path " + std::to_string(p) + "; use a smaller dt");
      }
      if (s > cfg.burn_in && (s - cfg.burn_in) % stride == 0) out.push_back(x);
    }
  }
  return out;
}

}  // namespace qstat
