#pragma once

// Maps between q-Gaussians and classical families, conjugate q-Gaussian
// pairs, and the nonlinear statistical coupling strength phi.

#include <cmath>
#include <string>

#include "qstat/coupling.hpp"
#include "qstat/errors.hpp"
#include "qstat/qgaussian.hpp"
#include "qstat/qseq.hpp"

namespace qstat {

struct StudentTMap {
  QGaussian dist;  // q = -2/(nu+1), sigma_q^2 = 1, so beta = (nu+1)/(2 nu)
  Coupling q_hat;  // 2 / nu
};

/// Student-T with nu degrees of freedom as a heavy-tail q-Gaussian.
inline StudentTMap student_t_map(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw domain_error("student_t_map: nu must be positive");
  const Coupling q = -2.0 / (nu + 1.0);
  return {QGaussian(q, 0.0, 1.0), Coupling(2.0 / nu)};
}

/// kappa-distribution index to coupling, q = 1/kappa.
inline Coupling kappa_map(double kappa) {
  if (!(kappa > 0.0)) throw domain_error("kappa_map: kappa must be positive");
  return 1.0 / kappa;
}

enum class ConjugateMode { preserve_variance, preserve_beta, preserve_normalization };

/// The q-hat conjugate of a q-Gaussian (same location).
///
/// preserve_normalization picks sigma_hat^2 = (q_1 / q) sigma^2, which gives
/// both members the same peak density sqrt(beta)/C.
inline QGaussian conjugate_pair(const QGaussian& g, ConjugateMode mode) {
  const Coupling q = g.q();
  if (q.is_zero()) return g;
  const Coupling qh = conj_hat(q);
  switch (mode) {
    case ConjugateMode::preserve_variance:
      return QGaussian(qh, g.mu(), g.sigma_q_sq());
    case ConjugateMode::preserve_beta:
      return QGaussian::from_beta(qh, g.mu(), g.beta());
    case ConjugateMode::preserve_normalization:
      return QGaussian(qh, g.mu(), z_n(q, 1).value() / q.value() * g.sigma_q_sq());
  }
  throw invalid_argument_error("conjugate_pair: unknown mode");
}

/// Nonlinear statistical coupling: q/alpha for q >= 0, -q/(alpha + q) for
/// -alpha < q < 0.
inline double coupling_phi(Coupling q, AlphaExponent alpha) {
  const double k = q.value();
  const double a = alpha.value();
  if (!(k > -a)) throw domain_error("coupling_phi: requires q > -alpha");
  if (k >= 0.0) return k / a;
  return -k / (a + k);
}

}  // namespace qstat
