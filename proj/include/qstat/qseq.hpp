#pragma once

// The q-sequence z_n(q) = 2q / (2 + n q), its alpha generalization, the two
// conjugate duals, the additive/multiplicative dualities, and the
// translation q = 1 - q' to/from the original-index convention.

#include <string>

#include "qstat/coupling.hpp"
#include "qstat/errors.hpp"

namespace qstat {

/// Tail exponent of a (q, alpha)-family; 0 < alpha <= 2.
class AlphaExponent {
 public:
  AlphaExponent(double alpha) : alpha_(alpha) {  // NOLINT(google-explicit-constructor)
    if (!(alpha > 0.0 && alpha <= 2.0)) {
      throw domain_error("alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
  }
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// q_n = 2q / (2 + nq), equivalently 1/q_n = 1/q + n/2.
inline Coupling z_n(Coupling q, int n) {
  const double k = q.value();
  const double d = 2.0 + n * k;
  if (detail::near_pole(d, n * k)) throw pole_error("z_n: 2 + n q = 0");
  return 2.0 * k / d;
}

/// q_(alpha,n) = alpha q / (alpha + n q).
inline Coupling z_alpha(Coupling q, AlphaExponent alpha, int n) {
  const double k = q.value();
  const double a = alpha.value();
  const double d = a + n * k;
  if (detail::near_pole(d, n * k)) throw pole_error("z_alpha: alpha + n q = 0");
  return a * k / d;
}

/// q-hat = -2q / (2 + q): exchanges (0, inf) and (-2, 0); an involution.
inline Coupling conj_hat(Coupling q) {
  const double k = q.value();
  if (detail::near_pole(2.0 + k, k)) throw pole_error("conj_hat: q = -2");
  return -2.0 * k / (2.0 + k);
}

/// q-tilde = -q / (1 + q), the q-exponential conjugate; an involution.
inline Coupling conj_tilde(Coupling q) {
  const double k = q.value();
  if (detail::near_pole(1.0 + k, k)) throw pole_error("conj_tilde: q = -1");
  return -k / (1.0 + k);
}

/// A signed sequence member `sign * z_index(q)`.
struct IndexedCoupling {
  int sign;        // +1 or -1
  int index;       // k in z_k(q)
  Coupling value;  // numerically evaluated sign * z_k(q)
};

/// Conjugate of +-q_k, reported as -+q_{k+-1}. Applying it again to the
/// result returns the original (sign, index).
inline IndexedCoupling conj_indexed(Coupling q, int k, int sign) {
  if (sign != 1 && sign != -1) throw invalid_argument_error("conj_indexed: sign must be +1 or -1");
  const double member = sign * z_n(q, k).value();
  return {-sign, k + sign, conj_hat(member)};
}

/// Additive duality q_a(q) = -q.
inline Coupling dual_additive(Coupling q) { return -q.value(); }

/// Multiplicative inversion q_m(q) = -q / (1 - q).
inline Coupling dual_multiplicative(Coupling q) {
  const double k = q.value();
  if (detail::near_pole(1.0 - k, k)) throw pole_error("dual_multiplicative: q = 1");
  return -k / (1.0 - k);
}

/// Original-convention index q' to the translated coupling q = 1 - q'.
inline Coupling translate(double qprime) { return 1.0 - qprime; }

/// Translated coupling q back to q' = 1 - q.
inline double translate_inv(Coupling q) { return 1.0 - q.value(); }

}  // namespace qstat
