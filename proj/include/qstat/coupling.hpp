#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qstat/errors.hpp"

namespace qstat {

/// Couplings with |q| at or below this value take the second-order q -> 0
/// continuation instead of the closed form.
inline constexpr double kZeroCouplingTol = 1e-10;

enum class Regime {
  heavy_tail,        // -2 < q < 0
  zero,              // |q| <= kZeroCouplingTol
  compact,           // q > 0
  subnormalizable,   // q <= -2
};

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::heavy_tail: return "heavy-tail";
    case Regime::zero: return "zero";
    case Regime::compact: return "compact";
    case Regime::subnormalizable: return "subnormalizable";
  }
  return "?";
}

/// Nonlinear coupling q in the translated convention (q = 0 is Gaussian).
///
/// Implicitly constructible from a double so call sites can write
/// `exp_q(0.5, x)`; construction rejects NaN and infinities.
class Coupling {
 public:
  constexpr Coupling() = default;

  Coupling(double q) : q_(q) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(q)) {
      throw invalid_argument_error("coupling must be finite, got " + std::to_string(q));
    }
  }

  constexpr double value() const noexcept { return q_; }

  constexpr bool is_zero() const noexcept {
    return q_ <= kZeroCouplingTol && q_ >= -kZeroCouplingTol;
  }

  constexpr Regime regime() const noexcept {
    if (is_zero()) return Regime::zero;
    if (q_ > 0) return Regime::compact;
    if (q_ > -2) return Regime::heavy_tail;
    return Regime::subnormalizable;
  }

  friend constexpr bool operator==(Coupling, Coupling) = default;

 private:
  double q_ = 0.0;
};

namespace detail {

// Treats `denominator` as zero when it vanishes relative to the magnitude of
// the terms it was formed from.
inline bool near_pole(double denominator, double scale) {
  return std::abs(denominator) <= 1e-14 * std::max(1.0, std::abs(scale));
}

}  // namespace detail

}  // namespace qstat
