#pragma once

// Plot-ready datasets: the q <-> q-hat map, conjugate q-Gaussian pairs,
// normalization constants of conjugate pairs, and the uniform-density
// q-Fourier transform. Multi-curve figures use long format with a leading
// q column.

#include <cmath>
#include <string>
#include <vector>

#include "qstat/dataset.hpp"
#include "qstat/errors.hpp"
#include "qstat/maps.hpp"
#include "qstat/qft.hpp"
#include "qstat/qgaussian.hpp"
#include "qstat/qseq.hpp"

namespace qstat {

inline constexpr int kFigureCount = 4;

/// Compact-support couplings shown with their heavy-tail conjugates.
inline const std::vector<double>& figure2_couplings() {
  static const std::vector<double> v{0.5, 1.0, 2.0, 5.0};
  return v;
}

inline const std::vector<double>& figure4_couplings() {
  static const std::vector<double> v{-0.4, -1.0 / 3.0, -0.3, -0.04, -0.01, 0.0, 0.01, 0.1, 0.5, 1.0};
  return v;
}

namespace detail {

// lo + i * step on an integer lattice, so endpoints and 0 are hit exactly.
inline std::vector<double> lattice(int lo_units, int hi_units, double unit) {
  std::vector<double> v;
  for (int i = lo_units; i <= hi_units; ++i) v.push_back(static_cast<double>(i) * unit);
  return v;
}

inline Dataset figure1() {
  Dataset d{"q", "hat_q"};
  for (int i = -190; i <= 600; ++i) {
    const double q = static_cast<double>(i) / 100.0;
    d.add_row({q, conj_hat(q).value()});
  }
  d.meta()["x_range"] = "q in [-1.9, 6], step 0.01";
  return d;
}

inline Dataset figure2() {
  Dataset d{"q", "x", "pdf"};
  const auto xs = lattice(-500, 500, 0.01);
  auto add_curve = [&](const QGaussian& g) {
    for (double x : xs) d.add_row({g.q().value(), x, g.pdf(x)});
  };
  for (double q : figure2_couplings()) {
    const QGaussian g(q, 0.0, 1.0);
    add_curve(g);
    add_curve(conjugate_pair(g, ConjugateMode::preserve_variance));
  }
  d.meta()["sigma_q_sq"] = "1";
  d.meta()["q_values"] = "chosen: 0.5, 1, 2, 5 and their q-hat conjugates (not source data)";
  return d;
}

inline Dataset figure3() {
  Dataset d{"q", "c_q", "c_hat", "ratio"};
  for (int i = 1; i <= 100; ++i) {
    const double q = static_cast<double>(i) * 0.05;
    const double c = c_q(q);
    const double ch = c_q(conj_hat(q));
    d.add_row({q, c, ch, ch / c});
  }
  d.meta()["ratio_closed_form"] = "((2+q)/2)^1.5";
  d.meta()["q_values"] = "chosen: q in [0.05, 5], step 0.05 (not source data)";
  return d;
}

inline Dataset figure4() {
  Dataset d{"q", "w", "value"};
  const auto ws = lattice(0, 1000, 0.05);
  for (double q : figure4_couplings()) {
    for (double w : ws) d.add_row({q, w, qft_uniform_closed(q, w)});
  }
  d.meta()["q_values"] = "chosen: -0.4, -1/3, -0.3, -0.04, -0.01, 0, 0.01, 0.1, 0.5, 1 (not source data)";
  d.meta()["w_range"] = "w in [0, 50], step 0.05";
  return d;
}

}  // namespace detail

inline Dataset figure_dataset(int id) {
  switch (id) {
    case 1: return detail::figure1();
    case 2: return detail::figure2();
    case 3: return detail::figure3();
    case 4: return detail::figure4();
    default:
      throw invalid_argument_error("figure_dataset: id must be in 1.." + std::to_string(kFigureCount) +
                                   ", got " + std::to_string(id));
  }
}

}  // namespace qstat
