#pragma once

// Maximum-likelihood fit of a q-Gaussian (q, mu, beta) to samples.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "qstat/coupling.hpp"
#include "qstat/errors.hpp"
#include "qstat/qcore.hpp"
#include "qstat/qgaussian.hpp"

namespace qstat {

struct FitReport {
  double q_est = 0.0;
  double beta_est = 1.0;
  double mu_est = 0.0;
  double loglik = 0.0;
  std::size_t n = 0;
  bool converged = false;
  std::size_t evaluations = 0;
};

struct FitOptions {
  double tol = 1e-8;               // spread of the simplex in mean log-likelihood
  std::size_t max_evaluations = 10000;
  std::size_t min_samples = 1000;
};

/// Sum of log q-Gaussian densities, -inf when a sample lies outside the
/// support.
inline double qgaussian_loglik(std::span<const double> xs, Coupling q, double mu, double beta) {
  const double k = q.value();
  if (!(k > -2.0) || !(beta > 0.0)) return -std::numeric_limits<double>::infinity();
  const double log_norm = 0.5 * std::log(beta) - std::log(c_q(q));
  double s = 0.0;
  if (q.is_zero()) {
    for (double x : xs) s -= beta * (x - mu) * (x - mu);
  } else {
    for (double x : xs) {
      const double u = 1.0 - k * beta * (x - mu) * (x - mu);
      if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
      s += std::log(u);
    }
    s /= k;
  }
  return s + static_cast<double>(xs.size()) * log_norm;
}

namespace detail {

// Quantile of the beta = 1, mu = 0 q-Gaussian.
inline double qgaussian_std_quantile(double q, double p) {
  if (std::abs(q) <= kZeroCouplingTol) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), p) / std::sqrt(2.0);
  }
  if (q < 0.0) {
    const double nu = -2.0 / q - 1.0;
    const double t = boost::math::quantile(boost::math::students_t_distribution<double>(nu), p);
    return t * std::sqrt((nu + 1.0) / (2.0 * nu));
  }
  const double shape = 1.0 / q + 1.0;
  const double b = boost::math::quantile(boost::math::beta_distribution<double>(shape, shape), p);
  return (2.0 * b - 1.0) / std::sqrt(q);
}

inline double tail_ratio(double q) {
  return (qgaussian_std_quantile(q, 0.99) - qgaussian_std_quantile(q, 0.01)) /
         (qgaussian_std_quantile(q, 0.75) - qgaussian_std_quantile(q, 0.25));
}

inline double empirical_quantile(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(h));
  const std::size_t j = std::min(i + 1, sorted.size() - 1);
  return sorted[i] + (h - static_cast<double>(i)) * (sorted[j] - sorted[i]);
}

struct StartPoint {
  double q, mu, beta;
};

// Moment-free start: q from the 98%/50% range ratio, beta from the
// interquartile range at that q, mu from the median.
inline StartPoint quantile_start(std::span<const double> xs) {
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  const double iqr = empirical_quantile(s, 0.75) - empirical_quantile(s, 0.25);
  const double wide = empirical_quantile(s, 0.99) - empirical_quantile(s, 0.01);
  if (!(iqr > 0.0)) throw insufficient_data_error("fit_qgaussian: samples have zero interquartile range");
  const double target = wide / iqr;
  // tail_ratio decreases in q; bracket on (-1.9, 20).
  double lo = -1.9, hi = 20.0;
  double q0;
  if (target >= tail_ratio(lo)) {
    q0 = lo;
  } else if (target <= tail_ratio(hi)) {
    q0 = hi;
  } else {
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (tail_ratio(mid) > target ? lo : hi) = mid;
    }
    q0 = 0.5 * (lo + hi);
  }
  const double z = qgaussian_std_quantile(q0, 0.75) - qgaussian_std_quantile(q0, 0.25);
  const double beta0 = (z / iqr) * (z / iqr);
  return {q0, empirical_quantile(s, 0.5), beta0};
}

}  // namespace detail

/// Nelder-Mead maximization of the log-likelihood over (q, mu, ln beta),
/// started from sample quantiles. A compact-support start that excludes a
/// sample is widened until every sample is inside the support.
inline FitReport fit_qgaussian(std::span<const double> xs, const FitOptions& opt = {}) {
  if (xs.size() < opt.min_samples) {
    throw insufficient_data_error("fit_qgaussian: need at least " + std::to_string(opt.min_samples) +
                                  " samples, got " + std::to_string(xs.size()));
  }
  for (double x : xs) {
    if (!std::isfinite(x)) throw invalid_argument_error("fit_qgaussian: non-finite sample");
  }
  const double n = static_cast<double>(xs.size());
  using Point = std::array<double, 3>;
  std::size_t evals = 0;
  // Objective: negative mean log-likelihood.
  auto objective = [&](const Point& p) {
    ++evals;
    const double v = qgaussian_loglik(xs, Coupling(p[0]), p[1], std::exp(p[2]));
    return std::isfinite(v) ? -v / n : std::numeric_limits<double>::infinity();
  };

  auto start = detail::quantile_start(xs);
  Point x0{start.q, start.mu, std::log(start.beta)};
  for (int widen = 0; widen < 200 && !std::isfinite(objective(x0)); ++widen) x0[2] -= 0.05;
  if (!std::isfinite(objective(x0))) throw domain_error("fit_qgaussian: no feasible starting point");

  const std::array<double, 3> step{0.1, 0.1 / std::sqrt(start.beta), 0.2};
  std::array<Point, 4> simplex;
  std::array<double, 4> fv;
  auto build = [&](const Point& base) {
    simplex[0] = base;
    for (int i = 0; i < 3; ++i) {
      simplex[i + 1] = base;
      simplex[i + 1][i] += step[i];
      if (!std::isfinite(objective(simplex[i + 1]))) simplex[i + 1][i] = base[i] - step[i];
    }
    for (int i = 0; i < 4; ++i) fv[i] = objective(simplex[i]);
  };

  bool converged = false;
  // Two passes: the restart rebuilds the simplex around the first optimum so a
  // collapsed simplex cannot stall on a ridge.
  for (int pass = 0; pass < 2 && evals < opt.max_evaluations; ++pass) {
    build(pass == 0 ? x0 : simplex[0]);
    converged = false;
    while (evals < opt.max_evaluations) {
      std::array<int, 4> order{0, 1, 2, 3};
      std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
      std::array<Point, 4> s2;
      std::array<double, 4> f2;
      for (int i = 0; i < 4; ++i) {
        s2[i] = simplex[order[i]];
        f2[i] = fv[order[i]];
      }
      simplex = s2;
      fv = f2;
      if (std::isfinite(fv[3]) && fv[3] - fv[0] <= opt.tol) {
        converged = true;
        break;
      }
      Point c{0, 0, 0};
      for (int i = 0; i < 3; ++i)
        for (int d = 0; d < 3; ++d) c[d] += simplex[i][d] / 3.0;
      auto along = [&](double t) {
        Point p;
        for (int d = 0; d < 3; ++d) p[d] = c[d] + t * (simplex[3][d] - c[d]);
        return p;
      };
      const Point xr = along(-1.0);
      const double fr = objective(xr);
      if (fr < fv[0]) {
        const Point xe = along(-2.0);
        const double fe = objective(xe);
        if (fe < fr) {
          simplex[3] = xe;
          fv[3] = fe;
        } else {
          simplex[3] = xr;
          fv[3] = fr;
        }
      } else if (fr < fv[2]) {
        simplex[3] = xr;
        fv[3] = fr;
      } else {
        const Point xc = fr < fv[3] ? along(-0.5) : along(0.5);
        const double fc = objective(xc);
        if (fc < std::min(fr, fv[3])) {
          simplex[3] = xc;
          fv[3] = fc;
        } else {
          for (int i = 1; i < 4; ++i) {
            for (int d = 0; d < 3; ++d) simplex[i][d] = simplex[0][d] + 0.5 * (simplex[i][d] - simplex[0][d]);
            fv[i] = objective(simplex[i]);
          }
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  FitReport r;
  r.q_est = simplex[best][0];
  r.mu_est = simplex[best][1];
  r.beta_est = std::exp(simplex[best][2]);
  r.loglik = -fv[best] * n;
  r.n = xs.size();
  r.converged = converged;
  r.evaluations = evals;
  return r;
}

}  // namespace qstat
