#pragma once

// Reduced-size invariant suites run by `qstat selfcheck`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qstat/escort.hpp"
#include "qstat/figures.hpp"
#include "qstat/fit.hpp"
#include "qstat/maps.hpp"
#include "qstat/qcore.hpp"
#include "qstat/qft.hpp"
#include "qstat/qgaussian.hpp"
#include "qstat/qseq.hpp"
#include "qstat/sde.hpp"

namespace qstat {

struct SelfCheckOptions {
  /// Fault injection: the normalization suite uses c_q * (1 + this).
  double c_q_perturbation = 0.0;
  std::uint64_t seed = 20240611;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string detail;  // first failure
  double seconds = 0.0;
};

namespace selfcheck {

// Records the first tolerance violation of a suite.
class Checker {
 public:
  void close(double got, double want, double rel_tol, const std::string& what) {
    const double err = std::abs(got - want);
    if (!(err <= rel_tol * std::max(1.0, std::abs(want)))) fail(what, got, want);
  }
  void abs_close(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) fail(what, got, want);
  }
  void truth(bool ok, const std::string& what) {
    if (!ok && passed_) {
      passed_ = false;
      detail_ = what;
    }
  }
  bool passed() const { return passed_; }
  const std::string& detail() const { return detail_; }

 private:
  void fail(const std::string& what, double got, double want) {
    if (!passed_) return;
    passed_ = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, ": got %.17g, want %.17g", got, want);
    detail_ = what + buf;
  }
  bool passed_ = true;
  std::string detail_;
};

using Suite = std::function<void(Checker&, std::mt19937_64&, const SelfCheckOptions&)>;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline void inverse_pairs(Checker& c, std::mt19937_64& rng, const SelfCheckOptions&) {
  for (int i = 0; i < 200; ++i) {
    const double q = uniform(rng, -1.5, 2.0);
    const double x = uniform(rng, -0.9, 0.9) / std::max(std::abs(q), 1.0);
    c.close(ln_q(q, exp_q(q, x)), x, 1e-12, "ln_q(exp_q(x))");
    const double y = uniform(rng, -0.4, 0.4);
    c.close(q_sub(q, q_add(q, x, y), y), x, 1e-12, "q_sub(q_add(x, y), y)");
    const double u = uniform(rng, 0.5, 2.0), v = uniform(rng, 0.5, 2.0);
    const double p = q_prod(q, u, v);
    if (p > 0.0 && std::isfinite(p)) c.close(q_div(q, p, v), u, 1e-12, "q_div(q_prod(u, v), v)");
  }
}

inline void exponential_identities(Checker& c, std::mt19937_64& rng, const SelfCheckOptions&) {
  for (int i = 0; i < 200; ++i) {
    const double q = uniform(rng, -1.0, 1.0);
    const double x = uniform(rng, -0.4, 0.4), y = uniform(rng, -0.4, 0.4);
    c.close(exp_q(q, x) * exp_q(q, y), exp_q(q, q_add(q, x, y)), 1e-12, "exp_q(x) exp_q(y)");
    c.close(exp_q(q, x + y), q_prod(q, exp_q(q, x), exp_q(q, y)), 1e-12, "exp_q(x + y)");
    const double p = uniform(rng, 0.5, 4.0);
    const auto r = power_rescale(q, x, p);
    c.close(std::pow(exp_q(q, x), p), exp_q(r.q, r.x), 1e-12, "exp_q(x)^p");
  }
}

inline void decay_ode(Checker& c, std::mt19937_64&, const SelfCheckOptions&) {
  for (double q : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    for (double t : {0.1, 0.3, 0.6, 0.9}) {
      const double h = 1e-5 * (1.0 + t);
      const double dy = (exp_q(q, -(t + h)) - exp_q(q, -(t - h))) / (2.0 * h);
      c.close(-dy, std::pow(exp_q(q, -t), 1.0 - q), 1e-6, "decay ode at q=" + std::to_string(q));
    }
  }
}

inline void zero_coupling_limit(Checker& c, std::mt19937_64&, const SelfCheckOptions&) {
  for (double q : {1e-8, -1e-8, 1e-11, -1e-11}) {
    for (int i = -20; i <= 20; ++i) {
      const double x = 0.5 * i;
      const double e = std::exp(x);
      c.close(exp_q(q, x) / e, std::exp(-0.5 * q * x * x), 1e-11, "second-order limit");
      if (std::abs(x) <= 4.0) c.abs_close(exp_q(q, x) / e, 1.0, 1e-7, "exp limit");
    }
  }
}

inline void trig_symmetry(Checker& c, std::mt19937_64& rng, const SelfCheckOptions&) {
  for (int i = 0; i < 100; ++i) {
    const double q = uniform(rng, -0.9, 1.0);
    const double x = uniform(rng, 0.01, 10.0);
    c.close(sin_q(q, -x), -sin_q(q, x), 1e-12, "sin_q odd");
    c.close(sinc_q(q, -x), sinc_q(q, x), 1e-12, "sinc_q even");
  }
}

inline void involutions(Checker& c, std::mt19937_64& rng, const SelfCheckOptions&) {
  for (int i = 0; i < 300; ++i) {
    const double q = uniform(rng, -1.9, 6.0);
    c.close(conj_hat(conj_hat(q)).value(), q, 1e-14, "conj_hat involution");
    if (std::abs(1.0 + q) > 1e-3) c.close(conj_tilde(conj_tilde(q)).value(), q, 1e-14, "conj_tilde involution");
    c.close(translate(translate_inv(q)).value(), q, 1e-14, "translate self-inverse");
  }
}

inline void sequence_identities(Checker& c, std::mt19937_64& rng, const SelfCheckOptions&) {
  for (int i = 0; i < 300; ++i) {
    const double q = uniform(rng, 0.05, 3.0) * (i % 2 ? 1.0 : -0.3);
    for (int n = 1; n <= 5; ++n) {
      c.close(2.0 / q, 1.0 / z_n(q, n).value() + 1.0 / z_n(q, -n).value(), 1e-14 * (2.0 / std::abs(q)),
              "harmonic mean");
      const double a = z_n(q, n - 1).value(), b = z_n(q, n + 1).value();
      c.close(a * b, a - b, 1e-14, "product equals difference");
    }
    c.close(z_n(z_n(q, 2), 3).value(), z_n(q, 5).value(), 1e-13, "semigroup");
    const double qp = translate_inv(q);
    const double oracle = (2.0 * qp + 1.0 * (1.0 - qp)) / (2.0 + 1.0 * (1.0 - qp));
    c.close(translate(oracle).value(), z_n(q, 1).value(), 1e-12, "convention consistency");
    c.close(conj_hat(q).value(), -z_n(q, 1).value(), 1e-15, "conj_hat = -z_1");
  }
}

inline void normalization(Checker& c, std::mt19937_64&, const SelfCheckOptions& o) {
  auto cq = [&](double q) { return c_q(q) * (1.0 + o.c_q_perturbation); };
  c.close(cq(0.0), std::sqrt(std::numbers::pi), 1e-12, "c_q(0)");
  c.close(cq(-1.0), std::numbers::pi, 1e-10, "c_q(-1)");
  for (double q : {-1.5, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    const double beta = 1.7;
    const double m = integrate_qgaussian_kernel(q, beta).value;
    c.close(m, cq(q) / std::sqrt(beta), 1e-8, "kernel integral at q=" + std::to_string(q));
  }
}

inline void entropy_escort(Checker& c, std::mt19937_64& rng, const SelfCheckOptions&) {
  auto random_dist = [&](int n) {
    std::vector<double> p(n);
    double s = 0.0;
    for (double& v : p) s += (v = uniform(rng, 0.01, 1.0));
    for (double& v : p) v /= s;
    return DiscreteDist(p);
  };
  for (int i = 0; i < 30; ++i) {
    const double q = uniform(rng, -1.0, 1.5);
    const auto a = random_dist(3), b = random_dist(4);
    std::vector<double> ab;
    for (double x : a.p())
      for (double y : b.p()) ab.push_back(x * y);
    double s = 0.0;
    for (double v : ab) s += v;
    for (double& v : ab) v /= s;
    const double sa = entropy_discrete(a, q), sb = entropy_discrete(b, q);
    c.close(entropy_discrete(DiscreteDist(ab), q), sa + sb + q * sa * sb, 1e-12, "pseudo-additivity");
    const auto e = coupled_discrete(a, q);
    double z = 0.0;
    for (double x : a.p()) z += x / std::pow(x, q);
    for (std::size_t k = 0; k < a.size(); ++k) c.close(e[k], a[k] / std::pow(a[k], q) / z, 1e-12, "escort form");
  }
}

inline void tails_and_gamma(Checker& c, std::mt19937_64&, const SelfCheckOptions&) {
  for (double q : {-1.5, -1.0, -0.5}) {
    const double slope = std::log(exp_q(q, -1e8) / exp_q(q, -1e6)) / std::log(10.0);
    c.close(slope, 2.0 / q, 0.01 * std::abs(2.0 / q), "tail slope");
  }
  for (double q : {0.25, 0.5, 1.0, 2.0}) {
    const double q1 = z_n(q, 1).value(), q2 = z_n(q, 2).value(), q3 = z_n(q, 3).value();
    c.close(std::tgamma(1.0 / q2) / (std::tgamma(1.0 / q) / q), 1.0, 1e-10, "gamma shift q2");
    c.close(std::tgamma(1.0 / q3) / (std::tgamma(1.0 / q1) / q1), 1.0, 1e-10, "gamma shift q3");
  }
}

inline void transform_normalization(Checker& c, std::mt19937_64&, const SelfCheckOptions&) {
  const std::vector<double> ws{-2.5, -0.7, 0.0, 0.7, 2.5};
  for (double q : {-1.0, -0.5, 0.0, 0.5}) {
    const auto r = qft_numeric(QGaussianFamily::normalized(q, 0.8), q, ws);
    c.abs_close(std::abs(r.values[2] - std::complex<double>(1.0, 0.0)), 0.0, 1e-9, "unit mass at w = 0");
    for (std::size_t i = 0; i < 2; ++i) {
      c.abs_close(std::abs(r.values[i] - std::conj(r.values[4 - i])), 0.0, 1e-9, "hermitian symmetry");
    }
  }
  const auto u = qft_numeric(UniformBox{}, -0.5, ws);
  c.abs_close(std::abs(u.values[2] - std::complex<double>(1.0, 0.0)), 0.0, 1e-9, "uniform unit mass");
}

inline void transform_closed_form(Checker& c, std::mt19937_64&, const SelfCheckOptions&) {
  const std::vector<double> ws{-5.0, -1.3, 0.0, 0.4, 2.0, 5.0};
  for (double q : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0}) {
    const auto cf = qft_qgaussian_closed(1.0, 1.0, q);
    const auto r = qft_numeric(QGaussianFamily(1.0, 1.0, q), q, ws);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      c.abs_close(std::abs(r.values[i] - cf(ws[i])) / cf.A, 0.0, 1e-6, "closed form at q=" + std::to_string(q));
    }
  }
  for (double w : {0.5, 3.0, 9.0}) {
    const auto r = qft_numeric(UniformBox{}, -0.5, std::vector<double>{w});
    c.abs_close(r.values[0].real(), qft_uniform_closed(-0.5, w), 1e-8, "uniform closed form");
  }
}

inline void transform_couplings(Checker& c, std::mt19937_64& rng, const SelfCheckOptions&) {
  for (int i = 0; i < 100; ++i) {
    const double q = uniform(rng, -1.99, 5.0);
    const auto f = qft_qgaussian_closed(1.0, 1.0, q);
    c.close(f.q_out.value(), z_n(q, 1).value(), 1e-15, "output coupling z_1");
    c.truth(f.B > 0.0, "B > 0");
    c.truth(f.subnormalizable() == (q <= -1.0), "subnormalizable iff q <= -1");
    if (std::abs(1.0 + q) > 1e-3 && conj_tilde(q).value() > -2.0) {
      const auto g = cqft_qgaussian_closed(1.0, 1.0, q);
      c.close(g.q_out.value(), conj_hat(q).value(), 1e-13, "conjugate output coupling");
      c.truth(g.q_out.value() > -2.0, "conjugate transform stays normalizable");
    }
  }
  for (double q : {-1.5, -1.2}) {
    const auto f = qft_qgaussian_closed(1.0, 1.0, q);
    const double slope = std::log(f(1e4) / f(1e3)) / std::log(10.0);
    const double want = 2.0 / f.q_out.value();
    c.close(slope, want, 0.01 * std::abs(want), "transform tail slope");
  }
}

inline void sde_coefficients(Checker& c, std::mt19937_64& rng, const SelfCheckOptions&) {
  for (int i = 0; i < 200; ++i) {
    const double M = uniform(rng, 0.0, 2.0), tau = uniform(rng, 0.1, 2.0), A = uniform(rng, 0.1, 2.0);
    const double x = uniform(rng, -5.0, 5.0);
    const auto fp = fp_coefficients(M, tau, A, x);
    c.close(fp.J, -tau * x * (1.0 - M / tau), 1e-12, "drift forms agree");
    c.close(fp.D, A + M * x * x, 1e-12, "diffusion");
    const auto s = predicted_stationary(M, tau, A);
    c.close(coupling_phi(s.q, 2.0), M / tau, 1e-12, "coupling strength M/tau");
  }
}

inline void sde_stationary(Checker& c, std::mt19937_64&, const SelfCheckOptions& o) {
  const auto cfg = SdeConfig::for_samples(0.25, 0.75, 0.5, 20000, 4, o.seed);
  const auto f = fit_qgaussian(simulate(cfg));
  c.abs_close(f.q_est, -0.5, 0.15, "fitted q");
  c.abs_close(f.beta_est, 1.0, 0.2, "fitted beta");
}

inline void figure_datasets(Checker& c, std::mt19937_64&, const SelfCheckOptions&) {
  for (int id = 1; id <= kFigureCount; ++id) {
    const Dataset d = figure_dataset(id);
    const std::size_t qc = d.column_index("q");
    for (const auto& row : d.rows()) c.truth(row[qc] > -2.0, "figure " + std::to_string(id) + " has q <= -2");
  }
  const Dataset f1 = figure_dataset(1), f3 = figure_dataset(3), f4 = figure_dataset(4);
  for (const auto& row : f1.rows()) {
    if (row[0] == 0.0) c.abs_close(row[1], 0.0, 0.0, "figure 1 fixed point");
  }
  for (const auto& row : f3.rows()) c.close(row[3], row[2] / row[1], 1e-12, "figure 3 ratio");
  for (const auto& row : f4.rows()) {
    if (row[0] == 1.0) c.abs_close(row[2], 1.0, 1e-9, "figure 4 at q = 1");
  }
}

struct Named {
  const char* name;
  Suite run;
};

inline std::vector<Named> suites() {
  return {
      {"qcore.inverse-pairs", inverse_pairs},
      {"qcore.exponential-identities", exponential_identities},
      {"qcore.decay-ode", decay_ode},
      {"qcore.zero-coupling-limit", zero_coupling_limit},
      {"qcore.trig-symmetry", trig_symmetry},
      {"qseq.involutions", involutions},
      {"qseq.sequence-identities", sequence_identities},
      {"qdist.normalization", normalization},
      {"qdist.entropy-escort", entropy_escort},
      {"qdist.tails-gamma", tails_and_gamma},
      {"qft.normalization-symmetry", transform_normalization},
      {"qft.closed-form", transform_closed_form},
      {"qft.coupling-rules", transform_couplings},
      {"sde.coefficients", sde_coefficients},
      {"sde.stationary-law", sde_stationary},
      {"cli.figure-datasets", figure_datasets},
  };
}

}  // namespace selfcheck

/// Runs every suite; library errors inside a suite count as failures.
inline std::vector<SuiteResult> run_selfcheck(const SelfCheckOptions& opt = {}) {
  std::vector<SuiteResult> out;
  std::uint64_t k = 0;
  for (const auto& s : selfcheck::suites()) {
    std::mt19937_64 rng(opt.seed + 7919 * ++k);
    selfcheck::Checker c;
    SuiteResult r;
    r.name = s.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      s.run(c, rng, opt);
      r.passed = c.passed();
      r.detail = c.detail();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qstat
