#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qstat/fit.hpp"
#include "qstat/maps.hpp"
#include "qstat/qgaussian.hpp"
#include "qstat/sampling.hpp"
#include "qstat/sde.hpp"

using namespace qstat;

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

TEST(Prediction, Examples) {
  const auto g = predicted_stationary(0.0, 1.5, 0.5);
  EXPECT_EQ(g.q.value(), 0.0);
  EXPECT_DOUBLE_EQ(g.beta, 1.5);
  const auto c = predicted_stationary(0.8, 0.8, 1.0);
  EXPECT_DOUBLE_EQ(c.q.value(), -1.0);
  EXPECT_DOUBLE_EQ(c.q_hat, 2.0);
  const auto p = predicted_stationary(0.25, 0.75, 0.5);
  EXPECT_DOUBLE_EQ(p.q.value(), -0.5);
  EXPECT_DOUBLE_EQ(p.beta, 1.0);
  EXPECT_NEAR(p.q_hat, 2.0 / 3.0, 1e-15);
  EXPECT_THROW(predicted_stationary(-0.1, 1.0, 1.0), domain_error);
}

TEST(SdeProperties, PredictionConsistency) {
  auto g = oracle::rng(71);
  for (int i = 0; i < 500; ++i) {
    const double M = oracle::uniform(g, 0.0, 5.0), tau = oracle::uniform(g, 0.05, 5.0);
    const double A = oracle::uniform(g, 0.05, 5.0);
    const auto p = predicted_stationary(M, tau, A);
    EXPECT_GT(p.q.value(), -2.0);
    EXPECT_LE(p.q.value(), 0.0);
    // The heavy-tailed law is the conjugate of a compact one at 2M/tau.
    EXPECT_LE(std::abs(conj_hat(p.q).value() - p.q_hat), 1e-12 * std::max(1.0, p.q_hat));
    EXPECT_NEAR(2.0 * coupling_phi(p.q, 2.0), p.q_hat, 1e-12 * std::max(1.0, p.q_hat));
  }
}

TEST(FokkerPlanck, Examples) {
  for (double x : {-3.0, 0.2, 7.0}) EXPECT_EQ(fp_coefficients(0.6, 0.6, 1.0, x).J, 0.0);
  EXPECT_DOUBLE_EQ(fp_coefficients(0.3, 1.0, 0.7, 1.0).D, 1.0);
  EXPECT_DOUBLE_EQ(fp_coefficients(0.5, 1.0, 1.0, 2.0).J, -1.0);
}

TEST(SdeProperties, DriftSimplifiedForm) {
  auto g = oracle::rng(72);
  const NoiseShape cubic{[](double x) { return x + x * x * x; }, [](double x) { return 1.0 + 3.0 * x * x; }};
  for (int i = 0; i < 1000; ++i) {
    const double M = oracle::uniform(g, 0.0, 3.0), tau = oracle::uniform(g, 0.1, 3.0);
    const double x = oracle::uniform(g, -10.0, 10.0);
    for (const NoiseShape& s : {NoiseShape{}, cubic}) {
      const auto c = fp_coefficients(M, tau, 0.5, x, s);
      const double f = -tau * s.g(x) * s.dg(x);
      EXPECT_LE(std::abs(c.J - f * (1.0 - M / tau)), 1e-12 * std::max(1.0, std::abs(f)));
      EXPECT_DOUBLE_EQ(c.D, 0.5 + M * s.g(x) * s.g(x));
    }
  }
}

// Zero flux makes the stationary density D^{-1} exp(int J / D); for g(x) = x
// its log-derivative is -(tau + M) x / (A + M x^2), the kernel e_q^{-beta x^2}.
TEST(SdeProperties, StationaryDensityFromCoefficients) {
  const double M = 0.25, tau = 0.75, A = 0.5;
  const auto p = predicted_stationary(M, tau, A);
  for (double x : {-4.0, -0.5, 0.3, 2.0, 9.0}) {
    const auto c = fp_coefficients(M, tau, A, x);
    const double dD = 2.0 * M * x;
    const double zero_flux = (c.J - dD) / c.D;
    const double kernel = oracle::d1([&](double y) { return std::log(exp_q(p.q, -p.beta * y * y)); }, x);
    EXPECT_NEAR(zero_flux, kernel, 1e-8 * std::max(1.0, std::abs(kernel)));
  }
}

TEST(Simulate, OrnsteinUhlenbeckVariance) {
  const auto cfg = SdeConfig::for_samples(0.0, 1.0, 0.5, 100000, 4, 7);
  const auto xs = simulate(cfg);
  ASSERT_GE(xs.size(), 100000u);
  EXPECT_NEAR(variance(xs), 0.5, 0.05 * 0.5);
  EXPECT_NEAR(mean(xs), 0.0, 0.02);
}

TEST(Simulate, Deterministic) {
  auto cfg = SdeConfig::for_samples(0.25, 0.75, 0.5, 5000, 3, 99);
  const auto a = simulate(cfg);
  EXPECT_EQ(a, simulate(cfg));
  cfg.seed = 100;
  EXPECT_NE(a, simulate(cfg));
  // Path p's output is the same whether or not later paths are simulated.
  auto one = SdeConfig::for_samples(0.25, 0.75, 0.5, 5000, 3, 99);
  one.n_paths = 1;
  const auto b = simulate(one);
  ASSERT_LE(b.size(), a.size());
  EXPECT_TRUE(std::equal(b.begin(), b.end(), a.begin()));
}

TEST(Simulate, HistogramMatchesPrediction) {
  const double M = 0.25, tau = 0.75, A = 0.5;
  const auto xs = simulate(SdeConfig::for_samples(M, tau, A, 100000, 4, 2024));
  const auto p = predicted_stationary(M, tau, A);
  const QGaussian law = QGaussian::from_beta(p.q, 0.0, p.beta);
  constexpr int kBins = 200;
  const double lo = -25.0, hi = 25.0, h = (hi - lo) / kBins;
  std::vector<double> counts(kBins, 0.0);
  for (double x : xs) {
    const int b = static_cast<int>(std::floor((x - lo) / h));
    if (b >= 0 && b < kBins) counts[b] += 1.0;
  }
  double sup = 0.0;
  for (int b = 0; b < kBins; ++b) {
    const double a = lo + b * h;
    const double expected = oracle::integral([&](double x) { return law.pdf(x); }, a, a + h) / h;
    sup = std::max(sup, std::abs(counts[b] / (xs.size() * h) - expected));
  }
  EXPECT_LE(sup, 0.02);
}

TEST(Simulate, Errors) {
  SdeConfig c = SdeConfig::for_samples(0.0, 1.0, 1.0, 100, 1, 1);
  c.dt = 0.2;
  EXPECT_THROW(simulate(c), domain_error);
  c = SdeConfig::for_samples(0.0, 1.0, 1.0, 100, 1, 1);
  c.burn_in = c.steps;
  EXPECT_THROW(simulate(c), domain_error);
  c = SdeConfig::for_samples(0.0, 1.0, 1.0, 100, 1, 1);
  c.A = 0.0;
  EXPECT_THROW(simulate(c), domain_error);
  // A drift pushing outward with a cubic shape blows up quickly.
  c = SdeConfig::for_samples(5.0, 0.5, 1.0, 1000, 1, 1);
  c.shape = {[](double x) { return x * x; }, [](double x) { return 2.0 * x; }};
  c.x0 = 3.0;
  EXPECT_THROW(simulate(c), instability_error);
}

TEST(FitQGaussian, Examples) {
  const auto heavy = sample_qgaussian(QGaussian(-0.5, 0.0, 1.0), 100000, 11);
  const auto r = fit_qgaussian(heavy);
  EXPECT_TRUE(r.converged);
  EXPECT_GE(r.q_est, -0.55);
  EXPECT_LE(r.q_est, -0.45);
  EXPECT_EQ(r.n, 100000u);
  EXPECT_GT(r.beta_est, 0.0);

  const auto normal = sample_qgaussian(QGaussian(0.0, 0.0, 1.0), 100000, 12);
  const auto n = fit_qgaussian(normal);
  EXPECT_GE(n.q_est, -0.05);
  EXPECT_LE(n.q_est, 0.05);
  EXPECT_NEAR(n.beta_est, 0.5, 0.02);

  EXPECT_THROW(fit_qgaussian(std::vector<double>(500, 0.0)), insufficient_data_error);
}

TEST(FitQGaussian, RecoversLocationAndCompactCouplings) {
  for (double q : {0.5, -1.0}) {
    const QGaussian g(q, 2.5, 0.7);
    const auto r = fit_qgaussian(sample_qgaussian(g, 50000, 13));
    EXPECT_NEAR(r.q_est, q, 0.08) << q;
    EXPECT_NEAR(r.mu_est, 2.5, 0.03) << q;
    EXPECT_LE(oracle::rel_err(r.beta_est, g.beta()), 0.1) << q;
    EXPECT_GE(r.loglik, qgaussian_loglik(sample_qgaussian(g, 50000, 13), q, 2.5, g.beta()) - 1e-6);
  }
}

TEST(SdeProperties, EndToEnd) {
  const double M = 0.25, tau = 0.75, A = 0.5;
  const auto r = fit_qgaussian(simulate(SdeConfig::for_samples(M, tau, A, 100000, 4, 5)));
  EXPECT_LE(std::abs(r.q_est + 0.5), 0.15);
  EXPECT_LE(std::abs(r.beta_est - 1.0), 0.2);
  // conj_hat is increasing in -q, so the q window maps onto [q_hat(-0.35), q_hat(-0.65)].
  const double q_hat = conj_hat(r.q_est).value();
  EXPECT_GE(q_hat, conj_hat(-0.35).value());
  EXPECT_LE(q_hat, conj_hat(-0.65).value());
  EXPECT_LE(std::abs(q_hat - 2.0 * M / tau), 0.3);
}

TEST(SdeProperties, FitBiasAcrossSeeds) {
  std::vector<double> qs;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    qs.push_back(fit_qgaussian(simulate(SdeConfig::for_samples(0.25, 0.75, 0.5, 100000, 4, seed))).q_est);
  }
  const double se = std::sqrt(variance(qs) / qs.size());
  EXPECT_LE(std::abs(mean(qs) + 0.5), 3.0 * se) << "mean " << mean(qs) << " se " << se;
}

}  // namespace
