#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qstat/qft.hpp"

using namespace qstat;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = lo + (hi - lo) * i / (n - 1);
  return w;
}

// Real part of the transform of an even input by Boost quadrature, with the
// complex q-exponential written as std::pow(1 + i q y, 1/q).
template <class F>
double direct_oracle(F f, double q, double w, double half_width = 0.0) {
  auto g = [=](double x) {
    const double fx = f(x);
    if (!(fx > 0.0)) return 0.0;
    if (q == 0.0) return fx * std::cos(x * w);
    const std::complex<double> z(1.0, q * x * w * std::pow(fx, -q));
    return (fx * std::pow(z, 1.0 / q)).real();
  };
  return oracle::integral_even(g, half_width);
}

double linf_rel(const TransformResult& r, const ClosedFormQGaussian& c) {
  double e = 0.0;
  for (std::size_t i = 0; i < r.ws.size(); ++i) {
    const double want = c(r.ws[i]);
    e = std::max(e, std::abs(r.values[i] - want) / std::abs(want));
  }
  return e;
}

TEST(ClosedForm, Examples) {
  const auto g = qft_qgaussian_closed(1.0, 1.0, 0.0);
  EXPECT_NEAR(g.A, std::sqrt(kPi), 1e-15);
  EXPECT_DOUBLE_EQ(g.B, 0.25);
  EXPECT_EQ(g.q_out.value(), 0.0);
  EXPECT_FALSE(g.subnormalizable());

  const auto c = qft_qgaussian_closed(1.0, 1.0, -1.0);
  EXPECT_NEAR(c.A, kPi, 1e-14);
  EXPECT_DOUBLE_EQ(c.B, 0.125);
  EXPECT_DOUBLE_EQ(c.q_out.value(), -2.0);
  EXPECT_TRUE(c.subnormalizable());
  for (double w : {0.0, 0.3, 1.0, 2.0, 4.0}) {
    EXPECT_LE(oracle::rel_err(c(w), direct_oracle([](double x) { return 1.0 / (1.0 + x * x); }, -1.0, w)), 1e-8);
  }
  EXPECT_THROW(qft_qgaussian_closed(1.0, 1.0, -2.0), domain_error);
  EXPECT_THROW(qft_qgaussian_closed(0.0, 1.0, 0.5), domain_error);
}

TEST(QftProperties, ClosedFormCoefficients) {
  auto g = oracle::rng(51);
  for (int i = 0; i < 500; ++i) {
    const double q = oracle::uniform(g, -1.99, 6.0);
    const double a = std::exp(oracle::uniform(g, -2.0, 2.0)), beta = std::exp(oracle::uniform(g, -2.0, 2.0));
    const auto c = qft_qgaussian_closed(a, beta, q);
    EXPECT_GT(c.B, 0.0);
    EXPECT_GT(c.A, 0.0);
    EXPECT_DOUBLE_EQ(c.q_out.value(), 2.0 * q / (2.0 + q));
    EXPECT_EQ(c.subnormalizable(), q <= -1.0);
    // The conjugate transform is defined for q > -1 and stays normalizable.
    if (q <= -1.0) {
      EXPECT_THROW(cqft_qgaussian_closed(a, beta, q), std::exception);
      continue;
    }
    const auto h = cqft_qgaussian_closed(a, beta, q);
    EXPECT_DOUBLE_EQ(h.q_out.value(), conj_hat(q).value());
    EXPECT_GT(h.q_out.value(), -2.0);
    EXPECT_FALSE(h.subnormalizable());
  }
}

// Quadrature of the defining integral for q <= 0, against the closed form.
TEST(QftNumeric, MatchesIndependentQuadrature) {
  for (double q : {-1.5, -1.0, -0.5, -0.2}) {
    const double beta = 0.8;
    auto f = [=](double x) { return oracle::exp_q(q, -beta * x * x); };
    const std::vector<double> ws{0.0, 0.5, 1.5, 3.0};
    const auto r = qft_numeric(QGaussianFamily(1.0, beta, q), q, ws);
    const auto c = qft_qgaussian_closed(1.0, beta, q);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const double want = direct_oracle(f, q, ws[i]);
      EXPECT_LE(oracle::rel_err(r.values[i].real(), want), 1e-7) << q << " " << ws[i];
      EXPECT_LE(oracle::rel_err(c(ws[i]), want), 1e-7) << q << " " << ws[i];
    }
  }
}

TEST(QftProperties, OracleAgreement) {
  const auto ws = grid(-5.0, 5.0, 41);
  for (double q : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0}) {
    const auto r = qft_numeric(QGaussianFamily(1.0, 1.0, q), q, ws);
    EXPECT_LE(linf_rel(r, qft_qgaussian_closed(1.0, 1.0, q)), 1e-6) << q;
    EXPECT_LE(r.est_abs_error, 1e-8) << q;
  }
  // Non-unit amplitude moves B through a^{2q}.
  for (double q : {-0.7, 0.8}) {
    const auto r = qft_numeric(QGaussianFamily(2.5, 0.6, q), q, ws);
    EXPECT_LE(linf_rel(r, qft_qgaussian_closed(2.5, 0.6, q)), 1e-6) << q;
  }
}

TEST(QftProperties, UnitMassAtZeroFrequency) {
  const std::vector<double> w0{0.0};
  for (double q : {-1.6, -1.0, -0.3, 0.0, 0.4, 1.0, 3.0}) {
    const auto r = qft_numeric(QGaussianFamily::normalized(q, 1.7), q, w0);
    EXPECT_NEAR(r.values[0].real(), 1.0, 1e-9) << q;
    EXPECT_NEAR(r.values[0].imag(), 0.0, 1e-9) << q;
  }
  for (double q : {-0.9, -0.5, 0.0, 0.5, 1.0}) {
    EXPECT_NEAR(qft_numeric(UniformBox{}, q, w0).values[0].real(), 1.0, 1e-9) << q;
  }
  for (double q : {-0.5, 0.0}) {
    const QAlphaFamily f = q_alpha_normalize(QAlphaFamily(q, 1.3, 1.0, 1.0));
    EXPECT_NEAR(qft_numeric(f, q, w0).values[0].real(), 1.0, 1e-8) << q;
  }
}

TEST(QftProperties, HermitianSymmetry) {
  const auto ws = grid(-4.0, 4.0, 17);
  for (double q : {-1.2, -0.5, 0.0, 0.6}) {
    const auto r = qft_numeric(QGaussianFamily(1.0, 1.0, q), q, ws);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const auto& a = r.values[i];
      const auto& b = r.values[ws.size() - 1 - i];
      EXPECT_NEAR(a.real(), b.real(), 1e-12);
      EXPECT_NEAR(a.imag(), -b.imag(), 1e-12);
      EXPECT_LE(std::abs(a.imag()), std::max(r.est_abs_error, 1e-12));
    }
  }
}

TEST(QftNumeric, ClassicalGaussian) {
  const auto ws = grid(-8.0, 8.0, 33);
  const auto r = qft_numeric(QGaussianFamily(1.0, 1.0, 0.0), 0.0, ws);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    EXPECT_NEAR(r.values[i].real(), std::sqrt(kPi) * std::exp(-ws[i] * ws[i] / 4.0), 1e-9);
  }
}

TEST(QftNumeric, UniformMatchesClosedForm) {
  const auto ws = grid(-10.0, 10.0, 81);
  for (double q : {-0.5, 0.0}) {
    const auto r = qft_numeric(UniformBox{}, q, ws);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      EXPECT_NEAR(r.values[i].real(), qft_uniform_closed(q, ws[i]), 1e-8) << q << " " << ws[i];
      EXPECT_NEAR(r.values[i].imag(), 0.0, 1e-8);
    }
  }
  // Positive couplings keep the same functional form.
  for (double q : {0.3, 1.0}) {
    const auto r = qft_numeric(UniformBox{}, q, ws);
    for (std::size_t i = 0; i < ws.size(); ++i) EXPECT_NEAR(r.values[i].real(), qft_uniform_closed(q, ws[i]), 1e-8);
  }
}

// The q < 0 uniform closed form against Boost quadrature over [-1, 1].
TEST(UniformClosed, MatchesIndependentQuadrature) {
  for (double q : {-0.8, -0.5, -0.1}) {
    for (double w : {0.7, 3.0, 9.0}) {
      const double want = direct_oracle([](double x) { return std::abs(x) <= 1.0 ? 0.5 : 0.0; }, q, w, 1.0);
      EXPECT_NEAR(qft_uniform_closed(q, w), want, 1e-10) << q << " " << w;
    }
  }
}

int sign_changes(double q, double w_max, double dw) {
  int n = 0;
  double prev = qft_uniform_closed(q, dw);
  for (double w = 2.0 * dw; w <= w_max + 1e-12; w += dw) {
    const double cur = qft_uniform_closed(q, w);
    if ((cur < 0.0) != (prev < 0.0)) ++n;
    prev = cur;
  }
  return n;
}

TEST(UniformClosed, Examples) {
  for (double w : {-3.0, 0.5, 7.0}) EXPECT_NEAR(qft_uniform_closed(0.0, w), std::sin(w) / w, 1e-15);
  EXPECT_EQ(qft_uniform_closed(0.0, 0.0), 1.0);
  for (double w : grid(-50.0, 50.0, 201)) EXPECT_NEAR(qft_uniform_closed(1.0, w), 1.0, 1e-9);
  EXPECT_GE(sign_changes(-0.3, 50.0, 0.01), 1);
  EXPECT_EQ(sign_changes(-0.4, 50.0, 0.01), 0);
  EXPECT_THROW(qft_uniform_closed(-1.0, 1.0), pole_error);
  EXPECT_THROW(qft_uniform_closed(-2.0, 1.0), domain_error);
}

TEST(Conjugate, UniformExamples) {
  for (double w : {-2.0, 0.4, 6.0}) EXPECT_NEAR(cqft_uniform_closed(0.0, w), std::sin(w) / w, 1e-15);
  // Regions swap: the conjugate oscillates below q = 1/2 (q-tilde above the
  // critical -1/3) and is free of zeros from there on.
  auto changes = [](double q) {
    int n = 0;
    double prev = cqft_uniform_closed(q, 0.01);
    for (double w = 0.02; w <= 50.0; w += 0.01) {
      const double cur = cqft_uniform_closed(q, w);
      if ((cur < 0.0) != (prev < 0.0)) ++n;
      prev = cur;
    }
    return n;
  };
  EXPECT_GE(changes(0.2), 1);
  EXPECT_GE(changes(0.0), 2);
  EXPECT_EQ(changes(0.5), 0);
  EXPECT_EQ(changes(0.8), 0);
  EXPECT_THROW(cqft_uniform_closed(-1.0, 1.0), pole_error);

  auto g = oracle::rng(61);
  for (int i = 0; i < 300; ++i) {
    const double q = oracle::uniform(g, -0.9, 4.0), w = oracle::uniform(g, -20.0, 20.0);
    EXPECT_NEAR(cqft_uniform_closed(q, w), qft_uniform_closed(conj_tilde(q), w), 1e-12);
  }
}

TEST(Conjugate, NumericMatchesClosedForm) {
  const auto ws = grid(-5.0, 5.0, 21);
  const std::vector<double> w0{0.0};
  EXPECT_EQ(cqft_numeric(QGaussianFamily(1.0, 1.0, 0.0), 0.0, ws).values,
            qft_numeric(QGaussianFamily(1.0, 1.0, 0.0), 0.0, ws).values);
  for (double q : {-0.6, 0.5, 1.0, 3.0}) {
    const auto r = cqft_numeric(QGaussianFamily(1.0, 1.0, q), q, ws);
    EXPECT_LE(linf_rel(r, cqft_qgaussian_closed(1.0, 1.0, q)), 1e-6) << q;
    const auto u = cqft_numeric(UniformBox{}, q, ws);
    for (std::size_t i = 0; i < ws.size(); ++i) EXPECT_NEAR(u.values[i].real(), cqft_uniform_closed(q, ws[i]), 1e-8);
  }
  const auto one = cqft_qgaussian_closed(1.0, 2.0, 1.0);
  EXPECT_NEAR(one.A, c_q(-0.5) / std::sqrt(2.0), 1e-14);
  EXPECT_DOUBLE_EQ(one.q_out.value(), -2.0 / 3.0);
  // Compact input, heavy-tailed output; and the reverse.
  EXPECT_LT(cqft_qgaussian_closed(1.0, 1.0, 0.7).q_out.value(), 0.0);
  EXPECT_GT(cqft_qgaussian_closed(1.0, 1.0, -0.6).q_out.value(), 0.0);
  EXPECT_THROW(cqft_numeric(UniformBox{}, -1.0, w0), pole_error);
  EXPECT_THROW(cqft_qgaussian_closed(1.0, 1.0, -1.0), pole_error);
  // q-tilde = -q / (1 + q) is at or below -2 for every q in (-2, -1).
  EXPECT_THROW(cqft_numeric(UniformBox{}, -1.5, w0), domain_error);
  EXPECT_THROW(cqft_qgaussian_closed(1.0, 1.0, -1.2), domain_error);
  EXPECT_NO_THROW(cqft_qgaussian_closed(1.0, 1.0, -0.9));
}

TEST(QftNumeric, Errors) {
  const std::vector<double> ws{0.0, 1.0};
  const auto box = DensityGrid::sample([](double x) { return std::abs(x) <= 1.0 ? 0.5 : 0.0; }, -2.0, 2.0, 401);
  EXPECT_THROW(qft_numeric(box, 0.5, ws), unsupported_input_error);
  EXPECT_THROW(qft_numeric(QGaussianFamily(1.0, 1.0, 0.3), 0.5, ws), unsupported_input_error);
  EXPECT_THROW(qft_numeric(QAlphaFamily(0.5, 1.0, 1.0, 1.0), 0.5, ws), unsupported_input_error);
  EXPECT_THROW(qft_numeric(UniformBox{}, -2.0, ws), domain_error);
  EXPECT_THROW(qft_numeric(QAlphaFamily(-1.2, 1.0, 1.0, 1.0), -0.5, ws), domain_error);
  EXPECT_THROW(QGaussianFamily(1.0, 1.0, -2.0), domain_error);
}

TEST(QftNumeric, GridInputs) {
  const auto ws = grid(-6.0, 6.0, 13);
  const auto box = DensityGrid::sample([](double x) { return std::abs(x) <= 1.0 ? 0.5 : 0.0; }, -1.0, 1.0, 20001);
  for (double q : {-0.5, 0.0}) {
    const auto r = qft_numeric(box, q, ws);
    for (std::size_t i = 0; i < ws.size(); ++i) EXPECT_NEAR(r.values[i].real(), qft_uniform_closed(q, ws[i]), 1e-6);
  }
  const QGaussianFamily fam = QGaussianFamily::normalized(-0.4, 1.0);
  const auto g = DensityGrid::sample(fam, -400.0, 400.0, 400001);
  const auto r = qft_numeric(g, -0.4, ws);
  const auto c = qft_qgaussian_closed(fam.a, fam.beta, -0.4);
  for (std::size_t i = 0; i < ws.size(); ++i) EXPECT_NEAR(r.values[i].real(), c(ws[i]), 1e-4);
}

TEST(QftProperties, TransformTailExponent) {
  for (double q : {-1.5, -1.2}) {
    const auto c = qft_qgaussian_closed(1.0, 1.0, q);
    const double slope = std::log(c(1e5) / c(1e4)) / std::log(10.0);
    const double q1 = c.q_out.value();
    EXPECT_LE(std::abs(slope - 2.0 / q1), 0.01 * std::abs(2.0 / q1)) << q;
  }
}

TEST(QftProperties, PointwiseIndependentOfGridOrder) {
  const std::vector<double> a{-3.0, -1.0, 0.0, 0.5, 2.0};
  const std::vector<double> b{2.0, 0.5, 0.0, -1.0, -3.0};
  for (double q : {-0.8, 0.7}) {
    const auto ra = qft_numeric(QGaussianFamily(1.0, 1.0, q), q, a);
    const auto rb = qft_numeric(QGaussianFamily(1.0, 1.0, q), q, b);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(ra.values[i], rb.values[a.size() - 1 - i]);
    EXPECT_EQ(ra.values, qft_numeric(QGaussianFamily(1.0, 1.0, q), q, a).values);
  }
}

}  // namespace
