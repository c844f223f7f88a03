// Tour of the library: q-algebra, a conjugate q-Gaussian pair, a q-Fourier
// transform checked against its closed form, and a multiplicative-noise run.

#include <cstdio>
#include <vector>

#include "qstat/qstat.hpp"

int main() {
  using namespace qstat;

  const Coupling q = 0.5;
  std::printf("exp_q(0.5, 1.2)      = %.12g\n", exp_q(q, 1.2));
  std::printf("ln_q(0.5, exp_q(..)) = %.12g\n", ln_q(q, exp_q(q, 1.2)));
  std::printf("q-hat of 0.5         = %.12g\n", conj_hat(q).value());

  const QGaussian g(q, 0.0, 1.0);
  const QGaussian h = conjugate_pair(g, ConjugateMode::preserve_variance);
  std::printf("support of G_0.5     = [%.6g, %.6g], conjugate q = %.6g\n", g.support().lo, g.support().hi,
              h.q().value());

  const std::vector<double> ws{0.0, 1.0, 2.0};
  const auto numeric = qft_numeric(QGaussianFamily::normalized(-0.5, 1.0), -0.5, ws);
  const auto closed = qft_qgaussian_closed(1.0 / c_q(-0.5), 1.0, -0.5);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    std::printf("F_q[G](%g): numeric %.12g, closed form %.12g\n", ws[i], numeric.values[i].real(), closed(ws[i]));
  }

  const auto prediction = predicted_stationary(0.25, 0.75, 0.5);
  const auto samples = simulate(SdeConfig::for_samples(0.25, 0.75, 0.5, 20000, 4, 1));
  const auto fit = fit_qgaussian(samples);
  std::printf("stationary law: predicted q = %.4g, beta = %.4g; fitted q = %.4g, beta = %.4g\n",
              prediction.q.value(), prediction.beta, fit.q_est, fit.beta_est);
  return 0;
}
