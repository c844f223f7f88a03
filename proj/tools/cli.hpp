#pragma once

// Command-line front end: `qstat <subcommand> ...`.
//
// Exit codes: 0 success, 1 library (domain / numeric / I/O) error with its
// typed name on stderr, 2 usage error.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "qstat/qstat.hpp"

namespace qstat::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutFormat { text, csv, json };

// Bare values in shortest round-trip form, one row per line.
inline void emit_text(const Dataset& d, std::ostream& os) {
  for (const auto& row : d.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      char buf[32];
      const auto end = std::to_chars(buf, buf + sizeof buf, row[j]).ptr;
      os << (j ? "," : "") << std::string_view(buf, static_cast<std::size_t>(end - buf));
    }
    os << '\n';
  }
}

struct Output {
  std::optional<OutFormat> format;
  std::string path;

  void add_to(CLI::App* app) {
    static const std::map<std::string, OutFormat> names{
        {"text", OutFormat::text}, {"csv", OutFormat::csv}, {"json", OutFormat::json}};
    app->add_option("--format", format, "text | csv | json")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
    app->add_option("--out", path, "output file (default stdout)");
  }

  void write(const Dataset& d, OutFormat fallback, std::ostream& out) const {
    std::ofstream file;
    std::ostream* os = &out;
    if (!path.empty()) {
      file.open(path);
      if (!file) throw io_error("cannot open " + path + " for writing");
      os = &file;
    }
    switch (format.value_or(fallback)) {
      case OutFormat::text: emit_text(d, *os); break;
      case OutFormat::csv: emit(d, Format::csv, *os); break;
      case OutFormat::json: emit(d, Format::json, *os); break;
    }
    os->flush();
    if (!*os) throw io_error("write failed");
  }
};

inline Dataset scalar(const char* name, double v) {
  Dataset d{name};
  d.add_row({v});
  return d;
}

inline Dataset pair(const char* a, double x, const char* b, double y) {
  Dataset d{a, b};
  d.add_row({x, y});
  return d;
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag, const std::string& cmd) {
  if (!v) throw UsageError(cmd + " requires " + flag);
  return *v;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw UsageError("--n must be >= 1");
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return v;
}

inline std::vector<double> read_numbers(const std::string& path) {
  std::ifstream file;
  std::istream* is = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw io_error("cannot open " + path);
    is = &file;
  }
  std::vector<double> v;
  std::string tok;
  while (*is >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw invalid_argument_error("not a number in " + path + ": " + tok);
    }
  }
  return v;
}

inline Dataset fit_dataset(const FitReport& f) {
  Dataset d{"q_est", "beta_est", "mu_est", "loglik", "n", "converged"};
  d.add_row({f.q_est, f.beta_est, f.mu_est, f.loglik, static_cast<double>(f.n), f.converged ? 1.0 : 0.0});
  return d;
}

struct Params {
  std::optional<double> q, x, y, a, p, alpha, mu, sigma_sq, beta, nu, kappa, qprime, im;
  std::optional<int> n, sign;
  std::vector<double> xs;
};

inline void add_eval(CLI::App& app, Params& P, Output& out, std::string& fn) {
  auto* s = app.add_subcommand("eval", "evaluate a q-deformed function");
  s->add_option("function", fn, "function name")
      ->required()
      ->check(CLI::IsMember({"exp_q", "ln_q", "q_add", "q_sub", "q_prod", "q_div", "q_add_n", "q_prod_n",
                             "power_rescale", "exp_q_complex", "sin_q", "sinc_q", "dn_exp_q", "intn_exp_q"}));
  s->add_option("--q", P.q, "coupling");
  s->add_option("--x", P.x, "argument (real part for exp_q_complex)");
  s->add_option("--y", P.y, "second argument");
  s->add_option("--im", P.im, "imaginary part for exp_q_complex");
  s->add_option("--xs", P.xs, "argument list for n-ary operations")->delimiter(',');
  s->add_option("--p", P.p, "power for power_rescale");
  s->add_option("--a", P.a, "scale for dn_exp_q / intn_exp_q");
  s->add_option("--n", P.n, "order for dn_exp_q / intn_exp_q");
  out.add_to(s);
}

inline Dataset run_eval(const std::string& fn, const Params& P) {
  const std::string cmd = "eval " + fn;
  const double q = need(P.q, "--q", cmd);
  if (fn == "exp_q") return scalar("value", exp_q(q, need(P.x, "--x", cmd)));
  if (fn == "ln_q") return scalar("value", ln_q(q, need(P.x, "--x", cmd)));
  if (fn == "q_add") return scalar("value", q_add(q, need(P.x, "--x", cmd), need(P.y, "--y", cmd)));
  if (fn == "q_sub") return scalar("value", q_sub(q, need(P.x, "--x", cmd), need(P.y, "--y", cmd)));
  if (fn == "q_prod") return scalar("value", q_prod(q, need(P.x, "--x", cmd), need(P.y, "--y", cmd)));
  if (fn == "q_div") return scalar("value", q_div(q, need(P.x, "--x", cmd), need(P.y, "--y", cmd)));
  if (fn == "q_add_n") return scalar("value", q_add_n(q, P.xs));
  if (fn == "q_prod_n") return scalar("value", q_prod_n(q, P.xs));
  if (fn == "sin_q") return scalar("value", sin_q(q, need(P.x, "--x", cmd)));
  if (fn == "sinc_q") return scalar("value", sinc_q(q, need(P.x, "--x", cmd)));
  if (fn == "power_rescale") {
    const auto r = power_rescale(q, need(P.x, "--x", cmd), need(P.p, "--p", cmd));
    return pair("q", r.q.value(), "x", r.x);
  }
  if (fn == "exp_q_complex") {
    const auto z = exp_q_complex(q, {need(P.x, "--x", cmd), P.im.value_or(0.0)});
    return pair("re", z.real(), "im", z.imag());
  }
  const double a = P.a.value_or(1.0);
  const int n = P.n.value_or(1);
  if (fn == "dn_exp_q") return scalar("value", dn_exp_q(q, a, n, need(P.x, "--x", cmd)));
  return scalar("value", intn_exp_q(q, a, n, need(P.x, "--x", cmd)));
}

inline void add_seq(CLI::App& app, Params& P, Output& out, std::string& op) {
  auto* s = app.add_subcommand("seq", "q-sequence, conjugate duals and convention translation");
  s->add_option("op", op)->required()->check(CLI::IsMember(
      {"z_n", "z_alpha", "hat", "tilde", "indexed", "dual_additive", "dual_multiplicative", "translate",
       "translate_inv", "phi"}));
  s->add_option("--q", P.q, "coupling");
  s->add_option("--n", P.n, "sequence index (k for indexed)");
  s->add_option("--alpha", P.alpha, "exponent in (0, 2]");
  s->add_option("--sign", P.sign, "+1 or -1 for indexed")->check(CLI::IsMember({-1, 1}));
  s->add_option("--qprime", P.qprime, "original-convention index for translate");
  out.add_to(s);
}

inline Dataset run_seq(const std::string& op, const Params& P) {
  const std::string cmd = "seq " + op;
  if (op == "translate") return scalar("q", translate(need(P.qprime, "--qprime", cmd)).value());
  const double q = need(P.q, "--q", cmd);
  if (op == "z_n") return scalar("q_n", z_n(q, need(P.n, "--n", cmd)).value());
  if (op == "z_alpha") {
    return scalar("q_n", z_alpha(q, need(P.alpha, "--alpha", cmd), need(P.n, "--n", cmd)).value());
  }
  if (op == "hat") return scalar("hat_q", conj_hat(q).value());
  if (op == "tilde") return scalar("tilde_q", conj_tilde(q).value());
  if (op == "indexed") {
    const auto r = conj_indexed(q, P.n.value_or(0), P.sign.value_or(1));
    Dataset d{"sign", "index", "q"};
    d.add_row({static_cast<double>(r.sign), static_cast<double>(r.index), r.value.value()});
    return d;
  }
  if (op == "dual_additive") return scalar("q", dual_additive(q).value());
  if (op == "dual_multiplicative") return scalar("q", dual_multiplicative(q).value());
  if (op == "translate_inv") return scalar("qprime", translate_inv(q));
  return scalar("phi", coupling_phi(q, P.alpha.value_or(2.0)));
}

struct DistArgs {
  std::string op;
  std::string mode = "variance";
  std::string in;
  std::optional<std::uint64_t> seed;
};

inline void add_dist(CLI::App& app, Params& P, Output& out, DistArgs& D) {
  auto* s = app.add_subcommand("dist", "q-Gaussian and escort-distribution operations");
  s->add_option("op", D.op)->required()->check(CLI::IsMember(
      {"c_q", "pdf", "support", "sample", "entropy", "escort", "student_t", "kappa", "conjugate", "phi", "fit"}));
  s->add_option("--q", P.q, "coupling");
  s->add_option("--mu", P.mu, "location (default 0)");
  s->add_option("--sigma-sq", P.sigma_sq, "q-variance (default 1)");
  s->add_option("--beta", P.beta, "scale; alternative to --sigma-sq");
  s->add_option("--x", P.x, "evaluation point");
  s->add_option("--xs", P.xs, "probabilities for entropy / escort")->delimiter(',');
  s->add_option("--n", P.n, "sample count");
  s->add_option("--seed", D.seed, "random seed (required for sample)");
  s->add_option("--nu", P.nu, "Student-T degrees of freedom");
  s->add_option("--kappa", P.kappa, "kappa index");
  s->add_option("--alpha", P.alpha, "exponent for phi");
  s->add_option("--mode", D.mode, "conjugate mode")->check(CLI::IsMember({"variance", "beta", "normalization"}));
  s->add_option("--in", D.in, "sample file for fit ('-' for stdin)");
  out.add_to(s);
}

inline QGaussian dist_from(const Params& P, const std::string& cmd) {
  const double q = need(P.q, "--q", cmd);
  const double mu = P.mu.value_or(0.0);
  if (P.beta && P.sigma_sq) throw UsageError(cmd + ": give --beta or --sigma-sq, not both");
  if (P.beta) return QGaussian::from_beta(q, mu, *P.beta);
  return QGaussian(q, mu, P.sigma_sq.value_or(1.0));
}

inline Dataset qgaussian_row(const QGaussian& g) {
  Dataset d{"q", "mu", "sigma_q_sq", "beta"};
  d.add_row({g.q().value(), g.mu(), g.sigma_q_sq(), g.beta()});
  return d;
}

inline Dataset run_dist(const DistArgs& D, const Params& P) {
  const std::string cmd = "dist " + D.op;
  if (D.op == "c_q") return scalar("c_q", c_q(need(P.q, "--q", cmd)));
  if (D.op == "pdf") return scalar("pdf", dist_from(P, cmd).pdf(need(P.x, "--x", cmd)));
  if (D.op == "support") {
    const auto s = dist_from(P, cmd).support();
    return pair("lo", s.lo, "hi", s.hi);
  }
  if (D.op == "sample") {
    const auto seed = need(D.seed, "--seed", cmd);
    const int n = need(P.n, "--n", cmd);
    if (n < 1) throw UsageError("--n must be >= 1");
    Dataset d{"x"};
    for (double x : sample_qgaussian(dist_from(P, cmd), static_cast<std::size_t>(n), seed)) d.add_row({x});
    return d;
  }
  if (D.op == "entropy") return scalar("entropy", entropy_discrete(DiscreteDist(P.xs), need(P.q, "--q", cmd)));
  if (D.op == "escort") {
    const auto e = coupled_discrete(DiscreteDist(P.xs), need(P.q, "--q", cmd));
    Dataset d{"p"};
    for (double v : e.p()) d.add_row({v});
    return d;
  }
  if (D.op == "student_t") {
    const auto m = student_t_map(need(P.nu, "--nu", cmd));
    Dataset d{"q", "beta", "q_hat"};
    d.add_row({m.dist.q().value(), m.dist.beta(), m.q_hat.value()});
    return d;
  }
  if (D.op == "kappa") return scalar("q", kappa_map(need(P.kappa, "--kappa", cmd)).value());
  if (D.op == "conjugate") {
    const ConjugateMode mode = D.mode == "beta"            ? ConjugateMode::preserve_beta
                               : D.mode == "normalization" ? ConjugateMode::preserve_normalization
                                                           : ConjugateMode::preserve_variance;
    return qgaussian_row(conjugate_pair(dist_from(P, cmd), mode));
  }
  if (D.op == "phi") return scalar("phi", coupling_phi(need(P.q, "--q", cmd), P.alpha.value_or(2.0)));
  if (D.in.empty()) throw UsageError(cmd + " requires --in");
  return fit_dataset(fit_qgaussian(read_numbers(D.in)));
}

struct TransformArgs {
  std::string kind;
  std::optional<double> family_q;
  double a = 1.0, beta = 1.0, alpha = 2.0;
  double w_min = -5.0, w_max = 5.0;
  int n = 101;
  bool conjugate = false, closed = false, normalized = false;
};

inline void add_transform(CLI::App& app, Params& P, Output& out, TransformArgs& T) {
  auto* s = app.add_subcommand("transform", "q-Fourier transform of a family or the uniform density");
  s->add_option("input", T.kind)->required()->check(CLI::IsMember({"qgaussian", "qalpha", "uniform"}));
  s->add_option("--q", P.q, "transform coupling")->required();
  s->add_option("--family-q", T.family_q, "coupling of the input family (default --q)");
  s->add_option("--a", T.a, "family amplitude");
  s->add_option("--beta", T.beta, "family scale");
  s->add_option("--alpha", T.alpha, "family exponent (qalpha)");
  s->add_flag("--normalized", T.normalized, "use the unit-mass amplitude instead of --a");
  s->add_option("--w-min", T.w_min, "first frequency");
  s->add_option("--w-max", T.w_max, "last frequency");
  s->add_option("--n", T.n, "number of frequencies");
  s->add_flag("--conjugate", T.conjugate, "conjugate (q-tilde) transform");
  s->add_flag("--closed", T.closed, "closed form instead of quadrature");
  out.add_to(s);
}

inline Dataset run_transform(const TransformArgs& T, const Params& P) {
  const Coupling q = *P.q;
  const Coupling fq = T.family_q.value_or(q.value());
  const auto ws = linspace(T.w_min, T.w_max, T.n);
  Dataset d{"w", "re", "im"};
  if (T.closed) {
    if (T.kind == "qalpha") throw UsageError("transform --closed supports qgaussian and uniform inputs");
    if (T.kind == "uniform") {
      for (double w : ws) d.add_row({w, T.conjugate ? cqft_uniform_closed(q, w) : qft_uniform_closed(q, w), 0.0});
    } else {
      const double a = T.normalized ? std::sqrt(T.beta) / c_q(q) : T.a;
      const auto cf = T.conjugate ? cqft_qgaussian_closed(a, T.beta, q) : qft_qgaussian_closed(a, T.beta, q);
      for (double w : ws) d.add_row({w, cf(w), 0.0});
      d.meta()["A"] = format_number(cf.A);
      d.meta()["B"] = format_number(cf.B);
      d.meta()["q_out"] = format_number(cf.q_out.value());
      d.meta()["subnormalizable"] = cf.subnormalizable() ? "true" : "false";
    }
    d.meta()["method"] = "closed-form";
    return d;
  }
  TransformInput in = UniformBox{};
  if (T.kind == "qgaussian") {
    in = T.normalized ? QGaussianFamily::normalized(fq, T.beta) : QGaussianFamily(T.a, T.beta, fq);
  } else if (T.kind == "qalpha") {
    QAlphaFamily f{fq, T.alpha, T.a, T.beta};
    in = T.normalized ? q_alpha_normalize(f) : f;
  }
  const auto r = T.conjugate ? cqft_numeric(in, q, ws) : qft_numeric(in, q, ws);
  for (std::size_t i = 0; i < r.ws.size(); ++i) d.add_row({r.ws[i], r.values[i].real(), r.values[i].imag()});
  d.meta()["method"] = "numeric";
  d.meta()["est_abs_error"] = format_number(r.est_abs_error);
  return d;
}

struct SimulateArgs {
  double M = 0.0, A = 1.0, tau = 1.0, dt = 0.01;
  int n = 100000;
  int paths = 1;
  std::optional<long long> burn_in;
  std::optional<std::uint64_t> seed;
  bool fit = false;
};

inline void add_simulate(CLI::App& app, SimulateArgs& S, Output& out) {
  auto* s = app.add_subcommand("simulate", "multiplicative-noise diffusion (Euler-Maruyama)");
  s->add_option("--M", S.M, "multiplicative noise amplitude");
  s->add_option("--A", S.A, "additive noise amplitude");
  s->add_option("--tau", S.tau, "drift strength");
  s->add_option("--dt", S.dt, "time step");
  s->add_option("--n", S.n, "recorded samples in total");
  s->add_option("--paths", S.paths, "independent paths");
  s->add_option("--burn-in", S.burn_in, "burn-in steps per path (default 10/(tau dt))");
  s->add_option("--seed", S.seed, "random seed")->required();
  s->add_flag("--fit", S.fit, "report the fitted and predicted q-Gaussian instead of samples");
  out.add_to(s);
}

inline Dataset run_simulate(const SimulateArgs& S) {
  if (S.n < 1 || S.paths < 1) throw UsageError("simulate: --n and --paths must be >= 1");
  if (!(S.tau > 0.0) || !(S.dt > 0.0)) throw domain_error("simulate: tau and dt must be positive");
  auto cfg = SdeConfig::for_samples(S.M, S.tau, S.A, static_cast<std::size_t>(S.n),
                                    static_cast<std::size_t>(S.paths), *S.seed, S.dt);
  if (S.burn_in) {
    if (*S.burn_in < 0) throw UsageError("--burn-in must be >= 0");
    cfg.steps = cfg.steps - cfg.burn_in + static_cast<std::size_t>(*S.burn_in);
    cfg.burn_in = static_cast<std::size_t>(*S.burn_in);
  }
  const auto xs = simulate(cfg);
  if (!S.fit) {
    Dataset d{"x"};
    for (double x : xs) d.add_row({x});
    return d;
  }
  const auto f = fit_qgaussian(xs);
  const auto p = predicted_stationary(S.M, S.tau, S.A);
  Dataset d{"q_est", "beta_est", "mu_est", "loglik", "n", "converged", "q_pred", "beta_pred", "q_hat_pred"};
  d.add_row({f.q_est, f.beta_est, f.mu_est, f.loglik, static_cast<double>(f.n), f.converged ? 1.0 : 0.0,
             p.q.value(), p.beta, p.q_hat});
  return d;
}

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Translated-q calculus: q-algebra, q-Gaussians, q-Fourier transforms, multiplicative noise"};
  app.name("qstat");
  app.require_subcommand(1, 1);
  Params P;
  Output o_eval, o_seq, o_dist, o_tr, o_sim, o_fig;
  std::string fn, seq_op;
  DistArgs D;
  TransformArgs T;
  SimulateArgs S;
  int figure_id = 0;
  bool fault = false;

  add_eval(app, P, o_eval, fn);
  add_seq(app, P, o_seq, seq_op);
  add_dist(app, P, o_dist, D);
  add_transform(app, P, o_tr, T);
  add_simulate(app, S, o_sim);
  auto* fig = app.add_subcommand("figure", "emit a figure dataset");
  fig->add_option("id", figure_id, "figure number 1..4")->required()->check(CLI::Range(1, kFigureCount));
  o_fig.add_to(fig);
  auto* sc = app.add_subcommand("selfcheck", "run the invariant suites");
  sc->add_flag("--perturb-c-q", fault, "fault injection: scale c_q by 1 + 1e-3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "eval") o_eval.write(run_eval(fn, P), OutFormat::text, out);
    if (sub == "seq") o_seq.write(run_seq(seq_op, P), OutFormat::text, out);
    if (sub == "dist") o_dist.write(run_dist(D, P), OutFormat::text, out);
    if (sub == "transform") o_tr.write(run_transform(T, P), OutFormat::csv, out);
    if (sub == "simulate") o_sim.write(run_simulate(S), OutFormat::csv, out);
    if (sub == "figure") o_fig.write(figure_dataset(figure_id), OutFormat::csv, out);
    if (sub == "selfcheck") {
      SelfCheckOptions opt;
      if (fault) opt.c_q_perturbation = 1e-3;
      const auto results = run_selfcheck(opt);
      bool ok = true;
      double total = 0.0;
      for (const auto& r : results) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " (%.2fs)", r.seconds);
        out << (r.passed ? "PASS " : "FAIL ") << r.name << buf;
        if (!r.passed) out << ": " << r.detail;
        out << '\n';
        ok = ok && r.passed;
        total += r.seconds;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%zu suites, %.2fs", results.size(), total);
      out << buf << (ok ? ", all passed\n" : ", failures\n");
      return ok ? 0 : 1;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const qstat::error& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qstat::cli
