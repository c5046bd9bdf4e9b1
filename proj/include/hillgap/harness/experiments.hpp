#pragma once

// Experiment runners behind the command line tool. Each returns a report and,
// for the table-producing experiments, the rows to write as CSV.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hillgap/blockdecomp.hpp"
#include "hillgap/delta_model.hpp"
#include "hillgap/floquet.hpp"
#include "hillgap/harness/config.hpp"
#include "hillgap/harness/report.hpp"
#include "hillgap/parallel.hpp"
#include "hillgap/weights.hpp"

namespace hillgap::harness {

struct RunResult {
  Report report;
  std::vector<GapRow> rows;
  std::vector<ModeRow> modes;
};

inline block::BlockOptions block_options(const ExperimentConfig& c) {
  block::BlockOptions b;
  b.tol = c.tol.neumann;
  return b;
}

/// Oracle options with quad precision unless the config names a precision.
inline floquet::OracleOptions high_precision_oracle(const ExperimentConfig& c) {
  floquet::OracleOptions o = c.oracle;
  const bool explicit_precision = c.raw.contains("oracle") && c.raw.at("oracle").contains("precision");
  if (!explicit_precision) o.precision = floquet::Precision::quad;
  return o;
}

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline GapRow oracle_row(const FourierPotential& q, int n, const floquet::OracleOptions& opt) {
  GapRow r;
  r.n = n;
  r.method = "oracle";
  try {
    const auto e = floquet::periodic_eigs(q, n, opt);
    r.lambda_minus = e.minus;
    r.lambda_plus = e.plus;
    r.gamma = e.gap;
    r.resid = e.residual;
    r.iters = e.iterations;
  } catch (const Error& e) {
    r.method = "oracle-error";
    r.error = e.what();
  }
  return r;
}

inline GapRow block_row(const FourierPotential& q, int n, const block::BlockOptions& opt, double* contraction) {
  GapRow r;
  r.n = n;
  r.method = "block";
  if (n < block::admissible_from(q)) {
    r.method = "block-inadmissible";
    return r;
  }
  try {
    const auto b = block::block_data(q, n, opt);
    r.lambda_minus = b.xi_minus;
    r.lambda_plus = b.xi_plus;
    r.gamma = b.gamma;
    r.alpha = b.alpha;
    r.p_plus = b.p_plus;
    r.p_minus = b.p_minus;
    r.resid = b.diagnostics.residual;
    r.iters = b.diagnostics.alpha_iterations + b.diagnostics.root_iterations;
    if (contraction) *contraction = b.diagnostics.contraction;
  } catch (const Error& e) {
    r.method = "block-error";
    r.error = e.what();
  }
  return r;
}

/// Block and oracle rows for n in [n_lo, n_hi], with the cross-method check.
inline RunResult run_gaps(const ExperimentConfig& c, bool with_block = true) {
  const FourierPotential q = build_potential(c.potential);
  RunResult out;
  out.report.name = with_block ? "gaps" : "oracle";
  out.report.config = echo(c);
  Preconditions pre = measure_preconditions(q, c.weight);
  const int count = c.n_hi - c.n_lo + 1;
  std::vector<GapRow> blocks(static_cast<std::size_t>(count)), oracles(static_cast<std::size_t>(count));
  std::vector<double> contraction(static_cast<std::size_t>(count), 0.0);
  const auto bopt = block_options(c);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    const int n = c.n_lo + static_cast<int>(i);
    if (with_block) blocks[i] = block_row(q, n, bopt, &contraction[i]);
    oracles[i] = oracle_row(q, n, c.oracle);
  });
  for (double x : contraction) pre.contraction_measured = std::max(pre.contraction_measured, x);
  out.report.preconditions.push_back(pre);
  if (with_block && c.n_lo < pre.block_admissible_from)
    out.report.note("block rows for n < " + std::to_string(pre.block_admissible_from) +
                    " are inadmissible (n < 4||q||)");

  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int n = c.n_lo + i;
    const auto& b = blocks[static_cast<std::size_t>(i)];
    const auto& o = oracles[static_cast<std::size_t>(i)];
    if (with_block) out.rows.push_back(b);
    out.rows.push_back(o);
    if (!o.error.empty()) out.report.fail("oracle n = " + std::to_string(n) + ": " + o.error);
    if (with_block && !b.error.empty()) out.report.fail("block n = " + std::to_string(n) + ": " + b.error);
    if (with_block && b.method == "block" && o.method == "oracle") {
      const double dev = std::max(std::abs(b.lambda_minus - o.lambda_minus), std::abs(b.lambda_plus - o.lambda_plus));
      const double allowed = c.tol.agreement * std::max(1.0, double(n) * n);
      worst = std::max(worst, dev / allowed);
      if (!(dev <= allowed))
        out.report.fail("n = " + std::to_string(n) + ": block and oracle roots differ by " + sci(dev) +
                        " > " + sci(allowed));
    }
  }
  if (with_block) out.report.note("worst block/oracle deviation relative to tolerance: " + sci(worst));
  out.report.data["worst_agreement_ratio"] = jnum(worst);
  return out;
}

inline RunResult run_oracle(const ExperimentConfig& c) { return run_gaps(c, false); }

/// Phi_m(q) on the configured window, its inverse and the norm equivalence.
inline RunResult run_adapted(const ExperimentConfig& c) {
  const FourierPotential q = build_potential(c.potential);
  RunResult out;
  out.report.name = "adapted";
  out.report.config = echo(c);
  Preconditions pre = measure_preconditions(q, c.weight);
  block::AdaptedOptions opt;
  opt.m = c.m;
  opt.threshold = c.M_thresh;
  opt.window = std::max(c.window, q.window());
  opt.block = block_options(c);
  const auto a = block::adapted_map(q, opt);
  for (const auto& b : a.blocks) pre.contraction_measured = std::max(pre.contraction_measured, b.diagnostics.contraction);
  out.report.preconditions.push_back(pre);
  for (int n = -a.p.window(); n <= a.p.window(); ++n)
    out.modes.push_back({n, n == 0 ? q.mean() : q[n], n == 0 ? a.p.mean() : a.p[n]});

  opt.m = a.m;
  opt.threshold = a.threshold;
  const auto inv = block::invert_adapted_map(a.p, opt);
  const double roundtrip = wnorm(inv.q - q, c.weight);
  const double nq = wnorm(q, c.weight), np = wnorm(a.p, c.weight);
  out.report.note("m = " + std::to_string(a.m) + ", M_thresh = " + std::to_string(a.threshold) +
                  ", window = " + std::to_string(a.p.window()));
  out.report.note("round trip ||Phi^-1(Phi(q)) - q||_w = " + sci(roundtrip) + " after " +
                  std::to_string(inv.iterations) + " iterations, contraction rate " + sci(inv.rate));
  out.report.note("||q||_w = " + sci(nq) + ", ||Phi(q)||_w = " + sci(np));
  if (!(roundtrip <= c.tol.roundtrip)) out.report.fail("round trip above " + sci(c.tol.roundtrip));
  if (!(0.5 * nq <= np && np <= 2.0 * nq)) out.report.fail("norm equivalence 1/2 ||q|| <= ||Phi(q)|| <= 2 ||q||");
  if (!(inv.rate <= 0.2)) out.report.fail("inverse iteration rate " + sci(inv.rate) + " above 0.2");
  out.report.data = {{"m", a.m},
                     {"M_thresh", a.threshold},
                     {"roundtrip", jnum(roundtrip)},
                     {"inverse_iterations", inv.iterations},
                     {"inverse_rate", jnum(inv.rate)},
                     {"norm_q", jnum(nq)},
                     {"norm_p", jnum(np)}};
  return out;
}

/// Per-n gap data shared by the theorem checks.
struct GapSample {
  int n = 0;
  std::optional<floquet::GapRecord> oracle;
  std::optional<block::BlockData> block;
  std::string error;

  /// max(|gamma_block|, |gamma_oracle|) over the methods that ran.
  double gamma_abs() const {
    double g = 0.0;
    if (oracle) g = std::max(g, std::abs(oracle->gamma));
    if (block) g = std::max(g, std::abs(block->gamma));
    return g;
  }
};

inline std::vector<GapSample> collect_gaps(const FourierPotential& q, int n_lo, int n_hi,
                                           const floquet::OracleOptions& oracle, const block::BlockOptions& bopt,
                                           double alpha) {
  const int count = n_hi - n_lo + 1;
  std::vector<GapSample> out(static_cast<std::size_t>(std::max(count, 0)));
  const int admissible = block::admissible_from(q);
  parallel_for(out.size(), [&](std::size_t i) {
    GapSample& s = out[i];
    s.n = n_lo + static_cast<int>(i);
    try {
      s.oracle = floquet::gap_record(q, s.n, alpha, oracle);
    } catch (const Error& e) {
      s.error = std::string("oracle: ") + e.what();
    }
    if (s.n >= admissible) {
      try {
        s.block = block::block_data(q, s.n, bopt);
      } catch (const Error& e) {
        if (!s.error.empty()) s.error += "; ";
        s.error += std::string("block: ") + e.what();
      }
    }
  });
  return out;
}

inline double max_contraction(const std::vector<GapSample>& gaps) {
  double c = 0.0;
  for (const auto& s : gaps)
    if (s.block) c = std::max(c, s.block->diagnostics.contraction);
  return c;
}

inline int first_admissible(double four_norm_w, int n_lo) {
  return std::max(n_lo, static_cast<int>(std::ceil(four_norm_w - 1e-12)));
}

/// Sum of w_n^2 x_n^2 over N <= n <= n_hi.
template <class Fn>
double weighted_tail_sum(const std::vector<GapSample>& gaps, const Weight& w, int N, Fn&& value) {
  double s = 0.0;
  for (const auto& g : gaps) {
    if (g.n < N) continue;
    const double x = value(g);
    if (x != 0.0) s += std::exp(2.0 * (w.log_value(HalfIndex::integer(g.n)) + std::log(x)));
  }
  return s;
}

inline bool report_errors(Report& rep, const std::vector<GapSample>& gaps) {
  bool any = false;
  for (const auto& g : gaps)
    if (!g.error.empty()) {
      rep.fail("n = " + std::to_string(g.n) + ": " + g.error);
      any = true;
    }
  return any;
}

/// |p_n p_-n| <= |gamma_n|^2 <= 9 |p_n p_-n| where |p_n / p_-n| is in [1/4, 4].
inline void check_skew(Report& rep, const FourierPotential& q, const std::vector<GapSample>& gaps,
                       const floquet::OracleOptions& oracle) {
  if (!q.is_real()) {
    rep.note("skew bound: skipped for a complex potential");
    return;
  }
  int checked = 0;
  double lo_worst = std::numeric_limits<double>::infinity(), hi_worst = 0.0;
  for (const auto& g : gaps) {
    if (!g.block) continue;
    const double pp = std::abs(g.block->p_plus), pm = std::abs(g.block->p_minus);
    if (pp == 0.0 || pm == 0.0) continue;
    const double ratio = pp / pm;
    if (ratio < 0.25 || ratio > 4.0) continue;
    const double prod = pp * pm;
    std::vector<double> gammas{std::abs(g.block->gamma)};
    if (g.oracle) {
      const double floor = 1e3 * floquet::unit_roundoff(oracle.precision) * std::max(1.0, std::abs(g.oracle->tau));
      if (std::abs(g.oracle->gamma) > floor) gammas.push_back(std::abs(g.oracle->gamma));
    }
    for (double gm : gammas) {
      ++checked;
      const double r = gm * gm / prod;
      lo_worst = std::min(lo_worst, r);
      hi_worst = std::max(hi_worst, r);
      if (!(prod <= gm * gm && gm * gm <= 9.0 * prod))
        rep.fail("skew bound at n = " + std::to_string(g.n) + ": |gamma|^2 / |p_n p_-n| = " + sci(r));
    }
  }
  rep.note("skew bound: " + std::to_string(checked) + " checks, |gamma|^2/|p_n p_-n| in [" + sci(lo_worst) + ", " +
           sci(hi_worst) + "]");
  rep.data["skew"] = {{"checks", checked}, {"min_ratio", jnum(lo_worst)}, {"max_ratio", jnum(hi_worst)}};
}

/// Sum over n >= N of w_n^2 |gamma_n|^2 against 9 ||T_N q||_w^2 + 576/N ||q||_w^4,
/// plus the individual estimate w_n |gamma_n| <= 6 ||q||_w and the skew bound.
inline Report verify_theorem1(const ExperimentConfig& c) {
  const FourierPotential q = build_potential(c.potential);
  Report rep;
  rep.name = "theorem1";
  rep.config = echo(c);
  const auto gaps = collect_gaps(q, c.n_lo, c.n_hi, c.oracle, block_options(c), c.alpha);
  report_errors(rep, gaps);
  json per_weight = json::array();
  for (const Weight& w : c.weight_list()) {
    Preconditions pre = measure_preconditions(q, w);
    pre.contraction_measured = max_contraction(gaps);
    rep.preconditions.push_back(pre);
    const double nw = pre.norm_w;
    const int N0 = first_admissible(pre.four_norm_w, c.n_lo);
    json rows = json::array();
    if (N0 > c.n_hi) rep.note("[" + w.describe() + "] no admissible N in range (4||q||_w = " + sci(pre.four_norm_w) + ")");
    if (N0 > c.n_lo && N0 <= c.n_hi)
      rep.note("[" + w.describe() + "] N < " + std::to_string(N0) + " skipped as inadmissible");
    double min_margin = std::numeric_limits<double>::infinity();
    for (int N = N0; N <= c.n_hi; ++N) {
      const double lhs = weighted_tail_sum(gaps, w, N, [](const GapSample& g) { return g.gamma_abs(); });
      const double tn = wnorm(tail(q, N), w);
      const double rhs = 9.0 * tn * tn + 576.0 / N * std::pow(nw, 4);
      const double margin = rhs - lhs;
      min_margin = std::min(min_margin, margin);
      rows.push_back({{"N", N}, {"lhs", jnum(lhs)}, {"rhs", jnum(rhs)}, {"margin", jnum(margin)}});
      if (!(lhs <= rhs))
        rep.fail("[" + w.describe() + "] N = " + std::to_string(N) + ": " + sci(lhs) + " > " + sci(rhs));
    }
    if (N0 <= c.n_hi) rep.note("[" + w.describe() + "] sum bound: smallest margin " + sci(min_margin));

    double worst_individual = 0.0;
    for (const auto& g : gaps) {
      if (g.n < N0) continue;
      const double lhs = eval(w, g.n) * g.gamma_abs();
      worst_individual = std::max(worst_individual, nw > 0.0 ? lhs / (6.0 * nw) : lhs);
      if (!(lhs <= 6.0 * nw))
        rep.fail("[" + w.describe() + "] individual estimate at n = " + std::to_string(g.n) + ": " + sci(lhs) +
                 " > 6||q||_w = " + sci(6.0 * nw));
    }
    rep.note("[" + w.describe() + "] individual estimate: max w_n|gamma_n| / 6||q||_w = " + sci(worst_individual));
    per_weight.push_back({{"weight", w.describe()},
                          {"sums", rows},
                          {"min_margin", jnum(min_margin)},
                          {"individual_ratio", jnum(worst_individual)}});
  }
  rep.data["weights"] = per_weight;
  check_skew(rep, q, gaps, c.oracle);
  return rep;
}

/// Sum over n >= N of w_n^2 |delta_n|^2 against 4 ||T_N q||_w^2 + 256/N ||q||_w^4 from
/// the first N on which it holds through n_hi, then w_n |delta_n| <= 4 ||q||_w past
/// that onset; the linear delta model is reported as a diagnostic.
inline Report verify_theorem4(const ExperimentConfig& c) {
  const FourierPotential q = build_potential(c.potential);
  Report rep;
  rep.name = "theorem4";
  rep.config = echo(c);
  const auto gaps = collect_gaps(q, c.n_lo, c.n_hi, c.oracle, block_options(c), c.alpha);
  report_errors(rep, gaps);
  auto delta_abs = [](const GapSample& g) { return g.oracle ? std::abs(g.oracle->delta) : 0.0; };
  json per_weight = json::array();
  for (const Weight& w : c.weight_list()) {
    Preconditions pre = measure_preconditions(q, w);
    pre.contraction_measured = max_contraction(gaps);
    rep.preconditions.push_back(pre);
    const double nw = pre.norm_w;
    const int N0 = first_admissible(pre.four_norm_w, c.n_lo);
    json rows = json::array();
    std::optional<int> onset;
    double worst = 0.0;
    for (int N = c.n_hi; N >= N0; --N) {
      const double lhs = weighted_tail_sum(gaps, w, N, delta_abs);
      const double tn = wnorm(tail(q, N), w);
      const double rhs = 4.0 * tn * tn + 256.0 / N * std::pow(nw, 4);
      rows.insert(rows.begin(), json{{"N", N}, {"lhs", jnum(lhs)}, {"rhs", jnum(rhs)}, {"margin", jnum(rhs - lhs)}});
      if (!(lhs <= rhs)) break;
      onset = N;
    }
    const std::string tag = "[" + w.describe() + "] ";
    if (N0 > c.n_hi) {
      rep.note(tag + "no admissible N in range (4||q||_w = " + sci(pre.four_norm_w) + ")");
    } else if (!onset) {
      rep.fail(tag + "sum bound fails at N = n_hi = " + std::to_string(c.n_hi));
    } else {
      rep.note(tag + "sum bound holds for " + std::to_string(*onset) + " <= N <= " + std::to_string(c.n_hi) +
               " (empirical onset)");
      for (const auto& g : gaps) {
        if (g.n < *onset) continue;
        const double lhs = eval(w, g.n) * delta_abs(g);
        worst = std::max(worst, nw > 0.0 ? lhs / (4.0 * nw) : lhs);
        if (!(lhs <= 4.0 * nw))
          rep.fail(tag + "individual estimate at n = " + std::to_string(g.n) + ": " + sci(lhs) + " > 4||q||_w");
      }
      rep.note(tag + "individual estimate: max w_n|delta_n| / 4||q||_w = " + sci(worst));
    }
    per_weight.push_back({{"weight", w.describe()},
                          {"sums", rows},
                          {"onset", onset ? json(*onset) : json(nullptr)},
                          {"individual_ratio", jnum(worst)}});
  }
  rep.data["weights"] = per_weight;

  // linear model diagnostic on the block-admissible indices
  std::vector<floquet::DeltaSample> samples;
  for (const auto& g : gaps) {
    if (!g.oracle || !g.block) continue;
    const double floor = 1e3 * floquet::unit_roundoff(c.oracle.precision) * std::max(1.0, std::abs(g.oracle->tau));
    const bool resolved = std::abs(g.block->p_plus) + std::abs(g.block->p_minus) > floor;
    samples.push_back({g.n, g.oracle->delta, g.block->p_plus, g.block->p_minus, {}, 0.0, resolved});
  }
  const auto fit = floquet::fit_delta_model(samples);
  if (fit.degenerate) {
    rep.note("delta model: degenerate (no resolved p_n)");
  } else {
    rep.note("delta model: kappa = " + format_complex(fit.kappa) + ", |kappa| = " + sci(std::abs(fit.kappa)) +
             ", max residual ratio = " + sci(fit.max_ratio) + " (bound 1/4)");
  }
  rep.data["delta_model"] = {{"kappa", jcomplex(fit.kappa)},
                             {"max_ratio", jnum(fit.max_ratio)},
                             {"degenerate", fit.degenerate}};
  return rep;
}

/// psi(r) with the search range grown until the minimum is certified.
inline PsiResult psi_certified(const Weight& w, double r) {
  for (int M = 16;; M *= 4) {
    try {
      return psi(w, r, M);
    } catch (const PreconditionError&) {
      if (M > 4096) throw;
    }
  }
}

/// |gamma_n| <= 2n exp(-n psi(n / 4||q||_w)) for a superexponential weight.
inline Report verify_theorem5(const ExperimentConfig& c) {
  const FourierPotential q = build_potential(c.potential);
  Report rep;
  rep.name = "theorem5";
  rep.config = echo(c);
  for (const Weight& w : c.weight_list())
    if (w.kind() != WeightKind::superexp)
      throw ConfigError("theorem5 needs superexp weights, got " + w.describe());
  const auto oracle = high_precision_oracle(c);
  const auto gaps = collect_gaps(q, c.n_lo, c.n_hi, oracle, block_options(c), c.alpha);
  report_errors(rep, gaps);
  json per_weight = json::array();
  for (const Weight& w : c.weight_list()) {
    Preconditions pre = measure_preconditions(q, w);
    pre.contraction_measured = max_contraction(gaps);
    rep.preconditions.push_back(pre);
    const std::string tag = "[" + w.describe() + "] ";
    const double sigma = w.params().sigma;
    json rows = json::array();
    if (pre.norm_w == 0.0) {
      rep.note(tag + "q = 0: every gap vanishes and the bound holds trivially");
      for (const auto& g : gaps)
        if (g.gamma_abs() != 0.0) rep.fail(tag + "nonzero gap for q = 0 at n = " + std::to_string(g.n));
      per_weight.push_back({{"weight", w.describe()}, {"rows", rows}});
      continue;
    }
    const int N0 = first_admissible(pre.four_norm_w, c.n_lo);
    if (N0 > c.n_hi) rep.note(tag + "no admissible n in range");
    double worst = 0.0, worst_individual = 0.0;
    for (const auto& g : gaps) {
      if (g.n < N0 || !g.oracle) continue;
      const double nt = g.n / pre.four_norm_w;
      const PsiResult ps = psi_certified(w, nt);
      const double bound = 2.0 * g.n * std::exp(-g.n * ps.value);
      const double gamma = std::abs(g.oracle->gamma);
      worst = std::max(worst, gamma / bound);
      if (!(gamma <= bound))
        rep.fail(tag + "n = " + std::to_string(g.n) + ": |gamma| = " + sci(gamma) + " > " + sci(bound));

      // psi against its continuous relaxation c_sigma log^{1-1/sigma} r
      const double cont = psi_relaxed_superexp(sigma, nt);
      const double L = std::log(nt);
      const double m_c = L > 0.0 ? std::pow(L / (sigma - 1.0), 1.0 / sigma) : 0.0;
      double slack = 0.0;
      for (double m : {std::max(1.0, std::floor(m_c)), std::max(1.0, std::ceil(m_c))})
        slack = std::max(slack, (L + std::pow(m, sigma)) / m - cont);
      const bool psi_ok = cont <= ps.value * (1.0 + 1e-12) && ps.value <= cont + slack + 1e-12;
      if (!psi_ok)
        rep.fail(tag + "psi(" + sci(nt) + ") = " + sci(ps.value) + " outside [" + sci(cont) + ", " +
                 sci(cont + slack) + "]");

      // individual estimate for the exponential weight exp(a|n|), a = psi(n~)
      const Weight ew = Weight::exponential(0.0, ps.value);
      const double na = wnorm(q, ew);
      const double ind = std::exp(ps.value * g.n) * gamma;
      worst_individual = std::max(worst_individual, ind / (6.0 * na));
      if (!(ind <= 6.0 * na))
        rep.fail(tag + "exponential individual estimate at n = " + std::to_string(g.n));
      rows.push_back({{"n", g.n},
                      {"n_tilde", jnum(nt)},
                      {"psi", jnum(ps.value)},
                      {"psi_argmin", ps.argmin},
                      {"psi_continuous", jnum(cont)},
                      {"gamma", jnum(gamma)},
                      {"bound", jnum(bound)},
                      {"norm_a", jnum(na)}});
    }
    rep.note(tag + "max |gamma_n| / bound = " + sci(worst) + ", max e^{an}|gamma_n| / 6||q||_a = " +
             sci(worst_individual));
    per_weight.push_back({{"weight", w.describe()}, {"rows", rows}});
  }
  rep.data["weights"] = per_weight;
  return rep;
}

/// gamma_n / (8 pi^2 (mu / 8 pi^2)^n / (n-1)!^2) for a Mathieu potential.
inline Report verify_mathieu(const ExperimentConfig& c) {
  if (c.potential.type != "mathieu") throw ConfigError("verify mathieu needs a mathieu potential");
  const double mu = c.potential.mu;
  const FourierPotential q = build_potential(c.potential);
  Report rep;
  rep.name = "mathieu";
  rep.config = echo(c);
  rep.preconditions.push_back(measure_preconditions(q, c.weight));
  const auto oracle = high_precision_oracle(c);
  const int count = c.n_hi - c.n_lo + 1;
  std::vector<std::optional<floquet::PeriodicEigenvalues>> eig(static_cast<std::size_t>(count));
  std::vector<std::string> errs(static_cast<std::size_t>(count));
  parallel_for(eig.size(), [&](std::size_t i) {
    try {
      eig[i] = floquet::periodic_eigs(q, c.n_lo + static_cast<int>(i), oracle);
    } catch (const Error& e) {
      errs[i] = e.what();
    }
  });
  json rows = json::array();
  if (mu == 0.0) {
    rep.note("mu = 0: degenerate case, every gap is closed");
    for (std::size_t i = 0; i < eig.size(); ++i)
      if (!eig[i] || std::abs(eig[i]->gap) != 0.0)
        rep.fail("nonzero gap for mu = 0 at n = " + std::to_string(c.n_lo + static_cast<int>(i)));
    rep.data["rows"] = rows;
    return rep;
  }
  double prev_dev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eig.size(); ++i) {
    const int n = c.n_lo + static_cast<int>(i);
    if (!eig[i]) {
      rep.fail("n = " + std::to_string(n) + ": " + errs[i]);
      continue;
    }
    const double formula =
        8.0 * pi * pi * std::exp(n * std::log(std::abs(mu) / (8.0 * pi * pi)) - 2.0 * std::lgamma(double(n)));
    const double gamma = std::abs(eig[i]->gap);
    const double ratio = gamma / formula;
    const double dev = std::abs(ratio - 1.0);
    const double band = c.mathieu_c / (double(n) * n);
    rows.push_back({{"n", n}, {"gamma", jnum(gamma)}, {"formula", jnum(formula)}, {"ratio", jnum(ratio)},
                    {"n2_deviation", jnum(dev * n * n)}});
    rep.note("n = " + std::to_string(n) + ": ratio = " + fmt17(ratio) + ", n^2 |ratio - 1| = " + sci(dev * n * n));
    if (!(dev <= band)) rep.fail("n = " + std::to_string(n) + ": ratio outside 1 +- c/n^2");
    if (n >= 3 && std::abs(mu) <= 1.0) {
      if (!(ratio >= 0.85 && ratio <= 1.15)) rep.fail("n = " + std::to_string(n) + ": ratio outside [0.85, 1.15]");
      if (!(dev <= prev_dev)) rep.fail("n = " + std::to_string(n) + ": deviation did not shrink");
      prev_dev = dev;
    }
  }
  rep.data["rows"] = rows;
  return rep;
}

/// Closed gaps for a one-sided potential: oracle |gamma_n| and the block
/// coefficients a_n, c_n at alpha_n.
inline Report verify_gasymov(const ExperimentConfig& c) {
  const FourierPotential q = build_potential(c.potential);
  Report rep;
  rep.name = "gasymov";
  rep.config = echo(c);
  bool one_sided = true;
  for (int n = 1; n <= q.window(); ++n)
    if (q[-n] != 0.0) one_sided = false;
  if (!one_sided) rep.note("potential has modes with n < 0; gaps are not expected to close");
  const auto gaps = collect_gaps(q, c.n_lo, c.n_hi, c.oracle, block_options(c), c.alpha);
  Preconditions pre = measure_preconditions(q, c.weight);
  pre.contraction_measured = max_contraction(gaps);
  rep.preconditions.push_back(pre);
  report_errors(rep, gaps);
  const double rounding = 1e-14 * std::max(1.0, pre.plain_norm);
  json rows = json::array();
  double worst_gamma = 0.0;
  for (const auto& g : gaps) {
    json row{{"n", g.n}};
    if (g.oracle) {
      const double gm = std::abs(g.oracle->gamma);
      worst_gamma = std::max(worst_gamma, gm);
      row["gamma_oracle"] = jnum(gm);
      if (!(gm <= c.tol.collapse))
        rep.fail("n = " + std::to_string(g.n) + ": oracle |gamma| = " + sci(gm) + " > " + sci(c.tol.collapse));
    }
    if (g.block) {
      const double a = std::abs(g.block->a_at_alpha), cn = std::abs(g.block->p_minus);
      row["a_n"] = jnum(a);
      row["c_n"] = jnum(cn);
      if (!(a <= rounding && cn <= rounding))
        rep.fail("n = " + std::to_string(g.n) + ": a_n = " + sci(a) + ", c_n = " + sci(cn) + " not zero");
    }
    rows.push_back(row);
  }
  rep.note("max oracle |gamma_n| = " + sci(worst_gamma) + " over n in [" + std::to_string(c.n_lo) + ", " +
           std::to_string(c.n_hi) + "]");
  rep.data["rows"] = rows;
  return rep;
}

/// N-gap approximants q_N for N in the configured range: distance to q and the
/// oracle gaps N < n <= N + 4.
inline Report verify_dense(const ExperimentConfig& c) {
  const FourierPotential q = build_potential(c.potential);
  Report rep;
  rep.name = "dense";
  rep.config = echo(c);
  Preconditions pre = measure_preconditions(q, c.weight);
  block::AdaptedOptions opt;
  opt.m = c.m;
  opt.threshold = c.M_thresh;
  opt.window = std::max({c.window, q.window(), c.n_hi + 4});
  opt.block = block_options(c);
  const auto a = block::adapted_map(q, opt);
  for (const auto& b : a.blocks) pre.contraction_measured = std::max(pre.contraction_measured, b.diagnostics.contraction);
  rep.preconditions.push_back(pre);
  const int N0 = std::max(c.n_lo, a.threshold);
  if (N0 > c.n_lo) rep.note("N < M_thresh = " + std::to_string(a.threshold) + " skipped");
  if (N0 > c.n_hi) {
    rep.note("no N in range");
    return rep;
  }
  struct Item {
    double distance = 0.0;
    double worst_gap = 0.0;
    int iterations = 0;
    std::string error;
  };
  const int count = c.n_hi - N0 + 1;
  std::vector<Item> items(static_cast<std::size_t>(count));
  parallel_for(items.size(), [&](std::size_t i) {
    const int N = N0 + static_cast<int>(i);
    Item& it = items[i];
    try {
      block::AdaptedOptions o = opt;
      o.m = a.m;
      o.threshold = a.threshold;
      const auto r = block::n_gap_approximant(q, N, o);
      it.distance = wnorm(r.q_N - q, c.weight);
      it.iterations = r.inverse.iterations;
      for (int n = N + 1; n <= N + 4; ++n)
        it.worst_gap = std::max(it.worst_gap, std::abs(floquet::periodic_eigs(r.q_N, n, c.oracle).gap));
    } catch (const Error& e) {
      it.error = e.what();
    }
  });
  json rows = json::array();
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const int N = N0 + i;
    const Item& it = items[static_cast<std::size_t>(i)];
    if (!it.error.empty()) {
      rep.fail("N = " + std::to_string(N) + ": " + it.error);
      continue;
    }
    rows.push_back({{"N", N}, {"distance", jnum(it.distance)}, {"max_gap_above_N", jnum(it.worst_gap)},
                    {"inverse_iterations", it.iterations}});
    rep.note("N = " + std::to_string(N) + ": ||q_N - q||_w = " + sci(it.distance) +
             ", max |gamma_n(q_N)| for N < n <= N+4 = " + sci(it.worst_gap));
    if (!(it.distance <= prev)) rep.fail("N = " + std::to_string(N) + ": distance increased");
    if (!(it.worst_gap <= c.tol.collapse)) rep.fail("N = " + std::to_string(N) + ": gap above N not collapsed");
    prev = it.distance;
  }
  rep.data["rows"] = rows;
  return rep;
}

/// Submultiplicativity, growth class and tempering per configured weight.
inline Report verify_weights(const ExperimentConfig& c) {
  Report rep;
  rep.name = "weights";
  rep.config = echo(c);
  json rows = json::array();
  for (const Weight& w : c.weight_list()) {
    const std::string tag = "[" + w.describe() + "] ";
    const auto sm = check_submultiplicative(w, c.weights_N);
    const Growth g = classify_growth(w, std::max(16, c.weights_N));
    json row{{"weight", w.describe()},
             {"submultiplicative", sm.holds},
             {"pairs_checked", sm.pairs_checked},
             {"worst_log_excess", jnum(sm.worst_log_excess)},
             {"growth", to_string(g)}};
    if (!sm.holds)
      rep.fail(tag + "not submultiplicative at (" + std::to_string(sm.first_violation->first) + ", " +
               std::to_string(sm.first_violation->second) + ")");
    json tempered = json::array();
    long long violations = 0;
    for (double eps : c.eps_list) {
      const auto t = check_submultiplicative(temper(w, eps), c.weights_N);
      if (!t.holds) {
        ++violations;
        rep.fail(tag + "tempered weight eps = " + sci(eps) + " violates submultiplicativity at (" +
                 std::to_string(t.first_violation->first) + ", " + std::to_string(t.first_violation->second) + ")");
      }
      tempered.push_back({{"eps", eps},
                          {"holds", t.holds},
                          {"worst_log_excess", jnum(t.worst_log_excess)},
                          {"crossover", crossover_index(w, eps, c.weights_N)}});
    }
    row["tempered"] = tempered;
    rows.push_back(row);
    rep.note(tag + "submultiplicative: " + (sm.holds ? "yes" : "no") + ", growth: " + to_string(g) +
             ", tempered violations: " + std::to_string(violations) + " of " + std::to_string(c.eps_list.size()));
  }
  rep.data["weights"] = rows;
  return rep;
}

inline RunResult run_experiment(Experiment e, const ExperimentConfig& c) {
  switch (e) {
    case Experiment::gaps: return run_gaps(c);
    case Experiment::oracle: return run_oracle(c);
    case Experiment::adapted: return run_adapted(c);
    case Experiment::theorem1: return {verify_theorem1(c), {}, {}};
    case Experiment::theorem4: return {verify_theorem4(c), {}, {}};
    case Experiment::theorem5: return {verify_theorem5(c), {}, {}};
    case Experiment::mathieu: return {verify_mathieu(c), {}, {}};
    case Experiment::gasymov: return {verify_gasymov(c), {}, {}};
    case Experiment::dense: return {verify_dense(c), {}, {}};
    case Experiment::weights: return {verify_weights(c), {}, {}};
  }
  throw ConfigError("unknown experiment");
}

}  // namespace hillgap::harness
