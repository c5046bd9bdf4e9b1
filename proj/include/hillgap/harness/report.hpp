#pragma once

// Reports and CSV tables produced by the experiment runners.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hillgap/harness/config.hpp"

namespace hillgap::harness {

/// %.17g, with "nan" and "inf"/"-inf" spelled the same on every platform.
inline std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Finite doubles as numbers, the rest as strings (JSON has no nan).
inline json jnum(double x) {
  if (std::isfinite(x)) return x;
  return fmt17(x);
}

inline json jcomplex(Complex z) { return json::array({jnum(z.real()), jnum(z.imag())}); }

struct Preconditions {
  std::string weight;
  double norm_w = 0.0;
  double four_norm_w = 0.0;
  /// Unweighted norm of the mean-free part, which governs the block decomposition.
  double plain_norm = 0.0;
  int block_admissible_from = 1;
  /// Bound 2||q||/n on ||T_n|| at the first admissible n.
  double contraction_bound = 0.0;
  /// Largest ratio of consecutive Neumann increments observed (0 if no block run).
  double contraction_measured = 0.0;

  json to_json() const {
    return json{{"weight", weight},
                {"norm_w", jnum(norm_w)},
                {"four_norm_w", jnum(four_norm_w)},
                {"plain_norm", jnum(plain_norm)},
                {"block_admissible_from", block_admissible_from},
                {"contraction_bound", jnum(contraction_bound)},
                {"contraction_measured", jnum(contraction_measured)}};
  }
};

inline Preconditions measure_preconditions(const FourierPotential& q, const Weight& w) {
  Preconditions p;
  p.weight = w.describe();
  p.norm_w = wnorm(q, w);
  p.four_norm_w = 4.0 * p.norm_w;
  p.plain_norm = block::plain_norm(q);
  p.block_admissible_from = block::admissible_from(q);
  p.contraction_bound = 2.0 * p.plain_norm / p.block_admissible_from;
  return p;
}

struct Report {
  std::string name;
  bool pass = true;
  std::vector<Preconditions> preconditions;
  std::vector<std::string> lines;
  json config;
  json data = json::object();

  void note(const std::string& s) { lines.push_back(s); }
  void fail(const std::string& s) {
    pass = false;
    lines.push_back("FAIL: " + s);
  }
  int exit_code() const { return pass ? 0 : 1; }

  json to_json() const {
    json pre = json::array();
    for (const auto& p : preconditions) pre.push_back(p.to_json());
    return json{{"experiment", name},
                {"result", pass ? "PASS" : "FAIL"},
                {"preconditions", pre},
                {"config", config},
                {"notes", lines},
                {"data", data}};
  }

  std::string to_text() const {
    std::ostringstream os;
    os << name << ": " << (pass ? "PASS" : "FAIL") << "\n";
    for (const auto& p : preconditions)
      os << "  preconditions [" << p.weight << "]: ||q||_w = " << fmt17(p.norm_w)
         << ", 4||q||_w = " << fmt17(p.four_norm_w) << ", ||q|| = " << fmt17(p.plain_norm)
         << ", block admissible from n = " << p.block_admissible_from
         << ", contraction bound = " << fmt17(p.contraction_bound)
         << ", measured = " << fmt17(p.contraction_measured) << "\n";
    for (const auto& l : lines) os << "  " << l << "\n";
    return os.str();
  }
};

/// One row of the gap table.
struct GapRow {
  int n = 0;
  std::string method;
  Complex lambda_minus{NAN, NAN}, lambda_plus{NAN, NAN}, gamma{NAN, NAN};
  Complex alpha{NAN, NAN}, p_plus{NAN, NAN}, p_minus{NAN, NAN};
  double resid = NAN;
  int iters = 0;
  std::string error;
};

inline constexpr const char* kGapColumns =
    "n,method,re_lm,im_lm,re_lp,im_lp,re_gamma,im_gamma,re_alpha,im_alpha,re_pp,im_pp,re_pm,im_pm,resid,iters";

inline void write_gap_csv(std::ostream& os, const std::vector<GapRow>& rows) {
  os << kGapColumns << "\n";
  for (const auto& r : rows) {
    os << r.n << "," << r.method;
    for (Complex z : {r.lambda_minus, r.lambda_plus, r.gamma, r.alpha, r.p_plus, r.p_minus})
      os << "," << fmt17(z.real()) << "," << fmt17(z.imag());
    os << "," << fmt17(r.resid) << "," << r.iters << "\n";
  }
}

struct ModeRow {
  int n = 0;
  Complex q, p;
};

inline void write_mode_csv(std::ostream& os, const std::vector<ModeRow>& rows) {
  os << "n,re_q,im_q,re_p,im_p\n";
  for (const auto& r : rows)
    os << r.n << "," << fmt17(r.q.real()) << "," << fmt17(r.q.imag()) << "," << fmt17(r.p.real()) << ","
       << fmt17(r.p.imag()) << "\n";
}

}  // namespace hillgap::harness
