// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hillgap/harness/experiments.hpp"

using namespace hillgap;
using namespace hillgap::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail.push_back("failed: " + what);
    }
  }
  void info(const std::string& s) { detail.push_back(s); }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ExperimentConfig cfg(const json& j) { return parse_config(j); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void absorb(Outcome& o, const Report& r, const std::string& label) {
  if (!r.pass)
    for (const auto& l : r.lines)
      if (l.rfind("FAIL", 0) == 0) o.detail.push_back(label + ": " + l);
  o.require(r.pass, label + " report");
}

json random_real(int seed, double scale) {
  return {{"type", "random"},
          {"decay", {{"kind", "gevrey"}, {"r", 2.0}, {"a", 1.0}, {"sigma", 0.5}}},
          {"seed", seed},
          {"K", 24},
          {"real", true},
          {"scale", scale}};
}

const json kTheoremWeights = json::array({{{"kind", "trivial"}},
                                          {{"kind", "polynomial"}, {"r", 2.0}},
                                          {{"kind", "gevrey"}, {"r", 0.0}, {"a", 1.0}, {"sigma", 0.5}}});

std::vector<json> theorem_potentials() {
  return {{{"type", "mathieu"}, {"mu", 1.0}}, random_real(101, 5.0), random_real(202, 5.0), random_real(303, 5.0)};
}

json theorem_config(const json& potential) {
  return {{"potential", potential}, {"weights", kTheoremWeights}, {"n_range", {1, 24}}};
}

std::string label_of(const json& p) {
  return p["type"] == "mathieu" ? "mathieu(1)" : "random seed " + p["seed"].dump();
}

Outcome zero_potential() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const FourierPotential z(1);
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n) {
    const double exact = sigma_n(n);
    const auto b = block::block_data(z, n);
    const auto f = floquet::periodic_eigs(z, n);
    for (Complex v : {b.xi_minus, b.xi_plus, f.minus, f.plus}) worst = std::max(worst, std::abs(v - exact) / exact);
  }
  o.require(worst <= 1e-9, "eigenvalue relative error " + num(worst) + " <= 1e-9");
  double dworst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double lambda = -30.0 + 75.0 * k;
    const Complex exact = 2.0 * std::cos(std::sqrt(Complex(lambda)));
    dworst = std::max(dworst, std::abs(floquet::discriminant(z, lambda) - exact) / std::max(1.0, std::abs(exact)));
  }
  o.require(dworst <= 1e-8, "discriminant error " + num(dworst) + " <= 1e-8");
  const double t = seconds_since(t0);
  o.require(t < 1.0, "runtime " + num(t) + " s < 1 s");
  o.info("max relative eigenvalue error " + num(worst) + ", discriminant error " + num(dworst) + ", " + num(t) + " s");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (double mu : {0.25, 0.5, 1.0}) {
    const FourierPotential q = make_mathieu(mu);
    const int n0 = std::max(1, block::admissible_from(q));
    double worst = 0.0, conj = 0.0;
    for (int n = n0; n <= 10; ++n) {
      const auto b = block::block_data(q, n);
      const auto f = floquet::periodic_eigs(q, n);
      const double tol = 1e-6 * n * n;
      const double e = std::max(std::abs(b.xi_minus - f.minus), std::abs(b.xi_plus - f.plus));
      worst = std::max(worst, e / tol);
      conj = std::max(conj, std::abs(b.p_minus - std::conj(b.p_plus)));
    }
    o.require(worst <= 1.0, "mu = " + num(mu) + ": root mismatch ratio " + num(worst));
    o.require(conj <= 1e-10, "mu = " + num(mu) + ": |p_-n - conj p_n| = " + num(conj));
    o.info("mu = " + num(mu) + ", n = " + std::to_string(n0) + "..10: max |xi - lambda| / (1e-6 n^2) = " + num(worst) +
           ", max |p_-n - conj p_n| = " + num(conj));
  }
  const double t = seconds_since(t0);
  o.require(t < 30.0, "runtime " + num(t) + " s < 30 s");
  o.info("runtime " + num(t) + " s");
  return o;
}

Outcome gasymov_collapse() {
  Outcome o;
  const std::vector<std::vector<Complex>> cases = {{1.0}, {1.0, 0.5}};
  for (const auto& coeffs : cases) {
    const FourierPotential q = make_gasymov(coeffs);
    double oracle_gap = 0.0;
    for (int n = 1; n <= 10; ++n) oracle_gap = std::max(oracle_gap, std::abs(floquet::periodic_eigs(q, n).gap));
    double block_size = 0.0;
    for (int n = std::max(1, block::admissible_from(q)); n <= 10; ++n) {
      const auto b = block::block_data(q, n);
      const double scale = sigma_n(n);
      block_size = std::max(block_size, (std::abs(b.a_at_alpha) + std::abs(b.p_minus)) / scale);
      for (Complex off : {Complex(0.0), Complex(5.0, -2.0)}) {
        const auto c = block::coeff_an_cn(q, n, sigma_n(n) + off);
        block_size = std::max(block_size, (std::abs(c.a) + std::abs(c.c_minus)) / scale);
      }
    }
    const std::string tag = coeffs.size() == 1 ? "e^{2 pi i x}" : "e^{2 pi i x} + e^{4 pi i x}/2";
    o.require(oracle_gap <= 1e-7, tag + ": oracle max |gamma_n| = " + num(oracle_gap));
    o.require(block_size <= 1e-15, tag + ": block |a_n| + |c_n| = " + num(block_size));
    o.info(tag + ": oracle max |gamma_n| = " + num(oracle_gap) + ", block max (|a_n| + |c_n|) / n^2 pi^2 = " +
           num(block_size));
  }
  return o;
}

Outcome mathieu_asymptotics() {
  Outcome o;
  const Report r = verify_mathieu(cfg({{"potential", {{"type", "mathieu"}, {"mu", 1.0}}},
                                       {"n_range", {3, 6}},
                                       {"oracle", {{"precision", "quad"}}}}));
  absorb(o, r, "mathieu");
  const auto& rows = r.data["rows"];
  o.require(rows.size() == 4, "four rows");
  double prev = INFINITY, first_scaled = 0.0;
  for (const auto& row : rows) {
    const int n = row["n"].get<int>();
    const double ratio = row["ratio"].get<double>();
    const double dev = std::abs(ratio - 1.0);
    o.require(ratio >= 0.85 && ratio <= 1.15, "n = " + std::to_string(n) + " ratio " + num(ratio));
    o.require(dev < prev, "n = " + std::to_string(n) + " deviation shrinks");
    if (n == 3) first_scaled = dev * 9.0;
    o.require(dev * n * n <= first_scaled * (1.0 + 1e-12), "n = " + std::to_string(n) + " deviation within 9 dev_3 / n^2");
    prev = dev;
    o.info("n = " + std::to_string(n) + ": ratio " + std::to_string(ratio) + ", n^2 |ratio - 1| = " + num(dev * n * n));
  }
  return o;
}

Outcome theorem1_sums() {
  Outcome o;
  for (const json& p : theorem_potentials()) {
    const Report r = verify_theorem1(cfg(theorem_config(p)));
    absorb(o, r, label_of(p));
    for (const auto& w : r.data["weights"]) {
      int admissible = 0;
      double margin = INFINITY;
      for (const auto& s : w["sums"]) {
        ++admissible;
        margin = std::min(margin, s["margin"].get<double>());
      }
      const std::string tag = label_of(p) + " " + w["weight"].get<std::string>();
      o.require(admissible > 0, tag + ": at least one admissible N");
      o.require(margin > 0.0, tag + ": smallest margin " + num(margin));
      o.info(tag + ": " + std::to_string(admissible) + " admissible N, smallest margin " + num(margin));
    }
  }
  return o;
}

Outcome individual_estimates() {
  Outcome o;
  for (const json& p : theorem_potentials()) {
    const Report r1 = verify_theorem1(cfg(theorem_config(p)));
    const Report r4 = verify_theorem4(cfg(theorem_config(p)));
    absorb(o, r1, label_of(p) + " gamma");
    absorb(o, r4, label_of(p) + " delta");
    for (std::size_t i = 0; i < r1.data["weights"].size(); ++i) {
      const auto& w1 = r1.data["weights"][i];
      const auto& w4 = r4.data["weights"][i];
      const std::string tag = label_of(p) + " " + w1["weight"].get<std::string>();
      const double g = w1["individual_ratio"].get<double>();
      const double d = w4["individual_ratio"].get<double>();
      o.require(g <= 1.0, tag + ": w|gamma| / 6||q||_w = " + num(g));
      o.require(d <= 1.0, tag + ": w|delta| / 4||q||_w = " + num(d));
      if (!w1["sums"].empty()) o.require(!w4["onset"].is_null(), tag + ": delta onset found");
      o.info(tag + ": max w|gamma| / 6||q||_w = " + num(g) + ", max w|delta| / 4||q||_w = " + num(d) + ", onset " +
             w4["onset"].dump());
    }
  }
  return o;
}

Outcome skew_lemma() {
  Outcome o;
  int total = 0;
  for (const json& p : theorem_potentials()) {
    const Report r = verify_theorem1(cfg(theorem_config(p)));
    absorb(o, r, label_of(p));
    const auto& s = r.data["skew"];
    const int checks = s["checks"].get<int>();
    total += checks;
    if (checks == 0) continue;
    const double lo = s["min_ratio"].get<double>(), hi = s["max_ratio"].get<double>();
    o.require(lo >= 1.0 - 1e-9 && hi <= 9.0, label_of(p) + ": |gamma|^2 / |p_n p_-n| in [" + num(lo) + ", " + num(hi) + "]");
    o.info(label_of(p) + ": " + std::to_string(checks) + " checks, |gamma|^2 / |p_n p_-n| in [" + num(lo) + ", " +
           num(hi) + "]");
  }
  o.require(total > 0, "at least one skew check");
  return o;
}

Outcome adapted_map() {
  Outcome o;
  const std::vector<json> potentials = {
      {{"type", "mathieu"}, {"mu", 0.5}},
      {{"type", "random"}, {"decay", {{"kind", "polynomial"}, {"r", 3.0}}}, {"seed", 7}, {"K", 12}, {"real", false}}};
  for (const json& p : potentials) {
    const RunResult r = run_adapted(cfg({{"potential", p}, {"weight", {{"kind", "polynomial"}, {"r", 1.0}}},
                                         {"window", 16}}));
    const std::string tag = p["type"].get<std::string>();
    absorb(o, r.report, tag);
    const auto& d = r.report.data;
    const double rt = d["roundtrip"].get<double>(), rate = d["inverse_rate"].get<double>();
    const double nq = d["norm_q"].get<double>(), np = d["norm_p"].get<double>();
    o.require(rt <= 1e-10, tag + ": round trip " + num(rt));
    o.require(0.5 * nq <= np && np <= 2.0 * nq, tag + ": norm equivalence");
    o.require(rate <= 0.2, tag + ": inverse rate " + num(rate));
    o.info(tag + ": round trip " + num(rt) + ", ||Phi(q)||_w / ||q||_w = " + num(np / nq) + ", rate " + num(rate));
  }
  return o;
}

Outcome n_gap_density() {
  Outcome o;
  const Report r = verify_dense(cfg({{"potential", {{"type", "mathieu"}, {"mu", 0.5}}}, {"n_range", {8, 12}}}));
  absorb(o, r, "dense");
  const auto& rows = r.data["rows"];
  o.require(rows.size() == 5, "five approximants");
  double prev = INFINITY;
  for (const auto& row : rows) {
    const int N = row["N"].get<int>();
    const double dist = row["distance"].get<double>(), gap = row["max_gap_above_N"].get<double>();
    o.require(dist <= prev, "N = " + std::to_string(N) + ": distance does not increase");
    o.require(gap <= 1e-7, "N = " + std::to_string(N) + ": gaps above N " + num(gap));
    prev = dist;
    o.info("N = " + std::to_string(N) + ": ||q_N - q||_w = " + num(dist) + ", max |gamma_n(q_N)|, N < n <= N+4: " +
           num(gap));
  }
  return o;
}

Outcome tempering() {
  Outcome o;
  const Report r = verify_weights(
      cfg({{"weights", json::array({{{"kind", "gevrey"}, {"r", 0.0}, {"a", 1.0}, {"sigma", 0.5}},
                                    {{"kind", "log_tempered"}, {"r", 0.0}, {"a", 1.0}, {"alpha", 1.0}}})},
           {"eps_list", {0.2, 0.1, 0.05}},
           {"N", 200}}));
  absorb(o, r, "weights");
  int checked = 0;
  for (const auto& w : r.data["weights"])
    for (const auto& t : w["tempered"]) {
      ++checked;
      o.require(t["holds"].get<bool>(), w["weight"].get<std::string>() + " eps " + num(t["eps"].get<double>()));
    }
  o.require(checked == 6, "six tempered weights checked");
  o.info(std::to_string(checked) + " tempered weights, all pairs |n|, |m| <= 200");
  return o;
}

Outcome theorem5() {
  Outcome o;
  for (double mu : {0.5, 1.0}) {
    const Report r = verify_theorem5(cfg({{"potential", {{"type", "mathieu"}, {"mu", mu}}},
                                          {"weight", {{"kind", "superexp"}, {"sigma", 2.0}}},
                                          {"n_range", {1, 12}}}));
    const std::string tag = "mathieu(" + num(mu) + ")";
    absorb(o, r, tag);
    int rows = 0;
    double worst = 0.0;
    for (const auto& w : r.data["weights"])
      for (const auto& row : w["rows"]) {
        ++rows;
        worst = std::max(worst, row["gamma"].get<double>() / row["bound"].get<double>());
      }
    o.require(rows > 0, tag + ": admissible n checked");
    o.require(worst <= 1.0, tag + ": max |gamma| / bound " + num(worst));
    o.info(tag + ": " + std::to_string(rows) + " admissible n, max |gamma_n| / 2n exp(-n psi) = " + num(worst));
  }
  return o;
}

Outcome hygiene() {
  Outcome o;
  double det = 0.0;
  FourierPotential mixed(3);
  mixed.set(1, Complex(0.6, 0.2));
  mixed.set(-2, Complex(-0.3, 0.5));
  mixed.set(3, 0.25);
  for (const FourierPotential& q : {FourierPotential(1), make_mathieu(1.0), make_gasymov({1.0, 0.5}), mixed})
    for (auto p : {floquet::Precision::standard, floquet::Precision::extended, floquet::Precision::quad})
      for (Complex lambda : {Complex(-40.0), Complex(0.0), Complex(3.0, 2.0), Complex(250.0, -10.0), Complex(1500.0)}) {
        const auto M = floquet::monodromy(q, lambda, floquet::min_steps(lambda), p);
        det = std::max(det, std::abs(M.det - 1.0));
      }
  o.require(det <= 1e-10, "monodromy |det - 1| = " + num(det));
  o.info("max |det M - 1| = " + num(det));

  const FourierPotential m = make_mathieu(1.0);
  double order = INFINITY;
  for (int n = 1; n <= 6; ++n) {
    floquet::OracleOptions opt;
    opt.precision = floquet::Precision::quad;
    opt.steps = 4096;
    const Complex ref = floquet::periodic_eigs(m, n, opt).minus;
    std::vector<double> err;
    for (int steps : {128, 256, 512}) {
      opt.steps = steps;
      err.push_back(std::abs(floquet::periodic_eigs(m, n, opt).minus - ref));
    }
    for (std::size_t i = 0; i + 1 < err.size(); ++i) order = std::min(order, std::log2(err[i] / err[i + 1]));
  }
  o.require(order >= 3.5, "observed order " + num(order));
  o.info("smallest observed order under step halving " + num(order));

  const json gaps = {{"potential",
                      {{"type", "random"}, {"decay", {{"kind", "polynomial"}, {"r", 3.0}}}, {"seed", 12345}, {"K", 12},
                       {"real", false}}},
                     {"n_range", {1, 12}}};
  std::ostringstream a, b;
  write_gap_csv(a, run_gaps(cfg(gaps)).rows);
  write_gap_csv(b, run_gaps(cfg(gaps)).rows);
  o.require(a.str() == b.str() && !a.str().empty(), "identical CSV from identical seeds");
  o.info("CSV tables " + std::string(a.str() == b.str() ? "identical" : "differ") + " (" +
         std::to_string(a.str().size()) + " bytes)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"zero potential exactness", zero_potential},
      {"oracle equivalence", oracle_equivalence},
      {"one-sided potentials collapse", gasymov_collapse},
      {"Mathieu asymptotics", mathieu_asymptotics},
      {"weighted gap sum bound", theorem1_sums},
      {"individual gamma and delta estimates", individual_estimates},
      {"skew bound", skew_lemma},
      {"adapted coefficient map", adapted_map},
      {"N-gap approximants", n_gap_density},
      {"tempered weights", tempering},
      {"superexponential gap bound", theorem5},
      {"numerical hygiene", hygiene},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu (%s): %s\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL");
    for (const auto& d : o.detail) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
