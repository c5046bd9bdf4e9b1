#pragma once

/*
 * Fourier block decomposition of -f'' + q f = lambda f near n^2 pi^2.
 *
 * On 2-periodic modes e_m the resonant pair e_{+n}, e_{-n} is split off. With
 * T_n = V A^{-1} Q_n and T^_n = (I - T_n)^{-1} the eigenvalue problem reduces
 * to the 2x2 matrix
 *
 *   S_n = [[lambda - sigma_n - a_n, -c_minus], [-c_plus, lambda - sigma_n - a_n]]
 *
 * with a_n  = coefficient of e_n    in T^_n V e_n,
 *      c_minus = coefficient of e_{-n} in T^_n V e_n     (first term q_{-n}),
 *      c_plus  = coefficient of e_n    in T^_n V e_{-n}  (first term q_n).
 *
 * Every routine here assumes a potential with zero mean unless it says
 * otherwise; block_data() and the adapted map split off the mean themselves.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hillgap/core.hpp"
#include "hillgap/seqspace.hpp"
#include "hillgap/weights.hpp"

namespace hillgap::block {

struct BlockOptions {
  /// Relative tolerance of the Neumann iteration (global and on modes +-n).
  double tol = 1e-14;
  int max_neumann = 400;
  /// Neumann depth the mode cut is sized for: M_cut = n + 2 K nu_cut + 8.
  int nu_cut = 16;
  /// Fixed point tolerance for alpha_n, relative to max(1, n^2); 0 means rounding level.
  double alpha_tol = 0.0;
  int max_alpha = 100;
  int max_newton = 60;
  /// Refuse n < 4 ||q|| instead of attempting the iteration.
  bool enforce_contraction = true;
  /// Solve (I - T_n) g = rhs by dense LU instead of iterating.
  bool dense = false;
};

/// Unweighted l2 norm of the mean-free part, sqrt(sum_{n != 0} |q_n|^2).
inline double plain_norm(const FourierPotential& q) {
  double s = 0.0;
  for (int n = 1; n <= q.window(); ++n) s += std::norm(q[n]) + std::norm(q[-n]);
  return std::sqrt(s);
}

/// Smallest admissible gap index, ceil(4 ||q||).
inline int admissible_from(const FourierPotential& q) {
  return std::max(1, static_cast<int>(std::ceil(4.0 * plain_norm(q) - 1e-12)));
}

inline int mode_cut(const FourierPotential& q, int n, const BlockOptions& opt) {
  return n + 2 * std::max(1, q.window()) * opt.nu_cut + 8;
}

inline bool in_strip(int n, Complex lambda) { return std::abs(lambda.real() - sigma_n(n)) <= 12.0 * n; }

namespace detail {

inline void require_mean_free(const FourierPotential& q) {
  if (q.mean() != 0.0)
    throw PreconditionError("block decomposition expects a mean-free potential (mean " + format_complex(q.mean()) +
                            ")");
}

inline void require_contraction(const FourierPotential& q, int n, const BlockOptions& opt) {
  if (!opt.enforce_contraction) return;
  const double norm = plain_norm(q);
  if (n < 4.0 * norm)
    throw PreconditionError("T_n is not a 1/2-contraction: n = " + std::to_string(n) + " < 4||q|| = " +
                            std::to_string(4.0 * norm));
}

/// lambda = base + offset, kept apart so tiny offsets survive in the denominators.
struct Point {
  Complex base;
  Complex offset{};
  Complex value() const { return base + offset; }
};

/// g_m = f_m / (lambda - m^2 pi^2) off the resonant pair, then V g.
inline ParityVector apply_T(const FourierPotential& q, int n, const Point& lam, const ParityVector& f,
                            double* truncation_loss) {
  ParityVector g(f.parity(), f.cut());
  auto& gd = g.data();
  const auto& fd = f.data();
  for (std::size_t j = 0; j < fd.size(); ++j) {
    const int m = f.mode(j);
    if (std::abs(m) == n || fd[j] == 0.0) continue;
    const double mm = static_cast<double>(m) * m * pi * pi;
    const Complex d = (lam.base - mm) + lam.offset;
    if (std::abs(d) < 1e-12)
      throw DomainError("lambda is within 1e-12 of m^2 pi^2 for m = " + std::to_string(m));
    gd[j] = fd[j] / d;
  }
  return multiply_by_potential(q, g, truncation_loss);
}

}  // namespace detail

/// T_n f = V A_lambda^{-1} Q_n f for lambda in the strip U_n.
inline ParityVector apply_Tn(const FourierPotential& q, int n, Complex lambda, const ParityVector& f,
                             double* truncation_loss = nullptr) {
  detail::require_mean_free(q);
  if (n < 1) throw DomainError("gap index must be >= 1");
  if (!in_strip(n, lambda)) throw DomainError("lambda outside U_n = {|Re lambda - n^2 pi^2| <= 12 n}");
  if (f.parity() != parity_of(n)) throw DomainError("parity vector must share the parity of n");
  return detail::apply_T(q, n, {lambda}, f, truncation_loss);
}

struct ResolveResult {
  ParityVector g{Parity::even, 0};
  int iterations = 0;
  /// Norm of the last Neumann increment.
  double residual = 0.0;
  double truncation_loss = 0.0;
  /// Largest ratio of consecutive Neumann increments seen.
  double contraction = 0.0;
  std::vector<double> history;
};

namespace detail {

inline ResolveResult resolve_dense(const FourierPotential& q, int n, const Point& lam, const ParityVector& rhs) {
  const int cut = rhs.cut();
  const std::size_t N = rhs.size();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t j = 0; j < N; ++j) {
    ParityVector e(rhs.parity(), cut);
    e.data()[j] = 1.0;
    const ParityVector col = apply_T(q, n, lam, e, nullptr);
    for (std::size_t i = 0; i < N; ++i)
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -= col.data()[i];
  }
  Eigen::VectorXcd b(static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) b(static_cast<Eigen::Index>(i)) = rhs.data()[i];
  const Eigen::VectorXcd x = A.partialPivLu().solve(b);
  ResolveResult out;
  out.g = ParityVector(rhs.parity(), cut);
  for (std::size_t i = 0; i < N; ++i) out.g.data()[i] = x(static_cast<Eigen::Index>(i));
  out.residual = (A * x - b).norm();
  out.iterations = 1;
  return out;
}

inline ResolveResult resolve(const FourierPotential& q, int n, const Point& lam, const ParityVector& rhs,
                             const BlockOptions& opt) {
  if (opt.dense) return resolve_dense(q, n, lam, rhs);
  // g = sum_k d_k, d_k = T_n^k rhs; stop when the geometric tail bound is
  // below tol relative to g and to the entries at +-n
  constexpr double kTailFloor = 1e-290;
  ResolveResult out;
  ParityVector g = rhs;
  ParityVector d = rhs;
  double prev = 0.0;
  std::vector<double> ratios;
  for (int k = 1; k <= opt.max_neumann; ++k) {
    double loss = 0.0;
    d = apply_T(q, n, lam, d, &loss);
    g += d;
    out.truncation_loss = std::max(out.truncation_loss, loss);
    const double dn = d.norm(), gn = g.norm();
    out.history.push_back(dn);
    out.iterations = k;
    out.residual = dn;
    if (dn == 0.0) return out.g = std::move(g), out;
    if (prev > 0.0) {
      ratios.push_back(dn / prev);
      out.contraction = std::max(out.contraction, dn / prev);
    }
    prev = dn;
    if (ratios.size() >= 3) {
      const double rho = std::max({ratios[ratios.size() - 1], ratios[ratios.size() - 2], ratios[ratios.size() - 3]});
      if (rho < 1.0) {
        const double tail = dn * rho / (1.0 - rho);
        auto settled = [&](int m) { return tail <= opt.tol * std::abs(g[m]) || tail <= kTailFloor; };
        if (tail <= opt.tol * gn && settled(n) && settled(-n)) return out.g = std::move(g), out;
      }
    }
    if (k > 8 && dn > 1e6 * out.history.front())
      throw ConvergenceError("Neumann iteration diverges for n = " + std::to_string(n));
  }
  std::string hist;
  const std::size_t from = out.history.size() > 5 ? out.history.size() - 5 : 0;
  for (std::size_t i = from; i < out.history.size(); ++i) hist += " " + std::to_string(out.history[i]);
  throw ConvergenceError("Neumann iteration for n = " + std::to_string(n) + " did not converge; last increments:" +
                         hist);
}

}  // namespace detail

/// g = (I - T_n)^{-1} rhs as the Neumann sum of T_n^k rhs (or dense LU).
inline ResolveResult resolve_hat_Tn(const FourierPotential& q, int n, Complex lambda, const ParityVector& rhs,
                                    const BlockOptions& opt = {}) {
  detail::require_mean_free(q);
  detail::require_contraction(q, n, opt);
  if (n < 1) throw DomainError("gap index must be >= 1");
  if (!in_strip(n, lambda)) throw DomainError("lambda outside U_n = {|Re lambda - n^2 pi^2| <= 12 n}");
  if (rhs.parity() != parity_of(n)) throw DomainError("parity vector must share the parity of n");
  return detail::resolve(q, n, {lambda}, rhs, opt);
}

struct Coefficients {
  Complex a;        // from T^ V e_n at e_n
  Complex a_minus;  // from T^ V e_{-n} at e_{-n}; equals a
  Complex c_plus;   // T^ V e_{-n} at e_n
  Complex c_minus;  // T^ V e_n at e_{-n}
  int iterations = 0;
  double residual = 0.0;
  double truncation_loss = 0.0;
  double contraction = 0.0;
};

namespace detail {

inline Coefficients coefficients(const FourierPotential& q, int n, const Point& lam, const BlockOptions& opt,
                                 bool need_c = true) {
  const int cut = mode_cut(q, n, opt);
  Coefficients out;
  auto run = [&](int m) {
    const ParityVector rhs = multiply_by_potential(q, ParityVector::unit(m, cut));
    ResolveResult r = resolve(q, n, lam, rhs, opt);
    out.iterations = std::max(out.iterations, r.iterations);
    out.residual = std::max(out.residual, r.residual);
    out.truncation_loss = std::max(out.truncation_loss, r.truncation_loss);
    out.contraction = std::max(out.contraction, r.contraction);
    return r.g;
  };
  const ParityVector h = run(n);
  out.a = h[n];
  out.c_minus = h[-n];
  if (need_c) {
    const ParityVector hm = run(-n);
    out.c_plus = hm[n];
    out.a_minus = hm[-n];
  }
  return out;
}

}  // namespace detail

/// a_n, c_plus and c_minus at lambda.
inline Coefficients coeff_an_cn(const FourierPotential& q, int n, Complex lambda, const BlockOptions& opt = {}) {
  detail::require_mean_free(q);
  detail::require_contraction(q, n, opt);
  if (n < 1) throw DomainError("gap index must be >= 1");
  if (!in_strip(n, lambda)) throw DomainError("lambda outside U_n = {|Re lambda - n^2 pi^2| <= 12 n}");
  return detail::coefficients(q, n, {lambda}, opt);
}

struct AlphaResult {
  Complex alpha;
  int iterations = 0;
  double last_step = 0.0;
  double rate = 0.0;
  /// |alpha - n^2 pi^2| <= m^2 / 4n with m = ceil(4 ||q||).
  bool bound_ok = false;
  double bound = 0.0;
};

/// Fixed point alpha = n^2 pi^2 + a_n(alpha) by plain iteration.
inline AlphaResult alpha_fixed_point(const FourierPotential& q, int n, const BlockOptions& opt = {}) {
  detail::require_mean_free(q);
  detail::require_contraction(q, n, opt);
  if (n < 1) throw DomainError("gap index must be >= 1");
  const double sigma = sigma_n(n);
  const double tol = opt.alpha_tol > 0.0 ? opt.alpha_tol * std::max(1.0, double(n) * n) : 4e-16 * sigma;
  AlphaResult out;
  Complex alpha = sigma;
  double prev = 0.0;
  int flat = 0;
  for (int k = 1; k <= opt.max_alpha; ++k) {
    const Coefficients c = detail::coefficients(q, n, {alpha}, opt, false);
    const Complex next = sigma + c.a;
    const double step = std::abs(next - alpha);
    if (std::abs(next - sigma) > n) throw ConvergenceError("alpha_n escaped D_n for n = " + std::to_string(n));
    if (prev > 0.0 && step > 0.0) out.rate = std::max(out.rate, step / prev);
    alpha = next;
    out.iterations = k;
    out.last_step = step;
    if (step <= tol) break;
    if (step >= prev && prev > 0.0 && step <= 64.0 * tol && ++flat >= 2) break;
    if (k == opt.max_alpha) throw ConvergenceError("alpha_n fixed point did not converge for n = " + std::to_string(n));
    if (k > 4 && out.rate >= 1.0) throw ConvergenceError("alpha_n iteration is not contracting for n = " + std::to_string(n));
    prev = step;
  }
  const double m = std::ceil(4.0 * plain_norm(q) - 1e-12);
  out.alpha = alpha;
  out.bound = m * m / (4.0 * n);
  out.bound_ok = std::abs(alpha - sigma) <= out.bound * (1.0 + 1e-12) + 1e-12;
  return out;
}

struct GapRoots {
  Complex xi_minus, xi_plus;
  /// xi_plus - xi_minus, formed from the offsets to alpha_n.
  Complex gamma;
  bool collapsed = false;
  int iterations = 0;
};

struct BlockDiagnostics {
  int alpha_iterations = 0;
  int root_iterations = 0;
  int neumann_iterations = 0;
  double residual = 0.0;
  double truncation_loss = 0.0;
  double contraction = 0.0;
  double alpha_rate = 0.0;
  bool alpha_bound_ok = false;
  /// |a_n - a_{-n}| at alpha_n.
  double diagonal_mismatch = 0.0;
};

struct BlockData {
  int n = 0;
  Complex alpha;
  Complex a_at_alpha;
  Complex p_plus, p_minus;
  Complex xi_minus, xi_plus;
  Complex gamma;
  bool collapsed = false;
  BlockDiagnostics diagnostics;
};

namespace detail {

/// Below this |c_plus c_minus| the pair is treated as one double root.
inline constexpr double kCollapseProduct = 1e-280;

struct RootSolver {
  const FourierPotential& q;
  int n;
  Complex alpha;
  Complex a_alpha;
  const BlockOptions& opt;
  int evaluations = 0;
  Coefficients last{};

  // g_s(eta) = eta - (a(alpha + eta) - a(alpha)) - s phi(alpha + eta), using
  // alpha - sigma_n = a(alpha); the fixed point defect is at rounding level and
  // would otherwise swamp gaps far below the spacing of doubles near alpha
  Complex value(Complex eta, int s, Complex& phi_ref) {
    last = coefficients(q, n, {alpha, eta}, opt);
    ++evaluations;
    Complex phi = std::sqrt(last.c_plus * last.c_minus);
    if (std::abs(phi - phi_ref) > std::abs(-phi - phi_ref)) phi = -phi;
    phi_ref = phi;
    return eta - (last.a - a_alpha) - static_cast<double>(s) * phi;
  }

  Complex solve(Complex eta, int s, Complex phi_ref, int& iterations) {
    const double h = 1e-6 * n;
    Complex g = value(eta, s, phi_ref);
    double prev_step = 0.0;
    for (int k = 1; k <= opt.max_newton; ++k) {
      iterations = k;
      Complex phi_h = phi_ref;
      const Complex gh = value(eta + h, s, phi_h);
      const Complex dg = (gh - g) / h;
      if (dg == 0.0) throw ConvergenceError("flat determinant factor for n = " + std::to_string(n));
      Complex step = g / dg;
      // damped update
      Complex phi_try = phi_ref;
      Complex trial = eta - step;
      Complex gt = value(trial, s, phi_try);
      int halvings = 0;
      while (std::abs(gt) > std::abs(g) && halvings < 20) {
        step *= 0.5;
        trial = eta - step;
        phi_try = phi_ref;
        gt = value(trial, s, phi_try);
        ++halvings;
      }
      const double size = std::abs(step);
      eta = trial;
      g = gt;
      phi_ref = phi_try;
      if (g == 0.0 || size <= 1e-14 * std::abs(eta) || size <= 1e-300) return eta;
      if (k >= 3 && prev_step > 0.0 && size >= prev_step && size <= 1e-10 * std::max(std::abs(eta), 1e-300))
        return eta;
      prev_step = size;
      if (std::abs(alpha + eta - sigma_n(n)) > n)
        throw ConvergenceError("gap root left D_n for n = " + std::to_string(n));
    }
    throw ConvergenceError("Newton on the determinant factor did not converge for n = " + std::to_string(n));
  }
};

inline bool eta_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Block data for a mean-free potential.
inline BlockData block_data_mean_free(const FourierPotential& q, int n, const BlockOptions& opt) {
  const AlphaResult al = alpha_fixed_point(q, n, opt);
  const Coefficients c = coefficients(q, n, {al.alpha}, opt);
  BlockData out;
  out.n = n;
  out.alpha = al.alpha;
  out.a_at_alpha = c.a;
  out.p_plus = c.c_plus;
  out.p_minus = c.c_minus;
  out.diagnostics.alpha_iterations = al.iterations;
  out.diagnostics.alpha_rate = al.rate;
  out.diagnostics.alpha_bound_ok = al.bound_ok;
  out.diagnostics.neumann_iterations = c.iterations;
  out.diagnostics.residual = c.residual;
  out.diagnostics.truncation_loss = c.truncation_loss;
  out.diagnostics.contraction = c.contraction;
  out.diagnostics.diagonal_mismatch = std::abs(c.a - c.a_minus);

  const Complex product = c.c_plus * c.c_minus;
  if (std::abs(product) < kCollapseProduct) {
    out.xi_minus = out.xi_plus = al.alpha;
    out.gamma = 0.0;
    out.collapsed = true;
    return out;
  }
  RootSolver rs{q, n, al.alpha, c.a, opt};
  const Complex phi0 = std::sqrt(product);
  int it_plus = 0, it_minus = 0;
  Complex eta_plus = rs.solve(phi0, +1, phi0, it_plus);
  Complex eta_minus = rs.solve(-phi0, -1, phi0, it_minus);
  out.diagnostics.root_iterations = it_plus + it_minus;
  out.diagnostics.neumann_iterations = std::max(out.diagnostics.neumann_iterations, rs.last.iterations);
  if (eta_less(eta_plus, eta_minus)) std::swap(eta_plus, eta_minus);
  out.xi_minus = al.alpha + eta_minus;
  out.xi_plus = al.alpha + eta_plus;
  out.gamma = eta_plus - eta_minus;
  for (Complex xi : {out.xi_minus, out.xi_plus})
    if (std::abs(xi - sigma_n(n)) > n) throw ConvergenceError("gap root outside D_n for n = " + std::to_string(n));
  return out;
}

}  // namespace detail

/// alpha_n, p_{+-n}, the roots xi_+- of det S_n and gamma_n. The mean of q is
/// split off and added back to alpha_n and xi_+-.
inline BlockData block_data(const FourierPotential& q, int n, const BlockOptions& opt = {}) {
  if (n < 1) throw DomainError("gap index must be >= 1");
  const FourierPotential q0 = q.without_mean();
  detail::require_contraction(q0, n, opt);
  BlockData b = detail::block_data_mean_free(q0, n, opt);
  b.alpha += q.mean();
  b.xi_minus += q.mean();
  b.xi_plus += q.mean();
  return b;
}

/// Roots xi_-, xi_+ of det S_n in D_n and gamma_n = xi_+ - xi_-.
inline GapRoots gap_roots(const FourierPotential& q, int n, const BlockOptions& opt = {}) {
  const BlockData b = block_data(q, n, opt);
  return {b.xi_minus, b.xi_plus, b.gamma, b.collapsed, b.diagnostics.root_iterations};
}

/// Neumann terms t_nu = coefficient of e_n in T_n^nu V e_{-n}, nu = 0..nu_max;
/// they sum to c_plus.
inline std::vector<Complex> c_series_terms(const FourierPotential& q, int n, Complex lambda, int nu_max) {
  detail::require_mean_free(q);
  if (n < 1) throw DomainError("gap index must be >= 1");
  if (nu_max < 0) throw DomainError("nu_max must be >= 0");
  if (!in_strip(n, lambda)) throw DomainError("lambda outside U_n = {|Re lambda - n^2 pi^2| <= 12 n}");
  const int cut = n + 2 * std::max(1, q.window()) * (nu_max + 1) + 8;
  ParityVector f = multiply_by_potential(q, ParityVector::unit(-n, cut));
  std::vector<Complex> terms;
  terms.reserve(static_cast<std::size_t>(nu_max) + 1);
  for (int nu = 0; nu <= nu_max; ++nu) {
    if (nu > 0) f = detail::apply_T(q, n, {lambda}, f, nullptr);
    terms.push_back(f[n]);
  }
  return terms;
}

struct AdaptedOptions {
  int m = 0;         // radius of the admissible ball; 0 means ceil(4 ||q||) + 1
  int threshold = 0; // M_thresh; 0 means max(ceil(4 ||q||) + 1, 8)
  int window = 0;    // output window; 0 means the window of q
  BlockOptions block{};
};

struct AdaptedResult {
  FourierPotential p;
  std::vector<BlockData> blocks;  // one per n in [threshold, window]
  int m = 0;
  int threshold = 0;
};

inline int default_threshold(const FourierPotential& q) {
  return std::max(static_cast<int>(std::ceil(4.0 * plain_norm(q) - 1e-12)) + 1, 8);
}

/// Phi_m(q): q_n for |n| < M, c_plus(alpha_n) at n and c_minus(alpha_n) at -n for M <= n <= window.
inline AdaptedResult adapted_map(const FourierPotential& q, const AdaptedOptions& opt = {}) {
  const FourierPotential q0 = q.without_mean();
  const double norm = plain_norm(q0);
  AdaptedResult out;
  out.m = opt.m > 0 ? opt.m : static_cast<int>(std::ceil(4.0 * norm - 1e-12)) + 1;
  out.threshold = opt.threshold > 0 ? opt.threshold : default_threshold(q0);
  if (4.0 * norm > out.m)
    throw PreconditionError("adapted map needs 4||q|| <= m (4||q|| = " + std::to_string(4.0 * norm) +
                            ", m = " + std::to_string(out.m) + ")");
  if (out.threshold < std::max<double>(out.m, 4.0 * norm) + 1.0 - 1e-12)
    throw PreconditionError("adapted map threshold " + std::to_string(out.threshold) +
                            " below max(m, 4||q||) + 1");
  const int window = opt.window > 0 ? opt.window : q.window();
  if (window < q.window()) throw DomainError("adapted map window smaller than the potential window");
  out.p = FourierPotential(window);
  out.p.set(0, q.mean());
  for (int n = 1; n < std::min(out.threshold, window + 1); ++n) {
    out.p.set(n, q[n]);
    out.p.set(-n, q[-n]);
  }
  for (int n = out.threshold; n <= window; ++n) {
    BlockData b;
    try {
      b = detail::block_data_mean_free(q0, n, opt.block);
    } catch (const Error& e) {
      throw ConvergenceError("adapted map failed at n = " + std::to_string(n) + ": " + e.what());
    }
    out.p.set(n, b.p_plus);
    out.p.set(-n, b.p_minus);
    out.blocks.push_back(b);
  }
  return out;
}

struct InverseResult {
  FourierPotential q;
  int iterations = 0;
  /// Largest ratio ||F_{k+1}|| / ||F_k|| of the defects F = Phi(q) - p.
  double rate = 0.0;
  double defect = 0.0;
  std::vector<double> history;
};

/// Solves Phi_m(q) = p by q <- q - (Phi_m(q) - p), on the window of p. Stops
/// once the defect is below tol and has stopped shrinking.
inline InverseResult invert_adapted_map(const FourierPotential& p, const AdaptedOptions& opt = {}, double tol = 1e-13,
                                        int max_iter = 60) {
  AdaptedOptions o = opt;
  o.window = p.window();
  const FourierPotential p0 = p.without_mean();
  if (o.m <= 0) o.m = static_cast<int>(std::ceil(4.0 * plain_norm(p0) - 1e-12)) + 1;
  if (o.threshold <= 0) o.threshold = std::max(default_threshold(p0), o.m + 1);
  InverseResult out;
  out.q = p;
  const double scale = std::max(plain_norm(p), 1e-300);
  for (int k = 1; k <= max_iter; ++k) {
    const FourierPotential F = adapted_map(out.q, o).p - p;
    const double d = plain_norm(F) + std::abs(F.mean());
    out.history.push_back(d);
    out.iterations = k;
    out.defect = d;
    if (out.history.size() >= 2) {
      const double before = out.history[out.history.size() - 2];
      if (before > 1e-12 * scale) out.rate = std::max(out.rate, d / before);
    }
    if (d == 0.0) return out;
    if (d <= tol * std::max(1.0, scale) && out.history.size() >= 2 &&
        d > 0.5 * out.history[out.history.size() - 2])
      return out;
    if (out.rate > 0.9) throw ConvergenceError("inverse adapted map iteration rate " + std::to_string(out.rate));
    out.q -= F;
  }
  if (out.defect <= tol * std::max(1.0, scale)) return out;
  throw ConvergenceError("inverse adapted map did not converge; defect " + std::to_string(out.defect));
}

struct NGapResult {
  FourierPotential q_N;
  FourierPotential p;  // Phi_m(q)
  InverseResult inverse;
};

/// q_N = Phi_m^{-1}(Phi_m(q) restricted to |n| <= N).
inline NGapResult n_gap_approximant(const FourierPotential& q, int N, const AdaptedOptions& opt = {},
                                    double tol = 1e-13) {
  const AdaptedResult a = adapted_map(q, opt);
  if (N < a.threshold) throw PreconditionError("N-gap approximant needs N >= M_thresh");
  AdaptedOptions o = opt;
  o.m = a.m;
  o.threshold = a.threshold;
  NGapResult out;
  out.p = a.p;
  out.inverse = invert_adapted_map(truncate(a.p, N), o, tol);
  out.q_N = out.inverse.q;
  return out;
}

}  // namespace hillgap::block
