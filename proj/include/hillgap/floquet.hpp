#pragma once

/*
 * Floquet oracle for -y'' + q y = lambda y on [0, 1].
 *
 * The fundamental matrix of Y' = A(x) Y, A = [[0, 1], [q - lambda, 0]], is
 * transported with the two-point Gauss Magnus integrator of order four:
 *
 *   Omega = [[c, h], [h (qbar - lambda), -c]],  c = (sqrt3/12) h^2 (q1 - q2),
 *
 * where q1, q2 are the samples at the Gauss points and qbar their mean. Omega
 * is traceless with Omega^2 = z I, z = c^2 + h^2 (qbar - lambda), so
 *
 *   exp(Omega) = C(z) I + S(z) Omega,  C = sum z^j/(2j)!,  S = sum z^j/(2j+1)!
 *
 * and every step map has determinant exactly one. All arithmetic runs on
 * second-order jets in lambda, so the discriminant and its first two lambda
 * derivatives come out of one sweep; the scalar type is a template parameter
 * (double, long double or binary128) so gaps far below the spacing of doubles
 * near n^2 pi^2 can still be resolved.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/float128.hpp>

#include "hillgap/core.hpp"
#include "hillgap/seqspace.hpp"

namespace hillgap::floquet {

enum class Precision { standard, extended, quad };

inline const char* to_string(Precision p) {
  switch (p) {
    case Precision::standard: return "double";
    case Precision::extended: return "extended";
    case Precision::quad: return "quad";
  }
  return "?";
}

/// Unit roundoff of the working precision.
inline double unit_roundoff(Precision p) {
  switch (p) {
    case Precision::standard: return std::numeric_limits<double>::epsilon();
    case Precision::extended: return static_cast<double>(std::numeric_limits<long double>::epsilon());
    case Precision::quad: return 1.925929944387235853e-34;
  }
  return 0.0;
}

struct OracleOptions {
  Precision precision = Precision::extended;
  /// Integration steps per unit of max(1, ceil(sqrt|lambda|/pi), window).
  int steps_per_oscillation = 64;
  /// Fixed step count; overrides the rule above when positive.
  int steps = 0;
  int max_newton = 40;
  /// Roots closer than floor_factor * eps * |lambda| count as one double root.
  double floor_factor = 16.0;
};

struct MonodromyMatrix {
  Complex y1, y2, dy1, dy2;  // y1(1), y2(1), y1'(1), y2'(1)
  Complex det;               // evaluated in working precision

  Complex trace() const { return y1 + dy2; }
};

namespace detail {

using boost::multiprecision::float128;

template <class Real>
using Cx = std::complex<Real>;

template <class Real>
struct Jet {
  Cx<Real> v{}, d1{}, d2{};
};

template <class Real>
inline Jet<Real> operator+(const Jet<Real>& a, const Jet<Real>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
template <class Real>
inline Jet<Real> operator-(const Jet<Real>& a, const Jet<Real>& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
template <class Real>
inline Jet<Real> operator*(const Jet<Real>& a, const Jet<Real>& b) {
  const Real two(2);
  return {a.v * b.v, a.v * b.d1 + a.d1 * b.v, a.v * b.d2 + two * (a.d1 * b.d1) + a.d2 * b.v};
}
template <class Real>
inline Jet<Real> operator*(const Cx<Real>& s, const Jet<Real>& a) {
  return {s * a.v, s * a.d1, s * a.d2};
}

template <class Real>
struct JetMatrix {
  Jet<Real> m11, m12, m21, m22;
};

template <class Real>
inline JetMatrix<Real> operator*(const JetMatrix<Real>& a, const JetMatrix<Real>& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22, a.m21 * b.m11 + a.m22 * b.m21,
          a.m21 * b.m12 + a.m22 * b.m22};
}

template <class Real>
Real real_pi() {
  using std::atan;
  return Real(4) * atan(Real(1));
}

template <class Real>
Real epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Cx<Real> to_cx(Complex z) {
  return {Real(z.real()), Real(z.imag())};
}

template <class Real>
Complex to_double(const Cx<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class Real>
Real cabs(const Cx<Real>& z) {
  using std::abs;
  using std::sqrt;
  return sqrt(z.real() * z.real() + z.imag() * z.imag());
}

/// Samples q at the Gauss points of a uniform grid and sweeps the Magnus
/// step maps for any lambda.
template <class Real>
class Integrator {
 public:
  Integrator(const FourierPotential& q, int steps) : steps_(steps) {
    if (steps < 1) throw DomainError("integrator needs at least one step");
    using std::cos;
    using std::sin;
    using std::sqrt;
    const Real one(1), two(2), three(3);
    h_ = one / Real(steps);
    const Real s3 = sqrt(three);
    const Real ga = (one / two - s3 / Real(6)), gb = (one / two + s3 / Real(6));
    const Real twopi = two * real_pi<Real>();
    const int K = q.window();
    std::vector<Cx<Real>> pos(K + 1), neg(K + 1);
    for (int k = 1; k <= K; ++k) {
      pos[k] = to_cx<Real>(q[k]);
      neg[k] = to_cx<Real>(q[-k]);
    }
    const Cx<Real> mean = to_cx<Real>(q.mean());
    auto sample = [&](const Real& x) {
      const Cx<Real> base(cos(twopi * x), sin(twopi * x));
      Cx<Real> e(one), sum = mean;
      for (int k = 1; k <= K; ++k) {
        e *= base;
        sum += pos[k] * e + neg[k] * std::conj(e);
      }
      return sum;
    };
    qbar_.resize(steps);
    cdiag_.resize(steps);
    const Real cfac = s3 / Real(12) * h_ * h_;
    for (int j = 0; j < steps; ++j) {
      const Real x0 = Real(j) * h_;
      const Cx<Real> q1 = sample(x0 + ga * h_), q2 = sample(x0 + gb * h_);
      qbar_[j] = (q1 + q2) / two;
      cdiag_[j] = cfac * (q1 - q2);
      qmax_ = std::max(qmax_, cabs(qbar_[j]));
      cmax_ = std::max(cmax_, cabs(cdiag_[j]));
    }
  }

  int steps() const { return steps_; }

  JetMatrix<Real> monodromy(const Cx<Real>& lambda) const {
    const Real zero(0), one(1);
    const Real zbound = cmax_ * cmax_ + h_ * h_ * (qmax_ + cabs(lambda));
    const int J = series_terms(zbound);
    const auto& cc = cosh_coeffs();
    const auto& sc = sinh_coeffs();

    const Cx<Real> dz(-h_ * h_, zero);
    const Cx<Real> dz2 = dz * dz;
    const Cx<Real> hc(h_, zero), mh(-h_, zero);
    JetMatrix<Real> M{{Cx<Real>(one)}, {}, {}, {Cx<Real>(one)}};
    for (int j = 0; j < steps_; ++j) {
      const Cx<Real> w = qbar_[j] - lambda;
      const Cx<Real> c = cdiag_[j];
      const Cx<Real> z = c * c + h_ * h_ * w;
      Cx<Real> C, dC, ddC, S, dS, ddS;
      horner(cc, J, z, C, dC, ddC);
      horner(sc, J, z, S, dS, ddS);
      const Jet<Real> Cj{C, dC * dz, ddC * dz2};
      const Jet<Real> Sj{S, dS * dz, ddS * dz2};
      const Jet<Real> w21{hc * w, mh, {}};
      const JetMatrix<Real> E{Cj + c * Sj, hc * Sj, Sj * w21, Cj - c * Sj};
      M = E * M;
    }
    return M;
  }

 private:
  static void horner(const std::vector<Real>& a, int J, const Cx<Real>& z, Cx<Real>& p, Cx<Real>& dp,
                     Cx<Real>& ddp) {
    p = Cx<Real>(a[J]);
    dp = Cx<Real>();
    ddp = Cx<Real>();
    for (int j = J - 1; j >= 0; --j) {
      ddp = ddp * z + dp;
      dp = dp * z + p;
      p = p * z + a[j];
    }
    ddp *= Real(2);
  }

  static int series_terms(const Real& zbound) {
    // smallest J with zbound^J / (2J)! below eps/16; at least 3 for the second derivative
    const Real target = epsilon<Real>() / Real(16);
    Real term(1);
    int J = 0;
    while (J < 60) {
      ++J;
      term *= zbound / (Real(2 * J) * Real(2 * J - 1));
      if (J >= 3 && term < target) break;
    }
    return J + 1;
  }

  static const std::vector<Real>& cosh_coeffs() {
    static const std::vector<Real> c = [] {
      std::vector<Real> v(64);
      Real f(1);
      for (int j = 0; j < 64; ++j) {
        if (j > 0) f /= Real(2 * j) * Real(2 * j - 1);
        v[j] = f;
      }
      return v;
    }();
    return c;
  }

  static const std::vector<Real>& sinh_coeffs() {
    static const std::vector<Real> c = [] {
      std::vector<Real> v(64);
      Real f(1);
      for (int j = 0; j < 64; ++j) {
        if (j > 0) f /= Real(2 * j) * Real(2 * j + 1);
        v[j] = f;
      }
      return v;
    }();
    return c;
  }

  int steps_;
  Real h_;
  Real qmax_{0}, cmax_{0};
  std::vector<Cx<Real>> qbar_, cdiag_;
};

/// Which scalar functional of the monodromy to drive to zero.
enum class Target { periodic, sturm_liouville, split, split_slope };

template <class Real>
struct Functional {
  Target target = Target::periodic;
  Real shift{0};     // F = trace - shift for periodic targets
  Real sin_a{0}, cos_a{1};

  Jet<Real> operator()(const JetMatrix<Real>& M) const {
    if (target == Target::sturm_liouville) {
      // [cos a, sin a] M [-sin a, cos a]^T
      const Cx<Real> s(sin_a), c(cos_a);
      return c * (c * M.m12 - s * M.m11) + s * (c * M.m22 - s * M.m21);
    }
    if (target == Target::split || target == Target::split_slope) {
      // trace^2 - 4 = (y1 - y2')^2 + 4 y2 y1'; each factor is small across a
      // narrow gap of a real potential, so the two roots stay simple
      const Jet<Real> u = M.m11 - M.m22;
      const Jet<Real> d = u * u + Cx<Real>(Real(4)) * (M.m12 * M.m21);
      if (target == Target::split_slope) return {d.d1, d.d2, {}};
      return d;
    }
    Jet<Real> tr = M.m11 + M.m22;
    tr.v -= Cx<Real>(shift);
    return tr;
  }
};

struct RootTrace {
  int iterations = 0;
  bool converged = false;
  std::string note;
};

/// Newton on an analytic functional of the monodromy; stops once the update
/// reaches the rounding floor of the working precision.
template <class Real>
Cx<Real> newton(const Integrator<Real>& integ, const Functional<Real>& f, Cx<Real> lambda, int max_iter,
                RootTrace& trace, const Cx<Real>* deflate = nullptr) {
  const Real floor = Real(8) * epsilon<Real>();
  Real prev(1e30);
  int stalled = 0;
  for (int it = 1; it <= max_iter; ++it) {
    trace.iterations = it;
    Jet<Real> F = f(integ.monodromy(lambda));
    Cx<Real> val = F.v, der = F.d1;
    if (deflate) {
      // F(l) / (l - r): derivative (F' (l - r) - F) / (l - r)^2
      const Cx<Real> d = lambda - *deflate;
      der = (F.d1 * d - F.v) / (d * d);
      val = F.v / d;
    }
    if (val == Cx<Real>()) {
      trace.converged = true;
      return lambda;
    }
    if (der == Cx<Real>()) {
      trace.note = "zero derivative";
      return lambda;
    }
    const Cx<Real> step = val / der;
    lambda -= step;
    const Real size = cabs(step);
    const Real scale = std::max(Real(1), cabs(lambda));
    if (size <= floor * scale) {
      trace.converged = true;
      return lambda;
    }
    // the update no longer shrinks: rounding level reached
    if (size >= prev && size <= Real(1e6) * floor * scale) {
      if (++stalled >= 2) {
        trace.converged = true;
        return lambda;
      }
    }
    prev = size;
  }
  trace.note = "iteration cap reached";
  return lambda;
}

template <class Real>
struct PairResult {
  Cx<Real> minus, plus;
  bool collapsed = false;
  int iterations = 0;
  Real critical_value{0};  // |trace^2 - 4| at the seed centre (general path)
  Real floor{0};
  bool even_path = false;
  /// max |trace - 2(-1)^n| at the two roots.
  Real residual{0};
};

inline int steps_for(Complex lambda, int window, const OracleOptions& opt) {
  if (opt.steps > 0) return opt.steps;
  const int osc = static_cast<int>(std::ceil(std::sqrt(std::abs(lambda)) / pi));
  return opt.steps_per_oscillation * std::max({1, osc, window});
}

template <class Real>
bool in_disc(const Cx<Real>& z, Complex center, double radius) {
  return std::abs(to_double(z) - center) <= radius;
}

template <class Real>
PairResult<Real> periodic_pair(const FourierPotential& q, int n, const OracleOptions& opt,
                               const std::optional<std::pair<Complex, Complex>>& seeds) {
  const Complex center = sigma_n(n) + q.mean();
  const double radius = 12.0 * n;
  const Integrator<Real> integ(q, steps_for(center + radius, q.window(), opt));
  PairResult<Real> out;
  RootTrace tr;

  auto check = [&](const Cx<Real>& z, const char* what) {
    if (!in_disc(z, center, radius))
      throw ConvergenceError(std::string("periodic eigenvalue (") + what + ") escaped the search disc for n = " +
                             std::to_string(n) + ": " + format_complex(to_double(z)));
    if (!tr.converged)
      throw ConvergenceError(std::string("Newton stagnated for n = ") + std::to_string(n) + " (" + what +
                             "): " + tr.note);
  };

  if (q.is_even()) {
    // q(x) = q(1 - x) gives y1(1) = y2'(1), hence trace^2 - 4 = 4 y2(1) y1'(1):
    // the pair is one Dirichlet and one Neumann root, both simple.
    out.even_path = true;
    Functional<Real> dir{Target::sturm_liouville, Real(0), Real(0), Real(1)};
    Functional<Real> neu{Target::sturm_liouville, Real(0), Real(1), Real(0)};
    const Cx<Real> c0 = to_cx<Real>(center);
    const Cx<Real> a = newton(integ, dir, c0, opt.max_newton, tr);
    out.iterations += tr.iterations;
    check(a, "dirichlet");
    tr = {};
    const Cx<Real> b = newton(integ, neu, c0, opt.max_newton, tr);
    out.iterations += tr.iterations;
    check(b, "neumann");
    out.floor = Real(opt.floor_factor) * epsilon<Real>() * std::max(Real(1), cabs(a));
    if (cabs(a - b) <= out.floor) {
      out.collapsed = true;
      out.minus = out.plus = (a + b) / Real(2);
    } else {
      out.minus = a;
      out.plus = b;
    }
  } else {
    using std::sqrt;
    Functional<Real> D{Target::split};
    Functional<Real> dD{Target::split_slope};
    Cx<Real> start = to_cx<Real>(center);
    if (seeds) start = (to_cx<Real>(seeds->first) + to_cx<Real>(seeds->second)) / Real(2);
    // the critical point of the split function is a simple root of its slope
    // even when the pair itself is double
    const Cx<Real> crit = newton(integ, dD, start, opt.max_newton, tr);
    out.iterations += tr.iterations;
    check(crit, "critical point");
    const JetMatrix<Real> M = integ.monodromy(crit);
    const Jet<Real> at = D(M);
    // first-order rounding of (y1 - y2')^2 + 4 y2 y1' given absolute errors
    // of order eps in the monodromy entries
    const Real scale =
        Real(2) * cabs(M.m11.v - M.m22.v) + Real(4) * (cabs(M.m12.v) + cabs(M.m21.v)) + epsilon<Real>();
    out.critical_value = cabs(at.v);
    out.floor = Real(opt.floor_factor) * epsilon<Real>() * scale;
    if (out.critical_value <= out.floor) {
      out.collapsed = true;
      out.minus = out.plus = crit;
    } else {
      if (at.d2 == Cx<Real>())
        throw ConvergenceError("flat split function at the critical point for n = " + std::to_string(n));
      const Cx<Real> d = sqrt(Cx<Real>(Real(-2)) * at.v / at.d2);
      tr = {};
      const Cx<Real> a = newton(integ, D, crit - d, opt.max_newton, tr);
      out.iterations += tr.iterations;
      check(a, "first root");
      tr = {};
      Cx<Real> b = newton(integ, D, crit + d, opt.max_newton, tr);
      out.iterations += tr.iterations;
      check(b, "second root");
      const Real sep = Real(opt.floor_factor) * epsilon<Real>() * std::max(Real(1), cabs(a));
      if (cabs(a - b) <= sep) {
        tr = {};
        b = newton(integ, D, Real(2) * crit - a, opt.max_newton, tr, &a);
        out.iterations += tr.iterations;
        check(b, "deflated root");
      }
      if (cabs(a - b) <= sep) {
        out.collapsed = true;
        out.minus = out.plus = (a + b) / Real(2);
      } else {
        out.minus = a;
        out.plus = b;
      }
    }
  }
  if (out.plus.real() < out.minus.real() ||
      (out.plus.real() == out.minus.real() && out.plus.imag() < out.minus.imag()))
    std::swap(out.minus, out.plus);
  const Real target = n % 2 == 0 ? Real(2) : Real(-2);
  for (const auto& z : {out.minus, out.plus}) {
    const JetMatrix<Real> M = integ.monodromy(z);
    const Real r = cabs(M.m11.v + M.m22.v - Cx<Real>(target));
    if (r > out.residual) out.residual = r;
  }
  return out;
}

template <class Real>
Cx<Real> sturm_liouville_root(const FourierPotential& q, int n, double alpha, const OracleOptions& opt) {
  using std::cos;
  using std::sin;
  const Complex center = sigma_n(n) + q.mean();
  const double radius = 12.0 * n;
  const Integrator<Real> integ(q, steps_for(center + radius, q.window(), opt));
  Functional<Real> f{Target::sturm_liouville, Real(0), sin(Real(alpha)), cos(Real(alpha))};
  RootTrace tr;
  const Cx<Real> r = newton(integ, f, to_cx<Real>(center), opt.max_newton, tr);
  if (!in_disc(r, center, radius) || !tr.converged)
    throw ConvergenceError("Sturm-Liouville eigenvalue search failed for n = " + std::to_string(n));
  return r;
}

template <class Real>
MonodromyMatrix monodromy_at(const FourierPotential& q, Complex lambda, int steps) {
  const Integrator<Real> integ(q, steps);
  const JetMatrix<Real> M = integ.monodromy(to_cx<Real>(lambda));
  const Cx<Real> det = M.m11.v * M.m22.v - M.m12.v * M.m21.v;
  return {to_double(M.m11.v), to_double(M.m12.v), to_double(M.m21.v), to_double(M.m22.v), to_double(det)};
}

/// Dispatches a generic lambda on the scalar type selected at run time.
template <class Fn>
decltype(auto) with_precision(Precision p, Fn&& fn) {
  switch (p) {
    case Precision::standard: return fn(double{});
    case Precision::extended: return fn((long double){});
    case Precision::quad: return fn(float128{});
  }
  return fn((long double){});
}

}  // namespace detail

/// Minimum step count for an accurate sweep at lambda.
inline int min_steps(Complex lambda) {
  return 64 * std::max(1, static_cast<int>(std::ceil(std::sqrt(std::abs(lambda)) / pi)));
}

/// Fundamental matrix at x = 1.
inline MonodromyMatrix monodromy(const FourierPotential& q, Complex lambda, int steps,
                                 Precision precision = Precision::extended) {
  if (steps < 1) throw DomainError("monodromy needs steps >= 1");
  return detail::with_precision(precision, [&](auto tag) {
    return detail::monodromy_at<decltype(tag)>(q, lambda, steps);
  });
}

struct DiscriminantValue {
  Complex value, derivative, second_derivative;
};

/// Hill discriminant trace M(lambda) with its first two lambda derivatives.
inline DiscriminantValue discriminant_jet(const FourierPotential& q, Complex lambda, const OracleOptions& opt = {}) {
  const int steps = detail::steps_for(lambda, q.window(), opt);
  return detail::with_precision(opt.precision, [&](auto tag) {
    using Real = decltype(tag);
    const detail::Integrator<Real> integ(q, steps);
    const auto M = integ.monodromy(detail::to_cx<Real>(lambda));
    const auto tr = M.m11 + M.m22;
    return DiscriminantValue{detail::to_double(tr.v), detail::to_double(tr.d1), detail::to_double(tr.d2)};
  });
}

inline Complex discriminant(const FourierPotential& q, Complex lambda, const OracleOptions& opt = {}) {
  return discriminant_jet(q, lambda, opt).value;
}

struct PeriodicEigenvalues {
  Complex minus, plus;
  /// plus - minus, formed in working precision before rounding.
  Complex gap;
  bool collapsed = false;
  int iterations = 0;
  int steps = 0;
  /// Separation below which the pair is reported as collapsed.
  double floor = 0.0;
  double critical_value = 0.0;
  bool even_path = false;
  /// max |trace - 2(-1)^n| at the two roots.
  double residual = 0.0;
};

/// The two (anti)periodic eigenvalues near n^2 pi^2 + <q>, lexicographically ordered.
inline PeriodicEigenvalues periodic_eigs(const FourierPotential& q, int n, const OracleOptions& opt = {},
                                         std::optional<std::pair<Complex, Complex>> seeds = std::nullopt) {
  if (n < 1) throw DomainError("periodic_eigs needs n >= 1");
  return detail::with_precision(opt.precision, [&](auto tag) {
    using Real = decltype(tag);
    const auto r = detail::periodic_pair<Real>(q, n, opt, seeds);
    PeriodicEigenvalues out;
    out.minus = detail::to_double(r.minus);
    out.plus = detail::to_double(r.plus);
    out.gap = detail::to_double<Real>(r.plus - r.minus);
    out.collapsed = r.collapsed;
    out.iterations = r.iterations;
    out.steps = detail::steps_for(sigma_n(n) + q.mean() + 12.0 * n, q.window(), opt);
    out.floor = static_cast<double>(r.floor);
    out.critical_value = static_cast<double>(r.critical_value);
    out.even_path = r.even_path;
    out.residual = static_cast<double>(r.residual);
    return out;
  });
}

/// Eigenvalue near n^2 pi^2 + <q> for y cos a + y' sin a = 0 at both ends.
inline Complex sturm_liouville_eig(const FourierPotential& q, int n, double alpha, const OracleOptions& opt = {}) {
  if (n < 1) throw DomainError("sturm_liouville_eig needs n >= 1");
  return detail::with_precision(opt.precision, [&](auto tag) {
    return detail::to_double(detail::sturm_liouville_root<decltype(tag)>(q, n, alpha, opt));
  });
}

struct GapRecord {
  int n = 0;
  Complex lambda_minus, lambda_plus;
  Complex gamma;      // lambda_plus - lambda_minus
  Complex tau;        // (lambda_plus + lambda_minus) / 2
  Complex sigma;      // Sturm-Liouville eigenvalue for the chosen angle
  Complex delta;      // sigma - tau
  double Gamma = 0.0; // |gamma| + |delta|
  bool collapsed = false;
};

/// Spectral data of the n-th gap; differences are formed in working precision.
inline GapRecord gap_record(const FourierPotential& q, int n, double alpha = 0.0, const OracleOptions& opt = {}) {
  if (n < 1) throw DomainError("gap_record needs n >= 1");
  return detail::with_precision(opt.precision, [&](auto tag) {
    using Real = decltype(tag);
    const auto pr = detail::periodic_pair<Real>(q, n, opt, std::nullopt);
    const auto sl = detail::sturm_liouville_root<Real>(q, n, alpha, opt);
    const auto tau = (pr.plus + pr.minus) / Real(2);
    GapRecord g;
    g.n = n;
    g.lambda_minus = detail::to_double(pr.minus);
    g.lambda_plus = detail::to_double(pr.plus);
    g.gamma = detail::to_double<Real>(pr.plus - pr.minus);
    g.tau = detail::to_double(tau);
    g.sigma = detail::to_double(sl);
    g.delta = detail::to_double<Real>(sl - tau);
    g.Gamma = std::abs(g.gamma) + std::abs(g.delta);
    g.collapsed = pr.collapsed;
    return g;
  });
}

}  // namespace hillgap::floquet
