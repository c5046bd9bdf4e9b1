#pragma once

// 1-periodic potentials on modes exp(2 pi i n x) and 2-periodic coefficient
// vectors on modes e_m = exp(i pi m x) of a fixed parity of m.
//
// A potential q = sum q_n exp(2 pi i n x) is, as a 2-periodic function, the
// vector with coefficient q_n at m = 2n; multiplication by q therefore shifts
// parity vectors by even amounts and preserves the parity of m.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "hillgap/core.hpp"
#include "hillgap/weights.hpp"

namespace hillgap {

class FourierPotential {
 public:
  FourierPotential() : FourierPotential(0) {}

  /// Zero potential holding modes |n| <= window.
  explicit FourierPotential(int window) : window_(window), coeffs_(2 * static_cast<std::size_t>(window) + 1) {
    if (window < 0) throw DomainError("potential window must be >= 0");
  }

  int window() const { return window_; }
  Complex mean() const { return mean_; }

  /// q_n for n != 0, zero outside the window. The mean lives in mean().
  Complex operator[](int n) const {
    if (n == 0 || std::abs(n) > window_) return {};
    return coeffs_[static_cast<std::size_t>(n + window_)];
  }

  /// Sets q_n; n = 0 sets the mean. Grows the window when needed.
  void set(int n, Complex value) {
    if (n == 0) {
      mean_ = value;
      return;
    }
    if (std::abs(n) > window_) *this = with_window(std::abs(n));
    coeffs_[static_cast<std::size_t>(n + window_)] = value;
  }

  FourierPotential with_window(int window) const {
    FourierPotential out(window);
    out.mean_ = mean_;
    for (int n = 1; n <= std::min(window, window_); ++n) {
      out.coeffs_[static_cast<std::size_t>(window + n)] = (*this)[n];
      out.coeffs_[static_cast<std::size_t>(window - n)] = (*this)[-n];
    }
    return out;
  }

  FourierPotential without_mean() const {
    FourierPotential out = *this;
    out.mean_ = 0.0;
    return out;
  }

  FourierPotential conj() const {
    FourierPotential out(window_);
    out.mean_ = std::conj(mean_);
    for (int n = -window_; n <= window_; ++n)
      if (n != 0) out.coeffs_[static_cast<std::size_t>(n + window_)] = std::conj((*this)[n]);
    return out;
  }

  double max_abs() const {
    double m = std::abs(mean_);
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// q_{-n} = conj(q_n) and real mean, up to a relative tolerance.
  bool is_real(double tol = 1e-14) const {
    const double scale = std::max(1e-300, max_abs());
    if (std::abs(mean_.imag()) > tol * scale) return false;
    for (int n = 1; n <= window_; ++n)
      if (std::abs((*this)[-n] - std::conj((*this)[n])) > tol * scale) return false;
    return true;
  }

  /// q_{-n} = q_n, i.e. q(x) = q(-x).
  bool is_even(double tol = 1e-14) const {
    const double scale = std::max(1e-300, max_abs());
    for (int n = 1; n <= window_; ++n)
      if (std::abs((*this)[-n] - (*this)[n]) > tol * scale) return false;
    return true;
  }

  bool is_zero() const { return max_abs() == 0.0; }

  /// Direct Fourier summation of q(x), mean included.
  Complex evaluate(double x) const {
    Complex sum = mean_;
    for (int n = 1; n <= window_; ++n) {
      const Complex e = std::polar(1.0, 2.0 * pi * n * x);
      sum += (*this)[n] * e + (*this)[-n] * std::conj(e);
    }
    return sum;
  }

  FourierPotential& operator+=(const FourierPotential& o) {
    if (o.window_ > window_) *this = with_window(o.window_);
    mean_ += o.mean_;
    for (int n = -o.window_; n <= o.window_; ++n)
      if (n != 0) coeffs_[static_cast<std::size_t>(n + window_)] += o[n];
    return *this;
  }
  FourierPotential& operator-=(const FourierPotential& o) {
    if (o.window_ > window_) *this = with_window(o.window_);
    mean_ -= o.mean_;
    for (int n = -o.window_; n <= o.window_; ++n)
      if (n != 0) coeffs_[static_cast<std::size_t>(n + window_)] -= o[n];
    return *this;
  }
  FourierPotential& operator*=(Complex s) {
    mean_ *= s;
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend FourierPotential operator+(FourierPotential a, const FourierPotential& b) { return a += b; }
  friend FourierPotential operator-(FourierPotential a, const FourierPotential& b) { return a -= b; }
  friend FourierPotential operator*(Complex s, FourierPotential a) { return a *= s; }

 private:
  int window_ = 0;
  Complex mean_{};
  std::vector<Complex> coeffs_;  // index n + window_, slot n = 0 unused
};

/// mu cos(2 pi x): q_{+1} = q_{-1} = mu/2.
inline FourierPotential make_mathieu(double mu) {
  FourierPotential q(1);
  q.set(1, mu / 2.0);
  q.set(-1, mu / 2.0);
  return q;
}

/// One-sided series sum_{n >= 1} q_n exp(2 pi i n x); coeffs[0] is q_1.
inline FourierPotential make_gasymov(const std::vector<Complex>& coeffs) {
  FourierPotential q(static_cast<int>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) q.set(static_cast<int>(i) + 1, coeffs[i]);
  return q;
}

struct RandomPotentialSpec {
  Weight decay;
  std::uint64_t seed = 0;
  int window = 16;
  bool real = true;
  double scale = 1.0;
};

/// q_n = scale * zeta_n / w(n) with zeta_n uniform on the unit disc and mean 0.
/// Draw order: zeta_1, zeta_{-1}, zeta_2, ... (negative draws skipped when real,
/// where q_{-n} = conj(q_n)). Uses raw 53-bit mantissas of mt19937_64 so the
/// stream is identical across standard libraries.
inline FourierPotential make_random(const RandomPotentialSpec& spec) {
  if (spec.window < 1) throw DomainError("random potential needs window >= 1");
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto disc = [&] {
    const double rho = std::sqrt(uniform());
    const double theta = 2.0 * pi * uniform();
    return std::polar(rho, theta);
  };
  FourierPotential q(spec.window);
  for (int n = 1; n <= spec.window; ++n) {
    const double w = eval(spec.decay, n);
    const Complex zp = disc();
    q.set(n, spec.scale * zp / w);
    if (spec.real) {
      q.set(-n, std::conj(q[n]));
    } else {
      q.set(-n, spec.scale * disc() / w);
    }
  }
  return q;
}

namespace detail {
inline double weighted_term(double log_w, Complex c) {
  if (c == 0.0) return 0.0;
  return std::exp(2.0 * (log_w + std::log(std::abs(c))));
}
}  // namespace detail

/// (sum w(n)^2 |q_n|^2)^{1/2}, mean term at n = 0 included.
inline double wnorm(const FourierPotential& q, const Weight& w) {
  double s = detail::weighted_term(w.log_value(HalfIndex::integer(0)), q.mean());
  for (int n = 1; n <= q.window(); ++n) {
    const double lw = w.log_value(HalfIndex::integer(n));
    s += detail::weighted_term(lw, q[n]) + detail::weighted_term(lw, q[-n]);
  }
  return std::sqrt(s);
}

/// T_N q: keeps only |n| >= N.
inline FourierPotential tail(const FourierPotential& q, int N) {
  if (N < 1) throw DomainError("tail needs N >= 1");
  FourierPotential out(q.window());
  for (int n = N; n <= q.window(); ++n) {
    out.set(n, q[n]);
    out.set(-n, q[-n]);
  }
  return out;
}

/// Modes |n| <= N only (mean kept).
inline FourierPotential truncate(const FourierPotential& q, int N) {
  FourierPotential out = q.with_window(std::max(0, std::min(N, q.window()))).with_window(q.window());
  return out;
}

enum class Parity { even, odd };

inline Parity parity_of(long m) { return (m & 1) ? Parity::odd : Parity::even; }

/// 2-periodic function sum f_m e_m over m of one parity with |m| <= cut.
class ParityVector {
 public:
  /// cut is raised by one if it does not share the parity.
  ParityVector(Parity parity, int cut)
      : parity_(parity), cut_(parity_of(cut) == parity ? cut : cut + 1), c_(static_cast<std::size_t>(cut_ + 1)) {
    if (cut < 0) throw DomainError("parity vector cut must be >= 0");
  }

  static ParityVector unit(int m, int cut) {
    ParityVector v(parity_of(m), std::max(cut, std::abs(m)));
    v.set(m, 1.0);
    return v;
  }

  Parity parity() const { return parity_; }
  int cut() const { return cut_; }
  /// Number of stored modes (cut + 1).
  std::size_t size() const { return c_.size(); }
  /// Mode index of slot j.
  int mode(std::size_t j) const { return -cut_ + 2 * static_cast<int>(j); }
  std::size_t slot(int m) const { return static_cast<std::size_t>((m + cut_) / 2); }

  Complex operator[](int m) const {
    check_parity(m);
    if (std::abs(m) > cut_) return {};
    return c_[slot(m)];
  }

  void set(int m, Complex v) {
    check_parity(m);
    if (std::abs(m) > cut_) throw DomainError("mode " + std::to_string(m) + " beyond parity vector cut");
    c_[slot(m)] = v;
  }

  std::vector<Complex>& data() { return c_; }
  const std::vector<Complex>& data() const { return c_; }

  double norm() const {
    double s = 0.0;
    for (const auto& x : c_) s += std::norm(x);
    return std::sqrt(s);
  }

  /// f * e_i: coefficient f_m moves to m + i.
  ParityVector shifted(int i) const {
    ParityVector out(parity_of(static_cast<long>(mode(0)) + i), cut_ + std::abs(i));
    for (std::size_t j = 0; j < c_.size(); ++j) out.set(mode(j) + i, c_[j]);
    return out;
  }

  /// g_m = conj(f_{-m}); fixed points are the real-valued functions.
  ParityVector conj_reflected() const {
    ParityVector out(parity_, cut_);
    for (std::size_t j = 0; j < c_.size(); ++j) out.c_[c_.size() - 1 - j] = std::conj(c_[j]);
    return out;
  }

  ParityVector with_cut(int cut) const {
    ParityVector out(parity_, cut);
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (std::abs(mode(j)) <= out.cut_) out.set(mode(j), c_[j]);
    return out;
  }

  ParityVector& operator+=(const ParityVector& o) { return axpy(1.0, o); }
  ParityVector& operator-=(const ParityVector& o) { return axpy(-1.0, o); }
  ParityVector& operator*=(Complex s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend ParityVector operator+(ParityVector a, const ParityVector& b) { return a += b; }
  friend ParityVector operator-(ParityVector a, const ParityVector& b) { return a -= b; }

  /// this += s * o; o must share parity and fit inside the cut.
  ParityVector& axpy(Complex s, const ParityVector& o) {
    if (o.parity_ != parity_) throw DomainError("parity mismatch");
    if (o.cut_ > cut_) *this = with_cut(o.cut_);
    const std::size_t off = static_cast<std::size_t>((cut_ - o.cut_) / 2);
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[off + j] += s * o.c_[j];
    return *this;
  }

 private:
  void check_parity(int m) const {
    if (parity_of(m) != parity_) throw DomainError("mode " + std::to_string(m) + " has the wrong parity");
  }

  Parity parity_;
  int cut_;
  std::vector<Complex> c_;
};

/// (sum_m w((m+i)/2)^2 |f_m|^2)^{1/2}, the w-norm of f e_i.
inline double shifted_wnorm(const ParityVector& f, const Weight& w, int i) {
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    s += detail::weighted_term(w.log_value(HalfIndex::halves(f.mode(j) + i)), f.data()[j]);
  return std::sqrt(s);
}

inline double wnorm(const ParityVector& f, const Weight& w) { return shifted_wnorm(f, w, 0); }

/// (Vf)_m = sum_k q_k f_{m-2k}, mean term included, truncated back to f's cut.
/// The l2 norm of the discarded coefficients is written to truncation_loss.
inline ParityVector multiply_by_potential(const FourierPotential& q, const ParityVector& f,
                                          double* truncation_loss = nullptr) {
  const int K = q.window();
  const auto& fd = f.data();
  std::size_t lo = fd.size(), hi = 0;
  for (std::size_t j = 0; j < fd.size(); ++j)
    if (fd[j] != 0.0) {
      lo = std::min(lo, j);
      hi = j;
    }
  ParityVector out(f.parity(), f.cut());
  if (lo > hi) {
    if (truncation_loss) *truncation_loss = 0.0;
    return out;
  }

  // extended buffer covers slots shifted by up to K on either side
  std::vector<Complex> ext(fd.size() + 2 * static_cast<std::size_t>(K));
  for (int k = -K; k <= K; ++k) {
    const Complex qk = k == 0 ? q.mean() : q[k];
    if (qk == 0.0) continue;
    const std::size_t base = static_cast<std::size_t>(K + k);
    for (std::size_t j = lo; j <= hi; ++j) ext[base + j] += qk * fd[j];
  }
  auto& od = out.data();
  double lost = 0.0;
  for (std::size_t j = 0; j < ext.size(); ++j) {
    if (j >= static_cast<std::size_t>(K) && j < static_cast<std::size_t>(K) + od.size()) {
      od[j - static_cast<std::size_t>(K)] = ext[j];
    } else {
      lost += std::norm(ext[j]);
    }
  }
  if (truncation_loss) *truncation_loss = std::sqrt(lost);
  return out;
}

}  // namespace hillgap
