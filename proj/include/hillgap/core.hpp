#pragma once

// Shared vocabulary for the hillgap library: scalar aliases, the error
// hierarchy, half-integer indices and the lexicographic order on eigenvalues.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace hillgap {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Unperturbed periodic eigenvalue n²π².
inline double sigma_n(int n) { return static_cast<double>(n) * n * pi * pi; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the set where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A stated precondition (contraction, admissibility) does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Index on the half-integer lattice ℤ/2, stored as twice its value.
class HalfIndex {
 public:
  constexpr HalfIndex() = default;

  static constexpr HalfIndex integer(std::int64_t n) { return HalfIndex(2 * n); }
  /// The half-integer m/2.
  static constexpr HalfIndex halves(std::int64_t m) { return HalfIndex(m); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }
  constexpr double magnitude() const { return static_cast<double>(twice_ < 0 ? -twice_ : twice_) / 2.0; }
  constexpr HalfIndex operator-() const { return HalfIndex(-twice_); }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  friend constexpr bool operator==(HalfIndex, HalfIndex) = default;

 private:
  constexpr explicit HalfIndex(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

/// Order by real part, then imaginary part.
inline bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Returns (lo, hi) with lo ⪯ hi in the lexicographic order.
inline std::pair<Complex, Complex> lex_sorted(Complex a, Complex b) {
  return lex_less(b, a) ? std::pair{b, a} : std::pair{a, b};
}

inline std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", z.real(), z.imag());
  return buf;
}

}  // namespace hillgap
