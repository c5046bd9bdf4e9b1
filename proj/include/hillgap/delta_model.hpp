#pragma once

// Linear model delta_n ~ kappa p_n + conj(kappa) p_{-n} for the alternate gap
// lengths of a Sturm-Liouville family, fitted over a range of gap indices.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "hillgap/blockdecomp.hpp"
#include "hillgap/floquet.hpp"

namespace hillgap::floquet {

struct DeltaSample {
  int n = 0;
  Complex delta;
  Complex p_plus, p_minus;
  Complex model;
  /// |delta - model| / (|p_plus| + |p_minus|); NaN when both p vanish.
  double ratio = 0.0;
  /// |p_plus| + |p_minus| exceeds the absolute resolution of the eigenvalues.
  bool resolved = true;
};

struct DeltaFit {
  Complex kappa;
  double max_ratio = 0.0;
  /// No resolved sample with nonzero p.
  bool degenerate = false;
  /// Rank of the real 2-column system; 1 when p_n = p_{-n} throughout (even q),
  /// in which case the minimum norm kappa is reported.
  int rank = 0;
  std::vector<DeltaSample> samples;
};

/// Least squares kappa from pairs (delta_n, p_n, p_{-n}). Writing kappa = x + iy,
/// kappa p + conj(kappa) p' = x (p + p') + i y (p - p') is linear in (x, y).
inline DeltaFit fit_delta_model(std::vector<DeltaSample> samples) {
  DeltaFit fit;
  const auto rows = static_cast<Eigen::Index>(2 * samples.size());
  Eigen::MatrixXd A(rows, 2);
  Eigen::VectorXd b(rows);
  double scale = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!s.resolved) {
      A.row(static_cast<Eigen::Index>(2 * i)).setZero();
      A.row(static_cast<Eigen::Index>(2 * i + 1)).setZero();
      b(static_cast<Eigen::Index>(2 * i)) = b(static_cast<Eigen::Index>(2 * i + 1)) = 0.0;
      continue;
    }
    const Complex u = s.p_plus + s.p_minus;
    const Complex v = Complex(0.0, 1.0) * (s.p_plus - s.p_minus);
    const auto r = static_cast<Eigen::Index>(2 * i);
    A(r, 0) = u.real();
    A(r, 1) = v.real();
    A(r + 1, 0) = u.imag();
    A(r + 1, 1) = v.imag();
    b(r) = s.delta.real();
    b(r + 1) = s.delta.imag();
    scale = std::max(scale, std::abs(s.p_plus) + std::abs(s.p_minus));
  }
  if (samples.empty() || scale == 0.0) {
    fit.degenerate = true;
    fit.samples = std::move(samples);
    for (auto& s : fit.samples) s.ratio = std::nan("");
    fit.max_ratio = std::nan("");
    return fit;
  }
  const auto cod = A.completeOrthogonalDecomposition();
  const Eigen::VectorXd x = cod.solve(b);
  fit.rank = static_cast<int>(cod.rank());
  fit.kappa = Complex(x(0), x(1));
  for (auto& s : samples) {
    s.model = fit.kappa * s.p_plus + std::conj(fit.kappa) * s.p_minus;
    const double denom = std::abs(s.p_plus) + std::abs(s.p_minus);
    s.ratio = denom > 0.0 ? std::abs(s.delta - s.model) / denom : std::nan("");
    if (denom > 0.0 && s.resolved) fit.max_ratio = std::max(fit.max_ratio, s.ratio);
  }
  fit.samples = std::move(samples);
  return fit;
}

/// Fits kappa over n in [n_lo, n_hi] with delta_n from the family with angle alpha.
/// Indices where |p_n| + |p_{-n}| is within 1e3 unit roundoffs of n^2 pi^2 are
/// kept in the samples but marked unresolved.
inline DeltaFit delta_linear_model(const FourierPotential& q, int n_lo, int n_hi, double alpha = 0.0,
                                   const OracleOptions& oracle = {}, const block::BlockOptions& blk = {}) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("delta model needs 1 <= n_lo <= n_hi");
  std::vector<DeltaSample> samples;
  for (int n = n_lo; n <= n_hi; ++n) {
    const GapRecord g = gap_record(q, n, alpha, oracle);
    const block::BlockData b = block::block_data(q, n, blk);
    const double floor = 1e3 * unit_roundoff(oracle.precision) * std::max(1.0, std::abs(sigma_n(n) + q.mean()));
    const bool resolved = std::abs(b.p_plus) + std::abs(b.p_minus) > floor;
    samples.push_back({n, g.delta, b.p_plus, b.p_minus, {}, 0.0, resolved});
  }
  return fit_delta_model(std::move(samples));
}

}  // namespace hillgap::floquet
