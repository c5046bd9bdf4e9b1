#pragma once

/*
 * Weights for weighted sequence spaces.
 *
 * A normalized weight is a symmetric function w on the half-integer lattice
 * with w(n) = w(-n) >= 1. The parametric families use <n> = 1 + |n|:
 *
 *   trivial                 1
 *   polynomial(r)           <n>^r
 *   exponential(r, a)       <n>^r exp(a|n|)
 *   gevrey(r, a, s)         <n>^r exp(a|n|^s),                 0 < s < 1
 *   log_tempered(r, a, al)  <n>^r exp(a|n| / (1 + log^al <n>))
 *   superexp(s)             exp(|n|^s),                         s > 1
 *   tempered(eps, w)        min(exp(eps|n|), w(n))
 *   table                   explicit values on a finite grid of step 1/2
 *
 * All evaluation happens in the log domain; eval() maps log values above an
 * overflow threshold to +inf.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hillgap/core.hpp"

namespace hillgap {

enum class WeightKind { trivial, polynomial, exponential, gevrey, log_tempered, superexp, tempered, table };

inline const char* to_string(WeightKind k) {
  switch (k) {
    case WeightKind::trivial: return "trivial";
    case WeightKind::polynomial: return "polynomial";
    case WeightKind::exponential: return "exponential";
    case WeightKind::gevrey: return "gevrey";
    case WeightKind::log_tempered: return "log_tempered";
    case WeightKind::superexp: return "superexp";
    case WeightKind::tempered: return "tempered";
    case WeightKind::table: return "table";
  }
  return "?";
}

struct WeightParams {
  double r = 0.0;
  double a = 0.0;
  double sigma = 0.0;
  double alpha = 0.0;
  double eps = 0.0;
};

class Weight {
 public:
  Weight() = default;  // trivial

  static Weight trivial() { return Weight(); }

  static Weight polynomial(double r) {
    require(r >= 0.0, "polynomial weight needs r >= 0");
    Weight w(WeightKind::polynomial);
    w.p_.r = r;
    return w;
  }

  static Weight exponential(double r, double a) {
    require(r >= 0.0 && a >= 0.0, "exponential weight needs r, a >= 0");
    Weight w(WeightKind::exponential);
    w.p_.r = r;
    w.p_.a = a;
    return w;
  }

  static Weight gevrey(double r, double a, double sigma) {
    require(r >= 0.0 && a >= 0.0, "gevrey weight needs r, a >= 0");
    require(sigma > 0.0 && sigma < 1.0, "gevrey weight needs 0 < sigma < 1");
    Weight w(WeightKind::gevrey);
    w.p_.r = r;
    w.p_.a = a;
    w.p_.sigma = sigma;
    return w;
  }

  static Weight log_tempered(double r, double a, double alpha) {
    require(r >= 0.0 && a >= 0.0, "log_tempered weight needs r, a >= 0");
    require(alpha > 0.0, "log_tempered weight needs alpha > 0");
    Weight w(WeightKind::log_tempered);
    w.p_.r = r;
    w.p_.a = a;
    w.p_.alpha = alpha;
    return w;
  }

  static Weight superexp(double sigma) {
    require(sigma > 1.0, "superexp weight needs sigma > 1");
    Weight w(WeightKind::superexp);
    w.p_.sigma = sigma;
    return w;
  }

  static Weight tempered(double eps, Weight inner) {
    require(eps > 0.0, "tempering needs eps > 0");
    Weight w(WeightKind::tempered);
    w.p_.eps = eps;
    w.inner_ = std::make_shared<const Weight>(std::move(inner));
    return w;
  }

  /// values[j] = w(j/2) for j = 0, 1, 2, ...; extended to negative indices by symmetry.
  static Weight table(std::vector<double> values) {
    require(!values.empty(), "table weight needs at least one value");
    for (double v : values) require(std::isfinite(v) && v >= 1.0, "table weight values must be finite and >= 1");
    Weight w(WeightKind::table);
    w.table_ = std::make_shared<const std::vector<double>>(std::move(values));
    return w;
  }

  WeightKind kind() const { return kind_; }
  const WeightParams& params() const { return p_; }
  const Weight* inner() const { return inner_.get(); }
  const std::vector<double>& table_values() const {
    static const std::vector<double> empty;
    return table_ ? *table_ : empty;
  }
  /// Largest |n| for which a table weight is defined; infinity otherwise.
  double extent() const {
    if (kind_ == WeightKind::table) return static_cast<double>(table_->size() - 1) / 2.0;
    if (kind_ == WeightKind::tempered) return inner_->extent();
    return std::numeric_limits<double>::infinity();
  }

  double log_value(HalfIndex n) const {
    const double x = n.magnitude();
    const double poly = p_.r == 0.0 ? 0.0 : p_.r * std::log1p(x);
    switch (kind_) {
      case WeightKind::trivial: return 0.0;
      case WeightKind::polynomial: return poly;
      case WeightKind::exponential: return poly + p_.a * x;
      case WeightKind::gevrey: return poly + p_.a * std::pow(x, p_.sigma);
      case WeightKind::log_tempered:
        return poly + p_.a * x / (1.0 + std::pow(std::log1p(x), p_.alpha));
      case WeightKind::superexp: return std::pow(x, p_.sigma);
      case WeightKind::tempered: return std::min(p_.eps * x, inner_->log_value(n));
      case WeightKind::table: {
        const auto idx = static_cast<std::size_t>(n.twice() < 0 ? -n.twice() : n.twice());
        if (idx >= table_->size())
          throw DomainError("table weight queried at |n| = " + std::to_string(x) + " beyond its grid");
        return std::log((*table_)[idx]);
      }
    }
    return 0.0;
  }

  std::string describe() const {
    char buf[160];
    switch (kind_) {
      case WeightKind::trivial: return "trivial";
      case WeightKind::polynomial: std::snprintf(buf, sizeof buf, "polynomial(r=%g)", p_.r); break;
      case WeightKind::exponential: std::snprintf(buf, sizeof buf, "exponential(r=%g,a=%g)", p_.r, p_.a); break;
      case WeightKind::gevrey:
        std::snprintf(buf, sizeof buf, "gevrey(r=%g,a=%g,sigma=%g)", p_.r, p_.a, p_.sigma);
        break;
      case WeightKind::log_tempered:
        std::snprintf(buf, sizeof buf, "log_tempered(r=%g,a=%g,alpha=%g)", p_.r, p_.a, p_.alpha);
        break;
      case WeightKind::superexp: std::snprintf(buf, sizeof buf, "superexp(sigma=%g)", p_.sigma); break;
      case WeightKind::tempered:
        std::snprintf(buf, sizeof buf, "tempered(eps=%g,", p_.eps);
        return std::string(buf) + inner_->describe() + ")";
      case WeightKind::table: std::snprintf(buf, sizeof buf, "table(%zu values)", table_->size()); break;
    }
    return buf;
  }

 private:
  explicit Weight(WeightKind k) : kind_(k) {}

  static void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
  }

  WeightKind kind_ = WeightKind::trivial;
  WeightParams p_{};
  std::shared_ptr<const Weight> inner_;
  std::shared_ptr<const std::vector<double>> table_;
};

/// log(DBL_MAX) rounded down; eval() reports +inf above it.
inline constexpr double kWeightOverflowLog = 709.0;

inline double eval(const Weight& w, HalfIndex n, double overflow_log = kWeightOverflowLog) {
  const double lv = w.log_value(n);
  if (lv > overflow_log) return std::numeric_limits<double>::infinity();
  return std::exp(lv);
}

inline double eval(const Weight& w, int n) { return eval(w, HalfIndex::integer(n)); }

struct SubmultiplicativityReport {
  bool holds = true;
  std::optional<std::pair<int, int>> first_violation;
  /// max over checked pairs of log w(n+m) - log w(n) - log w(m)
  double worst_log_excess = -std::numeric_limits<double>::infinity();
  long long pairs_checked = 0;
};

inline constexpr double kSubmultiplicativeSlack = 1e-12;

/// Exhaustive check of w(n+m) <= w(n) w(m) (1 + slack) over integers |n|, |m| <= N.
/// Table weights only contribute pairs whose sum stays on their grid.
inline SubmultiplicativityReport check_submultiplicative(const Weight& w, int N,
                                                         double slack = kSubmultiplicativeSlack) {
  if (N < 1) throw DomainError("check_submultiplicative needs N >= 1");
  const double extent = w.extent();
  const int reach = std::isfinite(extent) ? std::min(N, static_cast<int>(extent)) : N;
  std::vector<double> lw(2 * static_cast<std::size_t>(2 * N) + 1, 0.0);
  const int sum_reach = std::isfinite(extent) ? std::min(2 * N, static_cast<int>(extent)) : 2 * N;
  for (int k = 0; k <= sum_reach; ++k) lw[k] = w.log_value(HalfIndex::integer(k));
  const double log_slack = std::log1p(slack);

  SubmultiplicativityReport rep;
  for (int n = -reach; n <= reach; ++n) {
    for (int m = -reach; m <= reach; ++m) {
      const int s = std::abs(n + m);
      if (s > sum_reach) continue;
      ++rep.pairs_checked;
      const double excess = lw[s] - lw[std::abs(n)] - lw[std::abs(m)];
      rep.worst_log_excess = std::max(rep.worst_log_excess, excess);
      if (excess > log_slack && rep.holds) {
        rep.holds = false;
        rep.first_violation = std::pair{n, m};
      }
    }
  }
  return rep;
}

/// min(exp(eps|n|), w(n)) as a first-class weight.
inline Weight temper(const Weight& w, double eps) { return Weight::tempered(eps, w); }

/// Largest N <= N_max with log w(i)/i >= eps for every 1 <= i <= N (0 if none).
/// On [0, N] the tempered weight coincides with exp(eps|n|).
inline int crossover_index(const Weight& w, double eps, int N_max) {
  int N = 0;
  for (int i = 1; i <= N_max; ++i) {
    if (w.log_value(HalfIndex::integer(i)) / i < eps) break;
    N = i;
  }
  return N;
}

enum class Growth { strictly_subexponential, exponential, superexponential, undetermined };

inline const char* to_string(Growth g) {
  switch (g) {
    case Growth::strictly_subexponential: return "strictly_subexponential";
    case Growth::exponential: return "exponential";
    case Growth::superexponential: return "superexponential";
    case Growth::undetermined: return "undetermined";
  }
  return "?";
}

/// Heuristic verdict from t_n = log w(n)/n on 1 <= n <= N, judged on the tail [N/2, N].
inline Growth classify_growth_sampled(const Weight& w, int N) {
  if (N < 16) throw DomainError("classify_growth needs N >= 16");
  if (std::isfinite(w.extent())) N = std::min(N, static_cast<int>(w.extent()));
  if (N < 16) return Growth::undetermined;
  std::vector<double> t(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) t[n] = w.log_value(HalfIndex::integer(n)) / n;

  const int half = N / 2;
  bool nondecreasing = true;
  bool nonincreasing = true;
  for (int n = half; n < N; ++n) {
    const double tol = 1e-13 * std::max(1.0, std::abs(t[n]));
    if (t[n + 1] < t[n] - tol) nondecreasing = false;
    if (t[n + 1] > t[n] + tol) nonincreasing = false;
  }
  if (nondecreasing && t[N] > 0.0 && t[N] >= 1.1 * t[half]) return Growth::superexponential;
  if (nonincreasing) {
    if (t[N] <= 1e-12) return Growth::strictly_subexponential;
    const double drop = t[half] - t[N];
    if (drop <= 0.02 * t[N]) return Growth::exponential;
    if (drop >= 0.05 * t[N]) return Growth::strictly_subexponential;
  }
  return Growth::undetermined;
}

/// Growth class; closed form for parametric kinds, sampled for tables.
inline Growth classify_growth(const Weight& w, int N) {
  if (N < 16) throw DomainError("classify_growth needs N >= 16");
  const auto& p = w.params();
  switch (w.kind()) {
    case WeightKind::trivial:
    case WeightKind::polynomial: return Growth::strictly_subexponential;
    case WeightKind::exponential: return p.a > 0.0 ? Growth::exponential : Growth::strictly_subexponential;
    case WeightKind::gevrey: return Growth::strictly_subexponential;
    case WeightKind::log_tempered:
      // w is nondecreasing only for alpha <= 2; leave the rest to the samples
      if (p.alpha <= 2.0 || p.a == 0.0) return Growth::strictly_subexponential;
      return classify_growth_sampled(w, N);
    case WeightKind::superexp: return Growth::superexponential;
    case WeightKind::tempered: {
      const Growth g = classify_growth(*w.inner(), N);
      if (g == Growth::strictly_subexponential) return g;
      if (g == Growth::exponential || g == Growth::superexponential) return Growth::exponential;
      return classify_growth_sampled(w, N);
    }
    case WeightKind::table: return classify_growth_sampled(w, N);
  }
  return Growth::undetermined;
}

/// Alternative characterization: log w(n)/n decays toward 0 on the window and
/// min(w, exp(eps|.|)) is submultiplicative for every eps given.
inline bool subexponential_by_tempering(const Weight& w, const std::vector<double>& eps_list, int N) {
  const Growth g = classify_growth_sampled(w, std::max(N, 16));
  if (g != Growth::strictly_subexponential) return false;
  return std::all_of(eps_list.begin(), eps_list.end(),
                     [&](double eps) { return check_submultiplicative(temper(w, eps), N).holds; });
}

struct PsiResult {
  double value = 0.0;
  int argmin = 1;
  /// Lower bound for (log r + log w(m))/m over all m beyond the search range.
  double tail_bound = 0.0;
};

/// psi(r) = min_{m >= 1} (log r + log w(m)) / m for a superexponential weight.
/// The minimum beyond M_search is excluded via monotonicity of log w(m)/m.
inline PsiResult psi(const Weight& w, double r, int M_search) {
  if (!(r >= 1.0)) throw DomainError("psi needs r >= 1");
  if (M_search < 1) throw DomainError("psi needs M_search >= 1");
  if (classify_growth(w, std::max(16, 2 * M_search)) != Growth::superexponential)
    throw PreconditionError("psi needs a superexponential weight, got " + w.describe());

  const double log_r = std::log(r);
  PsiResult res;
  res.value = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= M_search; ++m) {
    const double f = (log_r + w.log_value(HalfIndex::integer(m))) / m;
    if (f < res.value) {
      res.value = f;
      res.argmin = m;
    }
  }

  // log w(m)/m must be nondecreasing from M_search on; exact for superexp,
  // sampled up to 2 M_search otherwise.
  auto t = [&](int m) { return w.log_value(HalfIndex::integer(m)) / m; };
  if (w.kind() != WeightKind::superexp) {
    for (int m = M_search; m < 2 * M_search; ++m)
      if (t(m + 1) < t(m)) throw PreconditionError("psi: log w(m)/m is not monotone beyond the search range");
  }
  res.tail_bound = t(M_search + 1);
  if (res.tail_bound < res.value)
    throw PreconditionError("psi: cannot certify the minimum; increase M_search beyond " + std::to_string(M_search));
  return res;
}

/// Continuous relaxation of psi for superexp(sigma): minimum over real m > 0,
/// equal to c_sigma log^{1-1/sigma} r with c_sigma = sigma / (sigma-1)^{1-1/sigma}.
inline double psi_relaxed_superexp(double sigma, double r) {
  const double L = std::log(r);
  if (L <= 0.0) return 0.0;
  const double c = sigma / std::pow(sigma - 1.0, 1.0 - 1.0 / sigma);
  return c * std::pow(L, 1.0 - 1.0 / sigma);
}

}  // namespace hillgap
