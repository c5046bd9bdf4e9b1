#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "hillgap/seqspace.hpp"

using namespace hillgap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

FourierPotential sample_potential(std::uint64_t seed, int K, bool real) {
  RandomPotentialSpec spec;
  spec.decay = Weight::polynomial(1.0);
  spec.seed = seed;
  spec.window = K;
  spec.real = real;
  FourierPotential q = make_random(spec);
  q.set(0, Complex(0.3, real ? 0.0 : -0.2));
  return q;
}

ParityVector sample_vector(std::uint64_t seed, Parity p, int support, int cut) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ParityVector f(p, cut);
  for (std::size_t j = 0; j < f.size(); ++j)
    if (std::abs(f.mode(j)) <= support) f.data()[j] = Complex(u(rng), u(rng));
  return f;
}

// (Vf)_m = sum_k q_k f_{m-2k} with every product kept
std::vector<std::pair<int, Complex>> brute_product(const FourierPotential& q, const ParityVector& f) {
  std::vector<std::pair<int, Complex>> out;
  const int K = q.window();
  for (int m = -f.cut() - 2 * K; m <= f.cut() + 2 * K; ++m) {
    if (parity_of(m) != f.parity()) continue;
    Complex s = 0.0;
    for (int k = -K; k <= K; ++k) {
      const int src = m - 2 * k;
      if (std::abs(src) > f.cut()) continue;
      s += (k == 0 ? q.mean() : q[k]) * f[src];
    }
    out.emplace_back(m, s);
  }
  return out;
}

}  // namespace

TEST_CASE("named potentials", "[seqspace]") {
  const FourierPotential m = make_mathieu(2.0);
  CHECK(m[1] == Complex(1.0));
  CHECK(m[-1] == Complex(1.0));
  CHECK(m[2] == Complex(0.0));
  CHECK(m.mean() == Complex(0.0));
  CHECK(m.is_real());
  CHECK(m.is_even());
  CHECK_THAT(m.evaluate(0.25).real(), WithinAbs(0.0, 1e-15));
  CHECK_THAT(m.evaluate(0.0).real(), WithinAbs(2.0, 1e-15));

  const FourierPotential g = make_gasymov({1.0, Complex(0.0, 0.5)});
  CHECK(g[1] == Complex(1.0));
  CHECK(g[2] == Complex(0.0, 0.5));
  CHECK(g[-1] == Complex(0.0));
  CHECK_FALSE(g.is_real());
}

TEST_CASE("weighted norm examples", "[seqspace]") {
  CHECK_THAT(wnorm(make_mathieu(1.0), Weight::trivial()), WithinRel(std::sqrt(0.5), 1e-15));
  CHECK_THAT(wnorm(make_mathieu(1.0), Weight::polynomial(1.0)), WithinRel(std::sqrt(2.0), 1e-15));
  FourierPotential q(3);
  q.set(0, 2.0);
  q.set(3, Complex(0.0, 1.0));
  CHECK_THAT(wnorm(q, Weight::polynomial(1.0)), WithinRel(std::sqrt(4.0 + 16.0), 1e-15));
  CHECK(wnorm(FourierPotential(4), Weight::superexp(2.0)) == 0.0);
}

TEST_CASE("Parseval for the trivial weight", "[seqspace][property]") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const FourierPotential q = sample_potential(seed, 6, seed % 2 == 0);
    const int M = 64;
    double s = 0.0;
    for (int j = 0; j < M; ++j) s += std::norm(q.evaluate(double(j) / M));
    s /= M;
    CHECK_THAT(wnorm(q, Weight::trivial()), WithinRel(std::sqrt(s), 1e-13));
  }
}

TEST_CASE("tail and truncation", "[seqspace]") {
  const FourierPotential q = sample_potential(5, 8, false);
  const Weight w = Weight::gevrey(0.0, 1.0, 0.5);
  const FourierPotential t = tail(q, 3);
  CHECK(t.mean() == Complex(0.0));
  CHECK(t[2] == Complex(0.0));
  CHECK(t[-3] == q[-3]);
  CHECK(t[8] == q[8]);

  const FourierPotential lo = truncate(q, 2);
  CHECK(lo.mean() == q.mean());
  CHECK(lo[-2] == q[-2]);
  CHECK(lo[3] == Complex(0.0));
  CHECK_THAT(std::pow(wnorm(lo, w), 2) + std::pow(wnorm(t, w), 2), WithinRel(std::pow(wnorm(q, w), 2), 1e-14));
  CHECK_THROWS_AS(tail(q, 0), DomainError);
}

TEST_CASE("shifted norm examples", "[seqspace]") {
  const ParityVector e3 = ParityVector::unit(3, 5);
  CHECK(e3.parity() == Parity::odd);
  CHECK_THAT(shifted_wnorm(e3, Weight::polynomial(1.0), 0), WithinRel(2.5, 1e-15));
  CHECK_THAT(shifted_wnorm(e3, Weight::polynomial(1.0), -3), WithinRel(1.0, 1e-15));
  CHECK_THAT(shifted_wnorm(e3, Weight::polynomial(1.0), 4), WithinRel(4.5, 1e-15));
}

TEST_CASE("shifted norm equals the norm of the shifted vector", "[seqspace][property]") {
  const Weight ws[] = {Weight::polynomial(2.0), Weight::gevrey(0.0, 1.0, 0.5), Weight::exponential(1.0, 0.2)};
  for (const Weight& w : ws)
    for (int i : {-5, -2, 0, 1, 4}) {
      const ParityVector f = sample_vector(11 + i, Parity::even, 10, 12);
      INFO(w.describe() << " i = " << i);
      CHECK_THAT(shifted_wnorm(f, w, i), WithinRel(wnorm(f.shifted(i), w), 1e-14));
    }
}

TEST_CASE("parity vector bookkeeping", "[seqspace]") {
  ParityVector f(Parity::odd, 4);
  CHECK(f.cut() == 5);
  CHECK(f.size() == 6);
  CHECK(f.mode(0) == -5);
  CHECK(f.mode(5) == 5);
  CHECK_THROWS_AS(f.set(2, 1.0), DomainError);
  CHECK_THROWS_AS(f.set(7, 1.0), DomainError);
  CHECK(f[9] == Complex(0.0));

  f.set(3, Complex(1.0, 2.0));
  const ParityVector g = f.conj_reflected();
  CHECK(g[-3] == Complex(1.0, -2.0));
  const ParityVector s = f.shifted(1);
  CHECK(s.parity() == Parity::even);
  CHECK(s[4] == Complex(1.0, 2.0));
}

TEST_CASE("multiplication examples", "[seqspace]") {
  const ParityVector e3 = ParityVector::unit(3, 9);
  const ParityVector v = multiply_by_potential(make_mathieu(2.0), e3);
  CHECK(v[1] == Complex(1.0));
  CHECK(v[5] == Complex(1.0));
  CHECK(v[3] == Complex(0.0));
  CHECK_THAT(v.norm(), WithinRel(std::sqrt(2.0), 1e-15));

  double loss = -1.0;
  const ParityVector edge = multiply_by_potential(make_mathieu(2.0), ParityVector::unit(3, 3), &loss);
  CHECK(edge[1] == Complex(1.0));
  CHECK(loss == 1.0);

  FourierPotential c(1);
  c.set(0, 2.0);
  const ParityVector d = multiply_by_potential(c, e3);
  CHECK(d[3] == Complex(2.0));
}

TEST_CASE("multiplication agrees with direct convolution", "[seqspace][property]") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const FourierPotential q = sample_potential(seed, 5, seed % 2 == 1);
    const Parity p = seed % 2 ? Parity::odd : Parity::even;
    const ParityVector f = sample_vector(100 + seed, p, 9, 13);
    double loss = 0.0;
    const ParityVector v = multiply_by_potential(q, f, &loss);
    double lost = 0.0;
    for (const auto& [m, val] : brute_product(q, f)) {
      if (std::abs(m) <= f.cut())
        CHECK_THAT(std::abs(v[m] - val), WithinAbs(0.0, 1e-14));
      else
        lost += std::norm(val);
    }
    CHECK_THAT(loss, WithinAbs(std::sqrt(lost), 1e-14));
  }
}

TEST_CASE("multiplication commutes with shifts", "[seqspace][property]") {
  const FourierPotential q = sample_potential(9, 4, false);
  const ParityVector f = sample_vector(3, Parity::even, 6, 30);
  for (int i : {-3, 1, 2}) {
    const ParityVector a = multiply_by_potential(q, f.shifted(i));
    const ParityVector b = multiply_by_potential(q, f).shifted(i);
    for (int m = -20; m <= 20; ++m)
      if (parity_of(m) == a.parity()) CHECK_THAT(std::abs(a[m] - b[m]), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("real potentials preserve real functions", "[seqspace][property]") {
  const FourierPotential q = sample_potential(4, 5, true);
  REQUIRE(q.is_real());
  const ParityVector f = sample_vector(8, Parity::odd, 7, 21);
  const ParityVector a = multiply_by_potential(q, f.conj_reflected());
  const ParityVector b = multiply_by_potential(q, f).conj_reflected();
  for (std::size_t j = 0; j < a.size(); ++j) CHECK_THAT(std::abs(a.data()[j] - b.data()[j]), WithinAbs(0.0, 1e-14));
}

TEST_CASE("random potentials", "[seqspace]") {
  RandomPotentialSpec spec;
  spec.decay = Weight::gevrey(2.0, 1.0, 0.5);
  spec.seed = 101;
  spec.window = 24;
  spec.scale = 2.0;
  const FourierPotential a = make_random(spec);
  const FourierPotential b = make_random(spec);
  for (int n = -24; n <= 24; ++n) CHECK(a[n] == b[n]);
  CHECK(a.mean() == Complex(0.0));
  CHECK(a.is_real());
  for (int n = 1; n <= 24; ++n) CHECK(std::abs(a[n]) * eval(spec.decay, n) <= spec.scale * (1.0 + 1e-15));

  spec.real = false;
  const FourierPotential c = make_random(spec);
  CHECK_FALSE(c.is_real());
  CHECK(c[1] == a[1]);

  spec.seed = 102;
  CHECK(make_random(spec)[1] != a[1]);
  spec.window = 0;
  CHECK_THROWS_AS(make_random(spec), DomainError);
}

TEST_CASE("real potentials evaluate to real values", "[seqspace][property]") {
  const FourierPotential q = sample_potential(12, 7, true);
  for (double x : {0.0, 0.13, 0.5, 0.77}) CHECK_THAT(q.evaluate(x).imag(), WithinAbs(0.0, 1e-14));
  CHECK_THAT(std::abs(q.evaluate(0.3) - q.evaluate(1.3)), WithinAbs(0.0, 1e-13));
}
