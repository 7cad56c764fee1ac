#include <doctest.h>

#include <cmath>

#include "cesaro/circle.hpp"
#include "cesaro/spectral.hpp"

using namespace cesaro;

namespace {

PCFunction noisy(int level, std::uint64_t seed) {
  std::uint64_t s = seed;
  CVector v(std::int64_t{1} << level);
  for (std::int64_t i = 0; i < v.size(); ++i)
    v[i] = Complex{2.0 * detail::uniform01(s) - 1.0,
                   2.0 * detail::uniform01(s) - 1.0};
  return PCFunction(level, v);
}

// Weight applied to coefficient k by a band list, independent of its layout.
double weight_of(const std::vector<WeightBand>& bands, double w0,
                 std::int64_t k) {
  if (k == 0) return w0;
  const std::int64_t a = std::abs(k);
  double w = 0.0;
  for (const auto& band : bands)
    if (band.lo <= a && a <= band.hi)
      w += band.a + band.b * static_cast<double>(a);
  return w;
}

// Direct evaluation of the weighted Fourier sum from materialized
// coefficients; the reference for every table check below.
CVector direct_eval(const PCFunction& f, int level,
                    const std::vector<WeightBand>& bands, double w0,
                    std::int64_t degree) {
  const TrigPoly p = bandlimit(f, degree);
  const std::int64_t m = std::int64_t{1} << level;
  CVector out(m);
  for (std::int64_t q = 0; q < m; ++q) {
    const double y = -kPi + kTwoPi * (static_cast<double>(q) + 0.5) /
                                static_cast<double>(m);
    Complex acc{0.0, 0.0};
    for (std::int64_t k = -degree; k <= degree; ++k)
      acc += weight_of(bands, w0, k) * p.coeff(k) *
             std::exp(Complex{0.0, static_cast<double>(k) * y});
    out[q] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("band weight shapes") {
  CHECK(weight_of(bands_partial(5), 1.0, 3) == 1.0);
  CHECK(weight_of(bands_partial(5), 1.0, 5) == 1.0);
  CHECK(weight_of(bands_partial(5), 1.0, 6) == 0.0);
  CHECK(weight_of(bands_partial(0), 1.0, 1) == 0.0);

  for (std::int64_t k = 1; k <= 8; ++k)
    CHECK(weight_of(bands_fejer(7), 1.0, k) ==
          doctest::Approx(k <= 7 ? 1.0 - static_cast<double>(k) / 8.0 : 0.0));

  // V_2: flat to 2, taper (2n-k)/n on [n+1, 2n-1], nothing at 2n
  CHECK(weight_of(bands_vp(2), 1.0, 2) == 1.0);
  CHECK(weight_of(bands_vp(2), 1.0, 3) == doctest::Approx(0.5));
  CHECK(weight_of(bands_vp(2), 1.0, 4) == 0.0);
  // S_2 - V_2: zero through n, minus the taper above it
  CHECK(weight_of(bands_sv(2), 0.0, 1) == 0.0);
  CHECK(weight_of(bands_sv(2), 0.0, 2) == 0.0);
  CHECK(weight_of(bands_sv(2), 0.0, 3) == doctest::Approx(-0.5));
  // V_1 = S_1, so the difference has no bands at all
  CHECK(bands_sv(1).empty());
}

TEST_CASE("table matches direct sums at modest orders") {
  const PCFunction f = noisy(4, 31);
  const SpectralTable table(f, 6);
  CHECK(table.points() == 64);
  CHECK(std::abs(table.mean() - fourier_coefficient(f, 0)) < 1e-13);
  for (std::int64_t l : {0, 1, 5, 37, 200}) {
    const CVector got = table.partial_sum(l);
    const CVector want = direct_eval(f, 6, bands_partial(l), 1.0, l);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
  }
  for (std::int64_t n : {1, 6, 40}) {
    CHECK((table.fejer(n) - direct_eval(f, 6, bands_fejer(n), 1.0, n))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    CHECK((table.vp(n) - direct_eval(f, 6, bands_vp(n), 1.0, 2 * n - 1))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    CHECK((table.sv(n) - direct_eval(f, 6, bands_sv(n), 0.0, 2 * n - 1))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("digamma fast path agrees with enumeration") {
  // M = 16, so spans above 128 take the closed-form route; compare both
  // sides of the threshold against materialized coefficients
  const PCFunction f = noisy(4, 57);
  const SpectralTable table(f, 4);
  for (std::int64_t l : {100, 135, 517, 4099}) {
    const CVector got = table.partial_sum(l);
    const CVector want = direct_eval(f, 4, bands_partial(l), 1.0, l);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-9);
  }
  for (std::int64_t n : {70, 333, 2048}) {
    const CVector got = table.sv(n);
    const CVector want = direct_eval(f, 4, bands_sv(n), 0.0, 2 * n - 1);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("sv is the difference of its parts on the grid") {
  const PCFunction f = noisy(5, 8);
  const SpectralTable table(f, 7);
  for (std::int64_t n : {1, 2, 9, 100, 65536}) {
    const CVector diff = table.partial_sum(n) - table.vp(n);
    CHECK((diff - table.sv(n)).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("huge orders stay finite and tame") {
  const PCFunction f = noisy(3, 101);
  const SpectralTable table(f, 5);
  const std::int64_t n = std::int64_t{1} << 52;
  const CVector sv = table.sv(n);
  CHECK(sv.allFinite());
  // |S_n - V_n| <= sum over the taper band of |fhat| ~ O(1) for a step f
  CHECK(sv.cwiseAbs().maxCoeff() < 10.0);
}

TEST_CASE("constructor guards") {
  const PCFunction f = noisy(6, 5);
  CHECK_THROWS(SpectralTable(f, 5));   // coarser than f
  CHECK_THROWS(SpectralTable(f, 12));  // basis would be 4096 x 4096
  const SpectralTable ok(f, 6);
  CHECK(ok.midpoint(0) == doctest::Approx(-kPi + kPi / 64.0));
}

TEST_CASE("alternating reciprocal sums") {
  for (double x : {0.125, 0.37, 0.93}) {
    for (auto [t0, t1] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {0, 25}, {3, 17}, {5, 4}, {0, 0}, {7, 7}, {2, 4000}}) {
      double direct = 0.0;
      for (std::int64_t t = t0; t <= t1; ++t)
        direct += ((t & 1) ? -1.0 : 1.0) / (static_cast<double>(t) + x);
      CHECK(detail::alternating_reciprocal_sum(t0, t1, x) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
}
