#include <doctest.h>

#include <cmath>

#include "cesaro/circle.hpp"
#include "cesaro/kernels.hpp"

using namespace cesaro;

TEST_CASE("fejer kernel frozen values") {
  // K_3(1) = (1/8)(sin 2 / sin 0.5)^2, K_5(0.3) = (1/12)(sin 0.9 / sin 0.15)^2
  CHECK(fejer_kernel(3, 1.0) == doctest::Approx(0.4496551869774223).epsilon(1e-14));
  CHECK(fejer_kernel(5, 0.3) == doctest::Approx(2.2897179201166304).epsilon(1e-14));
  CHECK(fejer_kernel(0, 2.1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("fejer kernel small-u series branch") {
  CHECK(fejer_kernel(7, 0.0) == doctest::Approx(4.0).epsilon(1e-15));
  // continuity across the branch switch at |u| = 1e-6
  const double a = fejer_kernel(12, 0.9999e-6);
  const double b = fejer_kernel(12, 1.0001e-6);
  CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("dirichlet kernel frozen value and identities") {
  CHECK(dirichlet_kernel(3, 0.7).real() ==
        doctest::Approx(0.929963225584872).epsilon(1e-13));
  CHECK(std::abs(dirichlet_kernel(3, 0.7).imag()) < 1e-14);
  CHECK(dirichlet_kernel(9, 0.0).real() == doctest::Approx(9.5));
  // D_l(pi) alternates: sum (-1)^k over |k| <= l
  CHECK(dirichlet_kernel(4, kPi - 1e-14).real() == doctest::Approx(0.5).epsilon(1e-9));

  for (std::int64_t l : {0, 1, 2, 5, 17}) {
    for (double z : {-2.9, -1.0, 0.3, 2.2}) {
      Complex direct{0.5, 0.0};
      for (std::int64_t k = 1; k <= l; ++k) direct += std::cos(k * z);
      CHECK(std::abs(dirichlet_kernel(l, z) - direct) < 1e-12);
    }
  }
}

TEST_CASE("cesaro mean of dirichlet kernels is the fejer kernel") {
  for (std::int64_t n : {0, 1, 4, 16}) {
    for (std::int64_t p = 0; p < 256; ++p) {
      const double u = -kPi + kTwoPi * (p + 0.5) / 256.0;
      Complex avg{0.0, 0.0};
      for (std::int64_t k = 0; k <= n; ++k) avg += dirichlet_kernel(k, u);
      avg /= static_cast<double>(n + 1);
      CHECK(std::abs(avg.real() - fejer_kernel(n, u)) < 1e-11);
      CHECK(std::abs(avg.imag()) < 1e-12);
    }
  }
}

TEST_CASE("fejer bound scan") {
  for (std::int64_t n : {0, 1, 5, 64}) {
    const FejerBoundReport rep = check_fejer_bounds(n, 1024);
    CHECK(rep.pass);
    CHECK(rep.order == n);
    CHECK(rep.samples == 1024);
    CHECK(rep.min_value >= -1e-12);
    CHECK(rep.max_bound_ratio <= 1.0 + 1e-9);
    CHECK(rep.max_bound_ratio > 0.0);
  }
}
