#include "cesaro/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cesaro {

double fejer_kernel(std::int64_t n, double u) {
  if (n < 0) throw std::invalid_argument("fejer_kernel: order must be >= 0");
  const double np1 = static_cast<double>(n + 1);
  if (std::fabs(u) < 1e-6) {
    // Removable singularity: series keeps the error below (n+1)^5 u^4 terms.
    return 0.5 * np1 * (1.0 - (np1 * np1 - 1.0) * u * u / 12.0);
  }
  const double q = std::sin(0.5 * u * np1) / std::sin(0.5 * u);
  return q * q / (2.0 * np1);
}

Complex dirichlet_kernel(std::int64_t l, double z) {
  if (l < 0) throw std::invalid_argument("dirichlet_kernel: order must be >= 0");
  if (std::fabs(z) < 1e-12)
    return {static_cast<double>(l) + 0.5, 0.0};
  const double ld = static_cast<double>(l);
  const Complex a = std::polar(1.0, (ld + 1.0) * z) - std::polar(1.0, -ld * z);
  const double cot = std::cos(0.5 * z) / std::sin(0.5 * z);
  return a * Complex{-0.25, -0.25 * cot};
}

FejerBoundReport check_fejer_bounds(std::int64_t n, std::int64_t samples) {
  if (samples < 1)
    throw std::invalid_argument("check_fejer_bounds: need samples >= 1");
  FejerBoundReport report;
  report.order = n;
  report.samples = samples;
  report.min_value = std::numeric_limits<double>::infinity();
  report.max_bound_ratio = 0.0;
  const double width = kTwoPi / static_cast<double>(samples);
  const double np1 = static_cast<double>(n + 1);
  for (std::int64_t j = 0; j < samples; ++j) {
    const double u = -kPi + width * (static_cast<double>(j) + 0.5);
    if (u == 0.0) continue;
    const double value = fejer_kernel(n, u);
    report.min_value = std::min(report.min_value, value);
    report.max_bound_ratio =
        std::max(report.max_bound_ratio, value * 2.0 * np1 * u * u / (kPi * kPi));
  }
  report.pass =
      report.min_value >= -1e-12 && report.max_bound_ratio <= 1.0 + 1e-9;
  return report;
}

}  // namespace cesaro
