#pragma once

#include <cstdint>

#include "cesaro/circle.hpp"

namespace cesaro {

/// Fejer kernel K_n(u) = (1/(2(n+1))) (sin(u(n+1)/2) / sin(u/2))^2.
/// Below |u| = 1e-6 the quotient is replaced by its series,
/// (n+1)/2 * (1 - ((n+1)^2 - 1) u^2 / 12), so u = 0 returns (n+1)/2.
double fejer_kernel(std::int64_t n, double u);

/// Dirichlet kernel D_l(z) = (1/2) sum_{|k| <= l} e^{ikz}, evaluated as
/// (e^{i(l+1)z} - e^{-ilz}) (-1/4 - (i/4) cot(z/2)); below |z| = 1e-12 the
/// defining sum collapses to l + 1/2.
Complex dirichlet_kernel(std::int64_t l, double z);

/// Worst-case scan of the two pointwise Fejer bounds over a midpoint grid:
/// nonnegativity and K_n(u) <= pi^2 / (2(n+1)u^2) for u != 0.
struct FejerBoundReport {
  std::int64_t order = 0;
  std::int64_t samples = 0;
  double min_value = 0.0;       // most negative K_n seen (>= -1e-12 expected)
  double max_bound_ratio = 0.0; // max of K_n(u) 2(n+1)u^2 / pi^2 (<= 1 + 1e-9)
  bool pass = false;
};

FejerBoundReport check_fejer_bounds(std::int64_t n, std::int64_t samples);

}  // namespace cesaro
