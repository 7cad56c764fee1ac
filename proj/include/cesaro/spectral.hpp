#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cesaro/circle.hpp"

namespace cesaro {

/// One symmetric coefficient band: weight w(k) = a + b|k| applied for
/// lo <= |k| <= hi (1 <= lo). Every summability operator used here (partial
/// sum, Fejer, de la Vallee-Poussin and their differences) is a short list
/// of such bands plus a k = 0 weight.
struct WeightBand {
  std::int64_t lo = 1;
  std::int64_t hi = 0;
  double a = 0.0;
  double b = 0.0;
};

std::vector<WeightBand> bands_partial(std::int64_t n);  // w0 = 1
std::vector<WeightBand> bands_fejer(std::int64_t n);    // w0 = 1
std::vector<WeightBand> bands_vp(std::int64_t n);       // w0 = 1
std::vector<WeightBand> bands_sv(std::int64_t n);       // w0 = 0

/// Grid evaluator for band-weighted Fourier sums of a PC function at the
/// midpoints of a dyadic evaluation grid.
///
/// For a PC function on M = 2^g cells the coefficients obey
///   fhat(k) = (-1)^k A(k mod M) / k        (k != 0),
/// and at midpoints y_p = -pi + h(p + 1/2) the phases factor through
/// k mod M up to an alternating sign in t = (k - r)/M. A band sum therefore
/// collapses to per-residue alternating reciprocal sums, which have a closed
/// form via the digamma function. The result is exact (no truncation) for
/// any band edges, including orders far beyond anything enumerable, at cost
/// O(M) digamma calls per band plus one M x M synthesis product.
class SpectralTable {
public:
  /// Refines f to eval_level (so the cell count and the evaluation grid
  /// agree) and precomputes the residue data. eval_level <= 11 (the
  /// synthesis basis is dense M x M).
  SpectralTable(const PCFunction& f, int eval_level);

  int eval_level() const { return level_; }
  std::int64_t points() const { return m_; }
  double midpoint(std::int64_t p) const;
  Complex mean() const { return mean_; }

  /// Values at all midpoints of  w0 fhat(0) + sum_bands sum_k w(k) fhat(k) e^{iky}.
  CVector eval(const std::vector<WeightBand>& bands, double w0) const;

  CVector partial_sum(std::int64_t n) const;  // S_n on the midpoint grid
  CVector fejer(std::int64_t n) const;        // sigma_n
  CVector vp(std::int64_t n) const;           // V_n
  CVector sv(std::int64_t n) const;           // S_n - V_n

private:
  int level_;
  std::int64_t m_;
  Complex mean_;
  CVector residue_;                            // A(r), r = 0..M-1, A(0) = 0
  std::shared_ptr<const Eigen::MatrixXcd> basis_;  // exp(i r h (p + 1/2))
};

namespace detail {
/// sum_{t=t0}^{t1} (-1)^t / (t + x) for 0 <= t0, x in (0, 1), via paired
/// digamma differences; empty ranges return 0.
double alternating_reciprocal_sum(std::int64_t t0, std::int64_t t1, double x);
}

}  // namespace cesaro
