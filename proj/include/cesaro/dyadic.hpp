#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/circle.hpp"

namespace cesaro {

/// Half-open dyadic interval [-pi + 2 pi k / 2^n, -pi + 2 pi (k+1) / 2^n).
/// Two dyadic intervals are always either disjoint or nested.
struct DyadicInterval {
  int level = 0;            // n >= 0; level 0 is the whole circle
  std::int64_t index = 0;   // k in [0, 2^n)

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

double measure(const DyadicInterval& iv);
double left_endpoint(const DyadicInterval& iv);
/// True when inner is contained in outer (inner.level >= outer.level).
bool interval_contains(const DyadicInterval& outer, const DyadicInterval& inner);
DyadicInterval parent(const DyadicInterval& iv);

/// The unique level-n dyadic interval containing y in [-pi, pi).
DyadicInterval containing_interval(double y, int n);

/// I + |I| * i, index arithmetic modulo the circle.
DyadicInterval neighbor(const DyadicInterval& iv, std::int64_t i);

/// Union of the gamma neighbors i = -(gamma-1)/2 .. (gamma-1)/2 as a grid
/// mask at the interval's level (at least level 1); saturates to the full
/// circle once gamma |I| >= 2 pi.
GridSet dilate(const DyadicInterval& iv, std::int64_t gamma);

/// Pairwise disjoint collection of dyadic intervals (the CZ family F and its
/// filtered versions).
struct IntervalFamily {
  std::vector<DyadicInterval> intervals;

  bool empty() const { return intervals.empty(); }
  std::size_t size() const { return intervals.size(); }
  /// Deepest level present, or `fallback` for an empty family.
  int finest_level(int fallback = 1) const;
  double total_measure() const;
};

/// Union of gamma-dilations of all family members; the mask level is the
/// finest family level but never below min_level (pass the evaluation grid
/// level so endpoints align with evaluation cells).
GridSet dilated_union(const IntervalFamily& fam, std::int64_t gamma,
                      int min_level = 1);

/// Sum over ordered pairs (I, J), diagonal included, of |gamma I ∩ gamma J|.
/// The value is independent of the mask level; min_level exposes that for
/// refinement-invariance checks.
double overlap_sum(const IntervalFamily& fam, std::int64_t gamma,
                   int min_level = 0);

/// Keeps intervals whose copies shifted by `shift` times their own length
/// are not strictly contained in any other member's shifted copy. The
/// shifted copies of the result are pairwise disjoint.
IntervalFamily maximal_selection(const IntervalFamily& fam, std::int64_t shift);

/// Calderon-Zygmund decomposition of f at level lambda: f = good + sum of
/// bad parts, each bad part supported on one selected maximal interval and
/// mean zero there.
struct CZDecomposition {
  double lambda = 0.0;
  PCFunction good;
  std::vector<std::pair<DyadicInterval, PCFunction>> bad;
  IntervalFamily family;

  double measure_family() const { return family.total_measure(); }
};

/// Stopping-time construction: walk the dyadic tree from the two halves of T
/// and select maximal intervals with average |f| above lambda; recursion
/// floors at f's grid level where cell averages equal cell values.
/// Requires lambda > ||f||_1 / (2 pi) strictly (the root must stay
/// unselectable) and f not identically zero.
CZDecomposition cz_decompose(const PCFunction& f, double lambda);

/// Sum of the bad parts (written f^0 elsewhere in this code base).
PCFunction bad_sum(const CZDecomposition& d);

/// Subfamily of intervals longer than beta; beta = 0 returns the full family.
IntervalFamily filter_beta(const CZDecomposition& d, double beta);
IntervalFamily filter_beta(const IntervalFamily& fam, double beta);

std::string to_json(const CZDecomposition& d);

}  // namespace cesaro
