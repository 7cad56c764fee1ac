#pragma once

#include <cstdint>
#include <vector>

#include "cesaro/circle.hpp"
#include "cesaro/dyadic.hpp"
#include "cesaro/sequences.hpp"
#include "cesaro/spectral.hpp"

namespace cesaro {

/// |n| = floor(log2 n); the level of the dyadic interval excised around the
/// evaluation point by the integral operators below.
std::int64_t exclusion_level(std::int64_t n);

// Band-limiting operators, coefficient side. The scalar and TrigPoly forms
// materialize the coefficient window and are capped at order 2^20; the grid
// forms on SpectralTable have no such cap.
TrigPoly partial_sum_poly(const PCFunction& f, std::int64_t n);
TrigPoly fejer_poly(const PCFunction& f, std::int64_t n);
TrigPoly vp_poly(const PCFunction& f, std::int64_t n);
TrigPoly sv_poly(const PCFunction& f, std::int64_t n);
/// Reweights p's coefficients: w(k) = w0 at k = 0, a + b|k| on each band,
/// zero elsewhere.
TrigPoly apply_bands(const TrigPoly& p, const std::vector<WeightBand>& bands,
                     double w0);

Complex partial_sum(const PCFunction& f, std::int64_t n, double y);
Complex fejer_mean(const PCFunction& f, std::int64_t n, double y);
Complex vp_mean(const PCFunction& f, std::int64_t n, double y);
Complex sv_difference(const PCFunction& f, std::int64_t n, double y);

Complex partial_sum(const TrigPoly& p, std::int64_t n, double y);
TrigPoly vp_mean(const TrigPoly& p, std::int64_t n);

/// H_n f(y): integral of f(x) cot((y-x)/2) over T minus the tripled dyadic
/// interval 3I_{|n|}(y). Cellwise antiderivative, so the only rounding is in
/// the logs. Evaluation points must sit on a dyadic midpoint grid (level 30
/// snap) so this endpoint geometry is exact even when |n| is far below the
/// double-precision cell width; see geometry notes in operators.cpp.
Complex hilbert_modified(const PCFunction& f, std::int64_t n, double y);

/// (1/pi) int_{T minus 3I_{|n_exclusion|}(y)} f(x) D_l(y-x) dx, computed as
/// S_l f(y) minus the coefficient sum of f restricted to the excised arc.
/// l capped at 2^20.
Complex modified_partial_sum(const PCFunction& f, std::int64_t l,
                             std::int64_t n_exclusion, double y);

/// l times the exact integral of f over 3I_{|n_exclusion|}(y).
Complex e_operator(const PCFunction& f, std::int64_t l,
                   std::int64_t n_exclusion, double y);

CVector hilbert_grid(const PCFunction& f, std::int64_t n, int eval_level);
CVector e_operator_grid(const PCFunction& f, std::int64_t l,
                        std::int64_t n_exclusion, int eval_level);

/// Parameters of the composite averages: the index sequence, how many terms
/// to average, the dilation width of the masked sets, and the growth
/// exponent driving the block reindexing.
struct CompositeSpec {
  IndexSequence seq;
  std::int64_t N = 1;
  std::int64_t beta = 9;
  double delta = 0.3;
  LogBase log_base = LogBase::natural;
};

void validate(const CompositeSpec& spec);

/// T_N f = (1/N) sum_{i<=N} (S_{n_i} f - V_{n_i} f).
Complex t_operator(const PCFunction& f, const IndexSequence& seq,
                   std::int64_t N, double y);
CVector t_operator_grid(const SpectralTable& table, const IndexSequence& seq,
                        std::int64_t N);

/// sigma_m of the indicator of the complement of the beta-dilated union of
/// fam, on the eval_level midpoint grid. Empty families give exactly 1.
CVector sigma_complement_grid(const IntervalFamily& fam,
                              std::int64_t beta_dilation, std::int64_t m,
                              int eval_level);

/// T_{N,beta} f: each difference S_{n_i} f - V_{n_i} f is multiplied by the
/// Fejer mean sigma_{m_i} of the indicator of the complement of
/// beta F_{beta'_i}, with m_i = floor(n_i/10), F the CZ family of f at
/// lambda, and beta'_i the block-indexed filter scale.
Complex t_beta_operator(const PCFunction& f, const CompositeSpec& spec,
                        double lambda, double y);

/// All N composite addends on the midpoint grid (index i-1 holds addend i);
/// callers form prefix averages for the N sweep. Masks are cached per
/// filtered family, and an empty filtered family short-circuits to the bare
/// difference (the mask is exactly 1 there).
std::vector<CVector> t_beta_addends_grid(const PCFunction& f,
                                         const CompositeSpec& spec,
                                         double lambda, int eval_level);

/// The bare differences S_{n_i} f - V_{n_i} f on the grid for i = 1..N.
std::vector<CVector> sv_terms_grid(const SpectralTable& table,
                                   const IndexSequence& seq, std::int64_t N);

namespace detail {
/// Position of y on the level-30 dyadic unit grid of [-pi, pi); throws when
/// y is not within 1e-12 of such a unit (all midpoint grids up to level 29
/// land on it exactly).
std::int64_t grid_units30(double y);
}

}  // namespace cesaro
