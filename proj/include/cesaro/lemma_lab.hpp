#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cesaro/circle.hpp"
#include "cesaro/corpus.hpp"
#include "cesaro/dyadic.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/reports.hpp"
#include "cesaro/sequences.hpp"

namespace cesaro {

/// Everything the experiment suites need from a run configuration.
struct LabParams {
  int grid_level = 10;
  /// Thresholds are multiples of ||f||_1/(2 pi), all > 1; the decomposition
  /// threshold scales with the function, so one list serves every item.
  std::vector<double> lambda_multipliers{1.3, 2.7, 5.3, 11.1, 23.7, 49.9};
  std::int64_t beta = 9;
  std::int64_t gamma = 7;
  double delta = 0.3;
  std::vector<std::int64_t> n_sweep{4, 8, 16, 32};
  LogBase log_base = LogBase::natural;
  IndexSequence lemma_seq;        // lacunary; feeds the energy checks
  IndexSequence replacement_seq;  // delta growth; feeds the weak-type check
  IndexSequence convergence_seq;  // 2^j; feeds the convergence experiments
  std::uint64_t seed = 1;
  int jobs = 0;  // 0 = hardware concurrency
};

LabParams default_lab_params();

/// The decomposition threshold for a given multiplier (> 1) of the minimal
/// admissible level ||f||_1/(2 pi).
double lambda_for(const PCFunction& f, double multiplier);

// --- hard identities -------------------------------------------------------

/// All decomposition invariants at one (f, lambda): reconstruction,
/// good-part bounds, mean-zero bad parts, selected-average window, family
/// measure and disjointness. Tolerances are pinned here and nowhere else.
std::vector<HardCheck> cz_invariant_checks(const std::string& item,
                                           const PCFunction& f, double lambda);

/// The family is a function of |f| only: it must not move under f -> |f|
/// or under integer phase modulation.
HardCheck cz_family_invariance_check(const std::string& item,
                                     const PCFunction& f, double lambda);

/// |S_l f - S~_l f| <= E_l |f| pointwise (+1e-9), on level-`eval_level`
/// midpoints.
HardCheck check_domination(const std::string& item, const PCFunction& f,
                           std::int64_t l, int eval_level);

/// |S~_l f|^2 <= ||f||_1^2 + |H_l(f e^{-i(l+1).})|^2 + |H_l(f e^{il.})|^2.
HardCheck check_modified_partial_bound(const std::string& item,
                                       const PCFunction& f, std::int64_t l,
                                       int eval_level);

/// E_l applied to the bad-part sum vanishes outside the gamma-dilated
/// family, exactly up to summation rounding (<= 1e-10).
HardCheck check_e_vanishing(const std::string& item, const PCFunction& f,
                            double lambda, std::int64_t gamma, std::int64_t l,
                            int grid_level);

// --- composite addends and orthogonality -----------------------------------

/// The N weighted addends (S_{n_j}f - V_{n_j}f) sigma_{m_j}(1 on the
/// complement of beta F_t) as trigonometric polynomials, where the filter
/// threshold t is the plain beta_j when `block` is empty and the
/// block-reindexed beta'_j otherwise. Coefficient materialization: requires
/// 2 n_N - 1 + m_N within the polynomial order cap.
std::vector<TrigPoly> composite_addend_polys(const PCFunction& f,
                                             const IndexSequence& seq,
                                             std::int64_t N, std::int64_t beta,
                                             double lambda, LogBase log_base,
                                             const std::optional<BlockCoords>& block);

struct OrthoEqualityResult {
  std::int64_t N = 0;
  double defect = 0.0;         // relative | ||sum||^2 - sum ||.||^2 |
  bool windows_exact = false;  // every coefficient inside the per-j window
  bool disjoint = false;       // pairwise disjoint addend supports
};

/// Orthogonality of the composite addends (plain beta_j masks). Requires a
/// lacunary sequence with ratio q > 2.5 and n_1 >= 10.
OrthoEqualityResult check_orthogonality_equality(const PCFunction& f,
                                                 const IndexSequence& seq,
                                                 std::int64_t N,
                                                 std::int64_t beta,
                                                 double lambda,
                                                 LogBase log_base);

/// ||sum of addends||_2^2 against N ln^5(N+1) ||f||_1 lambda, one report per
/// N in n_values (each must be coefficient-materializable).
std::vector<BoundRatioReport> check_orthogonality_bound(
    const std::string& item, const PCFunction& f, const IndexSequence& seq,
    const std::vector<std::int64_t>& n_values, std::int64_t beta,
    double lambda, LogBase log_base);

// --- measured energy inequalities ------------------------------------------

/// Masked Hilbert energy on the dilated filtered family, worst case over the
/// dyadic scale sweep eps = 2 pi/2^s, s = 1..grid_level. Hypotheses:
/// beta > gamma > 5 odd, n <= 100 m.
BoundRatioReport check_hilbert_energy_filtered(const std::string& item,
                                               const PCFunction& f,
                                               double lambda,
                                               std::int64_t gamma,
                                               std::int64_t beta,
                                               std::int64_t n, std::int64_t m,
                                               int grid_level);

/// Same with the partial sum S_l, l <= 100 m.
BoundRatioReport check_partial_energy_filtered(const std::string& item,
                                               const PCFunction& f,
                                               double lambda,
                                               std::int64_t gamma,
                                               std::int64_t beta,
                                               std::int64_t l, std::int64_t m,
                                               int grid_level);

enum class EnergyKind { hilbert, partial, sv };

/// Summed energies over gamma F minus gamma F_{beta_j} against
/// N ln^5(N+1) ||f||_1 lambda. The hilbert variant runs on the companions
/// g_j = f e^{-i(l_j+1)x} with l_j = 2 n_j - 1; the partial variant on
/// S_{l_j} f; the sv variant on S_{n_j}f - V_{n_j}f.
BoundRatioReport check_energy_residual(const std::string& item,
                                       const PCFunction& f, double lambda,
                                       std::int64_t gamma,
                                       const IndexSequence& seq,
                                       std::int64_t N, EnergyKind kind,
                                       int grid_level, LogBase log_base);

/// Side audit of the residual supports: pairs (j, j+k) with k >= ceil(ln^2 N)
/// whose difference sets still intersect, reported as a fraction.
BoundRatioReport residual_disjointness_report(const std::string& item,
                                              const PCFunction& f,
                                              double lambda,
                                              std::int64_t gamma,
                                              const IndexSequence& seq,
                                              std::int64_t N, int grid_level,
                                              LogBase log_base);

/// Single-order energy over the complement of gamma F against ||f||_1 lambda.
BoundRatioReport check_energy_complement(const std::string& item,
                                         const PCFunction& f, double lambda,
                                         std::int64_t gamma, EnergyKind kind,
                                         std::int64_t order, int grid_level);

/// Summed masked sv energies against N ln^5(N+1) ||f||_1 lambda, either over
/// the gamma-dilated family (beta > gamma > 5) or over the whole circle
/// (gamma ignored; beta > 7).
BoundRatioReport check_sv_energy_weighted(const std::string& item,
                                          const PCFunction& f, double lambda,
                                          std::int64_t beta,
                                          const IndexSequence& seq,
                                          std::int64_t N, int grid_level,
                                          LogBase log_base, bool over_gammaF,
                                          std::int64_t gamma);

/// All seven bounded-ratio families for one corpus item at one grid level,
/// across the lambda multipliers and the N sweep, with the expensive grids
/// computed once and shared. This is what the stability gates compare
/// between grid levels.
std::vector<BoundRatioReport> bounded_ratio_battery(const std::string& item,
                                                    const PCFunction& f,
                                                    const LabParams& params,
                                                    int grid_level);

// --- weak type and convergence ---------------------------------------------

/// Measures of {sup_{N<=N_max} |T_{N,beta}f - T_N f| > lambda/2} over the
/// lambda sweep, against sqrt(||f||_1/lambda)/(1-2 delta).
WeakTypeCurve check_replacement(const std::string& item, const PCFunction& f,
                                const IndexSequence& seq, std::int64_t n_max,
                                std::int64_t beta, double delta,
                                LogBase log_base,
                                const std::vector<double>& lambda_multipliers,
                                int grid_level);

enum class AverageMode { full_average, sv_average, vp };

/// Error curves along N in n_list: full_average compares (1/N) sum S_{n_j}f
/// with f, sv_average records the size of T_N f, vp compares V_{n_N}f with f.
ErrorCurve convergence_curve(const std::string& item, const PCFunction& f,
                             const IndexSequence& seq,
                             const std::vector<std::int64_t>& n_list,
                             AverageMode mode, int grid_level,
                             double threshold);

/// For band-limited input of degree < n_1 every sv addend must vanish with
/// no arithmetic at all; checks all N <= count(seq).
HardCheck check_sv_bandlimited_vanishes(const TrigPoly& p,
                                        const IndexSequence& seq);

// --- randomized set combinatorics ------------------------------------------

/// Pairwise disjoint dyadic family drawn from the seeded stream; levels in
/// [1, max_level].
IntervalFamily random_family(std::uint64_t& state, int max_level);

// --- suites ------------------------------------------------------------------

SuiteResult run_kernels_suite(const LabParams& p);
SuiteResult run_cz_suite(const Corpus& corpus, const LabParams& p);
SuiteResult run_sets_suite(const LabParams& p);
SuiteResult run_hilbert_suite(const Corpus& corpus, const LabParams& p);
SuiteResult run_lemmas34_suite(const Corpus& corpus, const LabParams& p);
SuiteResult run_lemmas5_suite(const Corpus& corpus, const LabParams& p);
SuiteResult run_orthogonality_suite(const Corpus& corpus, const LabParams& p);
SuiteResult run_replacement_suite(const Corpus& corpus, const LabParams& p);
SuiteResult run_convergence_suite(const Corpus& corpus, const LabParams& p);

}  // namespace cesaro
