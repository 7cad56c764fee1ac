// Acceptance gates for the experiment library: one timed pass/fail line per
// gate, exit code = number of failed gates. Budgets are part of each gate;
// tolerances are restated here so a regression in a suite default cannot
// silently weaken them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cesaro/circle.hpp"
#include "cesaro/corpus.hpp"
#include "cesaro/kernels.hpp"
#include "cesaro/lemma_lab.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/sequences.hpp"

using namespace cesaro;

namespace {

int g_failures = 0;

double gate(int number, const char* name, double budget_s,
            bool (*fn)(std::string&)) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = fn(note);
  } catch (const std::exception& e) {
    ok = false;
    note = std::string("exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const bool in_budget = dt < budget_s;
  const bool pass = ok && in_budget;
  if (!pass) ++g_failures;
  std::printf("%s %2d %-22s (%.1fs of %.0fs)%s%s%s\n", pass ? "PASS" : "FAIL",
              number, name, dt, budget_s, in_budget ? "" : " OVER BUDGET",
              note.empty() ? "" : "  ", note.c_str());
  std::fflush(stdout);
  return dt;
}

const Corpus& corpus() {
  static Corpus c = default_corpus(1);
  return c;
}

const LabParams& params() {
  static LabParams p = default_lab_params();
  return p;
}

// 1: Fejer kernels on 1024 midpoints for n <= 64: Cesaro identity to 1e-10,
// nonnegative to -1e-12, and below pi^2/(2(n+1)u^2) to 1e-9 relative.
bool gate_kernels(std::string& note) {
  const int points = 1024;
  std::vector<double> mid(points), dsum(points, 0.0);
  for (int i = 0; i < points; ++i)
    mid[i] = -kPi + kTwoPi * (static_cast<double>(i) + 0.5) /
                        static_cast<double>(points);
  double worst_id = 0.0, min_val = 0.0, worst_ub = 0.0;
  for (std::int64_t n = 0; n <= 64; ++n) {
    for (int i = 0; i < points; ++i) {
      dsum[i] += dirichlet_kernel(n, mid[i]).real();
      const double k = fejer_kernel(n, mid[i]);
      worst_id = std::max(worst_id,
                          std::abs(k - dsum[i] / static_cast<double>(n + 1)));
      min_val = std::min(min_val, k);
      const double u = mid[i];
      worst_ub = std::max(
          worst_ub, k * 2.0 * static_cast<double>(n + 1) * u * u / (kPi * kPi));
    }
  }
  note = "identity " + format_double(worst_id) + ", min " +
         format_double(min_val) + ", bound ratio " + format_double(worst_ub);
  return worst_id <= 1e-10 && min_val >= -1e-12 && worst_ub <= 1.0 + 1e-9;
}

// 2: every decomposition invariant on 24 items x 6 thresholds, plus family
// invariance under |f| and modulation.
bool gate_cz(std::string& note) {
  const SuiteResult r = run_cz_suite(corpus(), params());
  int failed = 0;
  for (const auto& h : r.hard)
    if (!h.pass) ++failed;
  note = std::to_string(r.hard.size()) + " hard checks, " +
         std::to_string(failed) + " failed";
  return r.ok();
}

// 3: overlap sums of dilated random families against gamma(2 gamma - 1),
// gamma in {7,9,11}, with grid-level invariance of the recorded ratio.
bool gate_overlap(std::string& note) {
  const SuiteResult r = run_sets_suite(params());
  double worst = 0.0;
  for (const auto& row : r.ratios) worst = std::max(worst, row.ratio);
  note = "worst overlap ratio " + format_double(worst);
  return r.ok();
}

// 4: |S_l f - S~_l f| <= E_l|f| + 1e-9 on 64 midpoints, first 20 items,
// l in {8, 32, 128}.
bool gate_domination(std::string& note) {
  const Corpus& c = corpus();
  double worst = 0.0;
  for (std::size_t i = 0; i < 20 && i < c.size(); ++i) {
    for (std::int64_t l : {8, 32, 128}) {
      const HardCheck h = check_domination(c[i].name, c[i].f, l, 6);
      worst = std::max(worst, h.worst);
      if (!h.pass) {
        note = c[i].name + " l=" + std::to_string(l) + " margin " +
               format_double(h.worst);
        return false;
      }
    }
  }
  note = "worst margin " + format_double(worst);
  return true;
}

std::int64_t feasible_length(const IndexSequence& seq) {
  std::int64_t j_max = 0;
  for (std::int64_t j = 1; j <= 16 && j <= static_cast<std::int64_t>(seq.size());
       ++j) {
    if (seq.term_i64(j) > (std::int64_t{1} << 16)) break;
    j_max = j;
  }
  return j_max;
}

// 5: orthogonality equality of the composite addends for q in {2.6, 3, 4},
// the longest N <= 16 with n_N <= 2^16, beta = 9, on the whole corpus:
// relative defect <= 1e-8 and pairwise-disjoint Fourier supports.
bool gate_orthogonality(std::string& note) {
  double worst_defect = 0.0;
  for (double q : {2.6, 3.0, 4.0}) {
    const IndexSequence seq = make_lacunary(q, 10, 20);
    const std::int64_t N = feasible_length(seq);
    if (N < 2) {
      note = "sequence too short at q=" + format_double(q);
      return false;
    }
    for (const auto& it : corpus()) {
      const auto r = check_orthogonality_equality(
          it.f, seq, N, 9, lambda_for(it.f, 5.3), LogBase::natural);
      worst_defect = std::max(worst_defect, r.defect);
      if (r.defect > 1e-8 || !r.windows_exact || !r.disjoint) {
        note = it.name + " q=" + format_double(q) +
               " defect=" + format_double(r.defect) +
               (r.disjoint ? "" : " supports overlap");
        return false;
      }
    }
  }
  note = "worst defect " + format_double(worst_defect);
  return true;
}

// 6: every block-masked addend's Fourier support sits inside
// [ceil(0.9 n_j), floor(2.1 n_j)] union its mirror, as an exact integer
// check. Runs on the q = 3 sequence across the corpus (bundled with 5).
bool gate_windows(std::string& note) {
  const IndexSequence seq = make_lacunary(3.0, 10, 20);
  const std::int64_t N = feasible_length(seq);
  const BlockCoords bc = block_coords(N, params().delta);
  std::int64_t checked = 0;
  for (const auto& it : corpus()) {
    const auto polys = composite_addend_polys(
        it.f, seq, N, 9, lambda_for(it.f, 5.3), LogBase::natural, bc);
    for (std::size_t j = 0; j < polys.size(); ++j) {
      const std::int64_t n = seq.term_i64(static_cast<std::int64_t>(j) + 1);
      const std::int64_t klo = (9 * n + 9) / 10;
      const std::int64_t khi = (21 * n) / 10;
      for (std::int64_t k = -polys[j].degree(); k <= polys[j].degree(); ++k) {
        if (polys[j].coeff(k) == Complex{0.0, 0.0}) continue;
        const std::int64_t a = k < 0 ? -k : k;
        if (a < klo || a > khi) {
          note = it.name + " addend " + std::to_string(j + 1) +
                 " leaks to frequency " + std::to_string(k);
          return false;
        }
      }
      ++checked;
    }
  }
  note = std::to_string(checked) + " addends windowed";
  return true;
}

// 7: for each of the seven measured energy families, the max corpus ratio
// moves by at most 2x between grid levels 9 and 10, and the per-N maxima
// never strictly increase across the whole sweep {4, 8, 16, 32}.
bool gate_stability(std::string& note) {
  std::map<std::string, double> max9, max10;
  std::map<std::string, std::map<std::int64_t, double>> per_n9, per_n10;
  for (int g : {9, 10}) {
    auto& mx = g == 9 ? max9 : max10;
    auto& pn = g == 9 ? per_n9 : per_n10;
    for (const auto& it : corpus()) {
      for (const auto& row : bounded_ratio_battery(it.name, it.f, params(), g)) {
        mx[row.check_id] = std::max(mx[row.check_id], row.ratio);
        for (const auto& [k, v] : row.params) {
          if (k != "N") continue;
          const std::int64_t n_len = std::stoll(v);
          auto& slot = pn[row.check_id][n_len];
          slot = std::max(slot, row.ratio);
        }
      }
    }
  }
  if (max9.size() != 7 || max10.size() != 7) {
    note = "expected 7 ratio families, saw " + std::to_string(max9.size());
    return false;
  }
  double worst_drift = 0.0;
  for (const auto& [id, m10] : max10) {
    const double m9 = max9[id];
    if (m9 <= 0.0 && m10 <= 0.0) continue;
    const double drift = m9 > m10 ? m9 / m10 : m10 / m9;
    worst_drift = std::max(worst_drift, drift);
    if (!(drift <= 2.0)) {
      note = id + " drifts " + format_double(drift) + "x between levels";
      return false;
    }
    for (const auto* pn : {&per_n9, &per_n10}) {
      const auto& curve = pn->at(id);
      bool strictly_up = curve.size() >= 2;
      double prev = -1.0;
      for (const auto& [n_len, v] : curve) {
        if (prev >= 0.0 && v <= prev) strictly_up = false;
        prev = v;
      }
      if (strictly_up) {
        note = id + " grows monotonically along the length sweep";
        return false;
      }
    }
  }
  note = "worst level drift " + format_double(worst_drift) + "x";
  return true;
}

// 8: replacement weak-type curves with delta = 0.3, beta = 9, N_max = 64:
// measures monotone non-increasing in lambda, a single fitted c per grid
// level bounding measure <= c sqrt(||f||_1/lambda), and c stable to 2x
// between levels 9 and 10.
bool gate_replacement(std::string& note) {
  const IndexSequence& seq = params().replacement_seq;
  const std::int64_t n_max =
      std::min<std::int64_t>(64, static_cast<std::int64_t>(seq.size()));
  double fitted[2] = {0.0, 0.0};
  for (int gi = 0; gi < 2; ++gi) {
    const int g = gi == 0 ? 9 : 10;
    for (const auto& it : corpus()) {
      const WeakTypeCurve c =
          check_replacement(it.name, it.f, seq, n_max, 9, 0.3,
                            LogBase::natural, params().lambda_multipliers, g);
      const double l1 = lp_norm(it.f, Lp::one);
      for (std::size_t i = 0; i < c.measures.size(); ++i) {
        if (i > 0 && c.measures[i] > c.measures[i - 1] + 1e-12) {
          note = it.name + " measures rise with the threshold at level " +
                 std::to_string(g);
          return false;
        }
        fitted[gi] = std::max(
            fitted[gi], c.measures[i] * std::sqrt(c.lambdas[i] / l1));
      }
    }
  }
  if (fitted[0] <= 1e-12 && fitted[1] <= 1e-12) {
    note = "curves identically zero";
    return true;
  }
  const double drift = fitted[0] > fitted[1] ? fitted[0] / fitted[1]
                                             : fitted[1] / fitted[0];
  note = "c(9)=" + format_double(fitted[0]) + " c(10)=" +
         format_double(fitted[1]);
  return drift <= 2.0;
}

// 9: averaged partial sums of the half-circle indicator along n_j = 2^j:
// the measure of {error > 0.1} strictly decreases from N = 4 to N = 32 with
// at most one inversion; band-limited input below n_1 yields exactly zero.
bool gate_convergence(std::string& note) {
  const PCFunction& f = find_item(corpus(), "ind_half").f;
  const IndexSequence seq = make_lacunary(2.0, 2, 32);
  const ErrorCurve curve =
      convergence_curve("ind_half", f, seq, {4, 8, 16, 32},
                        AverageMode::full_average, 10, 0.1);
  int inversions = 0;
  for (std::size_t i = 1; i < curve.exceed_measure.size(); ++i)
    if (curve.exceed_measure[i] >= curve.exceed_measure[i - 1]) ++inversions;
  const HardCheck zero =
      check_sv_bandlimited_vanishes(partial_sum_poly(f, seq.term_i64(1) - 1),
                                    seq);
  note = "exceed";
  for (double m : curve.exceed_measure) note += " " + format_double(m);
  note += zero.pass ? "; band-limited exact" : "; band-limited NONZERO";
  return inversions <= 1 && zero.pass && zero.worst == 0.0;
}

// 10: E_l of the bad-part sum vanishes off the dilated family to 1e-10,
// every item x every threshold x l in {8, 64, 512}.
bool gate_e_vanishing(std::string& note) {
  double worst = 0.0;
  for (const auto& it : corpus()) {
    for (double mult : params().lambda_multipliers) {
      const double lam = lambda_for(it.f, mult);
      for (std::int64_t l : {8, 64, 512}) {
        const HardCheck h = check_e_vanishing(it.name, it.f, lam,
                                              params().gamma, l,
                                              params().grid_level);
        worst = std::max(worst, h.worst);
        if (!h.pass) {
          note = it.name + " mult=" + format_double(mult) +
                 " l=" + std::to_string(l) + " residue " +
                 format_double(h.worst);
          return false;
        }
      }
    }
  }
  note = "worst residue " + format_double(worst);
  return true;
}

}  // namespace

int main() {
  gate(1, "kernel identities", 10.0, gate_kernels);
  gate(2, "decomposition suite", 30.0, gate_cz);
  gate(3, "overlap combinatorics", 30.0, gate_overlap);
  gate(4, "domination", 60.0, gate_domination);
  // 5 and 6 share one 120 s budget: the window check reuses the addend
  // machinery the equality check exercises.
  const double t5 = gate(5, "orthogonality", 120.0, gate_orthogonality);
  gate(6, "spectral windows", std::max(1.0, 120.0 - t5), gate_windows);
  gate(7, "ratio stability", 600.0, gate_stability);
  gate(8, "replacement weak type", 300.0, gate_replacement);
  gate(9, "convergence", 120.0, gate_convergence);
  gate(10, "vanishing identity", 60.0, gate_e_vanishing);
  std::printf("%d/10 gates passed\n", 10 - g_failures);
  return g_failures;
}
