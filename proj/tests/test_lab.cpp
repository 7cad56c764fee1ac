#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "cesaro/circle.hpp"
#include "cesaro/corpus.hpp"
#include "cesaro/lemma_lab.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/sequences.hpp"

using namespace cesaro;

namespace {

const Corpus& corpus() {
  static Corpus c = default_corpus(1);
  return c;
}

const PCFunction& item(const std::string& name) {
  return find_item(corpus(), name).f;
}

bool all_pass(const std::vector<HardCheck>& hs) {
  return std::all_of(hs.begin(), hs.end(),
                     [](const HardCheck& h) { return h.pass; });
}

}  // namespace

TEST_CASE("decomposition threshold is a multiple of the mean modulus") {
  const PCFunction& f = item("ind_half");
  const double l1 = lp_norm(f, Lp::one);
  CHECK(lambda_for(f, 2.0) ==
        doctest::Approx(2.0 * l1 / kTwoPi).epsilon(1e-14));
  CHECK(lambda_for(f, 49.9) ==
        doctest::Approx(49.9 * l1 / kTwoPi).epsilon(1e-14));
  CHECK_THROWS(lambda_for(f, 1.0));
  CHECK_THROWS(lambda_for(f, 0.2));
}

TEST_CASE("decomposition invariants hold on corpus items") {
  for (const char* name : {"ind_half", "step_quarters", "rnd_sign_1"}) {
    const PCFunction& f = item(name);
    for (double mult : {1.3, 5.3, 49.9}) {
      const double lam = lambda_for(f, mult);
      const auto checks = cz_invariant_checks(name, f, lam);
      CHECK(checks.size() >= 6);
      CHECK(all_pass(checks));
      CHECK(cz_family_invariance_check(name, f, lam).pass);
    }
  }
}

TEST_CASE("modified partial sums stay within the excision envelope") {
  const PCFunction& f = item("step_quarters");
  for (std::int64_t l : {8, 64}) {
    CHECK(check_domination("step_quarters", f, l, 6).pass);
  }
  CHECK(check_modified_partial_bound("step_quarters", f, 8, 6).pass);
}

TEST_CASE("E applied to the bad sum dies off the dilated family") {
  const PCFunction& f = item("ind_half");
  const HardCheck h =
      check_e_vanishing("ind_half", f, lambda_for(f, 2.7), 7, 8, 9);
  CHECK(h.pass);
  CHECK(h.worst <= 1e-10);
}

TEST_CASE("composite addends materialize within the order cap") {
  const PCFunction& f = item("ind_half");
  const IndexSequence seq = make_lacunary(3.0, 10, 32);
  const double lam = lambda_for(f, 1.3);

  const auto plain =
      composite_addend_polys(f, seq, 4, 9, lam, LogBase::natural, std::nullopt);
  CHECK(plain.size() == 4);
  for (std::size_t j = 0; j < plain.size(); ++j) {
    const std::int64_t n = seq.term_i64(static_cast<std::int64_t>(j) + 1);
    CHECK(plain[j].degree() >= n);  // sv factor reaches past n
  }

  // Block-reindexed masks keep every addend inside its integer window.
  const auto block = composite_addend_polys(f, seq, 4, 9, lam,
                                            LogBase::natural,
                                            block_coords(4, 0.3));
  CHECK(block.size() == 4);
  for (std::size_t j = 0; j < block.size(); ++j) {
    const std::int64_t n = seq.term_i64(static_cast<std::int64_t>(j) + 1);
    const std::int64_t klo = (9 * n + 9) / 10;  // ceil(0.9 n)
    const std::int64_t khi = (21 * n) / 10;     // floor(2.1 n)
    for (std::int64_t k = -block[j].degree(); k <= block[j].degree(); ++k) {
      if (block[j].coeff(k) == Complex{0.0, 0.0}) continue;
      const std::int64_t a = std::abs(k);
      CHECK(a >= klo);
      CHECK(a <= khi);
    }
  }

  CHECK_THROWS(composite_addend_polys(f, seq, 40, 9, lam, LogBase::natural,
                                      std::nullopt));  // beyond the sequence
  CHECK_THROWS(composite_addend_polys(f, seq, 12, 9, lam, LogBase::natural,
                                      std::nullopt));  // order cap
}

TEST_CASE("composite addends are orthogonal for well separated orders") {
  const PCFunction& f = item("ind_half");
  const IndexSequence seq = make_lacunary(3.0, 10, 20);
  const double lam = lambda_for(f, 5.3);
  const auto r =
      check_orthogonality_equality(f, seq, 8, 9, lam, LogBase::natural);
  CHECK(r.N == 8);
  CHECK(r.defect <= 1e-8);
  CHECK(r.windows_exact);
  CHECK(r.disjoint);

  // Ratio 2 packs the windows too tight for the disjointness argument.
  const IndexSequence tight = make_lacunary(2.0, 10, 20);
  CHECK_THROWS(
      check_orthogonality_equality(f, tight, 8, 9, lam, LogBase::natural));
}

TEST_CASE("summed residual energies reject non-lacunary sequences") {
  const PCFunction& f = item("ind_half");
  const IndexSequence growth = make_delta_growth(0.3, 10, 32);
  CHECK_THROWS(check_energy_residual("ind_half", f, lambda_for(f, 2.7), 7,
                                     growth, 4, EnergyKind::sv, 9,
                                     LogBase::natural));
}

TEST_CASE("the ratio battery emits one row per family, threshold and length") {
  LabParams p = default_lab_params();
  p.grid_level = 9;
  const PCFunction& f = item("ind_half");
  const auto rows = bounded_ratio_battery("ind_half", f, p, 9);

  const std::size_t expect =
      7 * p.lambda_multipliers.size() * p.n_sweep.size();
  CHECK(rows.size() == expect);

  std::set<std::string> ids;
  for (const auto& r : rows) {
    ids.insert(r.check_id);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio >= 0.0);
    CHECK(r.rhs > 0.0);
    CHECK(r.corpus_item == "ind_half");
  }
  const std::set<std::string> want{
      "hilbert_energy_filtered",   "partial_energy_filtered",
      "hilbert_energy_residual",   "partial_energy_residual",
      "sv_energy_residual",        "sv_energy_weighted_full",
      "sv_energy_weighted_gammaF"};
  CHECK(ids == want);
}

TEST_CASE("replacement curves shrink as the threshold grows") {
  const PCFunction& f = item("step_quarters");
  const IndexSequence seq = make_delta_growth(0.3, 10, 64);
  const std::vector<double> mults{1.3, 5.3, 23.7};
  const WeakTypeCurve c = check_replacement("step_quarters", f, seq, 16, 9,
                                            0.3, LogBase::natural, mults, 9);
  REQUIRE(c.lambdas.size() == mults.size());
  REQUIRE(c.measures.size() == mults.size());
  REQUIRE(c.bounds.size() == mults.size());
  const double l1 = lp_norm(f, Lp::one);
  for (std::size_t i = 0; i < mults.size(); ++i) {
    CHECK(c.lambdas[i] == doctest::Approx(lambda_for(f, mults[i])));
    CHECK(c.measures[i] >= 0.0);
    CHECK(c.measures[i] <= kTwoPi);
    CHECK(c.bounds[i] ==
          doctest::Approx(std::sqrt(l1 / c.lambdas[i]) / 0.4).epsilon(1e-12));
    if (i > 0) CHECK(c.measures[i] <= c.measures[i - 1] + 1e-15);
  }
}

TEST_CASE("averaged partial sums converge where single sums oscillate") {
  const PCFunction& f = item("ind_half");
  const IndexSequence seq = make_lacunary(2.0, 2, 32);
  const std::vector<std::int64_t> sweep{4, 8, 16, 32};

  const ErrorCurve full = convergence_curve("ind_half", f, seq, sweep,
                                            AverageMode::full_average, 10, 0.1);
  CHECK(full.mode == "full_average");
  REQUIRE(full.n_values.size() == sweep.size());
  CHECK(full.exceed_measure.back() < full.exceed_measure.front());
  for (double v : full.sup_error) CHECK(std::isfinite(v));

  const ErrorCurve vp = convergence_curve("ind_half", f, seq, sweep,
                                          AverageMode::vp, 10, 0.1);
  CHECK(vp.mode == "vp");
  CHECK(vp.l1_error.back() < vp.l1_error.front());

  const ErrorCurve sv = convergence_curve("ind_half", f, seq, sweep,
                                          AverageMode::sv_average, 10, 0.1);
  CHECK(sv.mode == "sv_average");
  for (double v : sv.sup_error) CHECK(v >= 0.0);
}

TEST_CASE("band-limited input below the first order produces nothing") {
  const IndexSequence seq = make_lacunary(2.0, 16, 10);
  const PCFunction& f = item("ind_half");
  const HardCheck h =
      check_sv_bandlimited_vanishes(partial_sum_poly(f, 15), seq);
  CHECK(h.pass);
  CHECK(h.worst == 0.0);
  CHECK_THROWS(check_sv_bandlimited_vanishes(partial_sum_poly(f, 16), seq));
}

TEST_CASE("random families are reproducible and pairwise disjoint") {
  std::uint64_t s1 = 99, s2 = 99;
  const IntervalFamily a = random_family(s1, 8);
  const IntervalFamily b = random_family(s2, 8);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() >= 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.intervals[i] == b.intervals[i]);
    CHECK(a.intervals[i].level >= 1);
    CHECK(a.intervals[i].level <= 8);
  }
  // Disjointness: the union of undilated cells carries the full measure.
  const GridSet u = dilated_union(a, 1, a.finest_level());
  CHECK(measure(u) == doctest::Approx(a.total_measure()).epsilon(1e-12));
  CHECK(s1 == s2);
  CHECK(s1 != 99);  // the stream advanced
}

TEST_CASE("fast suites come back green") {
  LabParams p = default_lab_params();
  const SuiteResult kernels = run_kernels_suite(p);
  CHECK(kernels.suite == "kernels");
  CHECK(!kernels.hard.empty());
  CHECK(kernels.ok());

  const SuiteResult sets = run_sets_suite(p);
  CHECK(sets.suite == "sets");
  CHECK(!sets.hard.empty());
  CHECK(!sets.ratios.empty());
  CHECK(sets.ok());
}
