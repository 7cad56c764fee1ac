#include <doctest.h>

#include <cmath>
#include <set>

#include "cesaro/sequences.hpp"

using namespace cesaro;

TEST_CASE("lacunary construction oracles") {
  const IndexSequence a = make_lacunary(2.0, 1, 5);
  REQUIRE(a.size() == 5);
  CHECK(a.term_i64(1) == 1);
  CHECK(a.term_i64(2) == 2);
  CHECK(a.term_i64(3) == 4);
  CHECK(a.term_i64(4) == 8);
  CHECK(a.term_i64(5) == 16);

  const IndexSequence b = make_lacunary(2.5, 2, 5);
  CHECK(b.term_i64(2) == 5);
  CHECK(b.term_i64(3) == 13);
  CHECK(b.term_i64(4) == 33);
  CHECK(b.term_i64(5) == 83);

  CHECK_THROWS(make_lacunary(1.0, 10, 4));   // ratio must exceed 1
  CHECK_THROWS(make_lacunary(2.0, 0, 4));    // positive start
  CHECK_THROWS(make_lacunary(2.0, 10, 0));   // nonempty
}

TEST_CASE("delta growth construction oracle") {
  const IndexSequence s = make_delta_growth(0.3, 10, 6);
  CHECK(s.term_i64(1) == 10);
  CHECK(s.term_i64(2) == 20);
  CHECK(s.term_i64(3) == 37);
  CHECK(s.term_i64(4) == 64);
  CHECK(s.term_i64(5) == 107);
  CHECK(s.term_i64(6) == 174);
  CHECK_THROWS(make_delta_growth(0.0, 10, 4));
  CHECK_THROWS(make_delta_growth(0.5, 10, 4));
}

TEST_CASE("ceil multiple is exact") {
  CHECK(ceil_multiple(2.5, BigInt(2)) == 5);
  CHECK(ceil_multiple(2.0, BigInt(7)) == 14);  // integral product stays exact
  // huge argument: no double rounding anywhere
  const BigInt big = BigInt(1) << 200;
  CHECK(ceil_multiple(3.0, big) == big * 3);
  CHECK(ceil_multiple(1.5, big) == big + big / 2);
}

TEST_CASE("big terms overflow int64 loudly") {
  const IndexSequence s = make_lacunary(2.0, 3, 80);
  CHECK(s.term(80) == BigInt(3) * (BigInt(1) << 79));
  CHECK_THROWS(s.term_i64(80));
  CHECK_THROWS(s.term(0));   // 1-based
  CHECK_THROWS(s.term(81));
}

TEST_CASE("filter scale and fejer order parameters") {
  const IndexSequence s = make_lacunary(2.0, 10, 8);
  // n_j beta_j = 20 (j+1) log^2(j+1): frozen at j = 1 and j = 3
  CHECK(static_cast<double>(s.term_i64(1)) * beta_param(s, 1) ==
        doctest::Approx(19.218120556728056).epsilon(1e-13));
  CHECK(static_cast<double>(s.term_i64(3)) * beta_param(s, 3) ==
        doctest::Approx(153.74496445382445).epsilon(1e-13));
  // base-two logs scale by 1/ln^2 2
  const double ratio = beta_param(s, 1, LogBase::two) / beta_param(s, 1);
  CHECK(ratio == doctest::Approx(1.0 / (std::log(2.0) * std::log(2.0))));

  CHECK(m_param(s, 1) == 1);
  CHECK(m_param(s, 4) == 8);
  const IndexSequence tiny = make_lacunary(2.0, 3, 4);
  CHECK_THROWS(m_param(tiny, 1));          // floor(3/10) = 0
  CHECK(m_param(tiny, 1, false) == 0);
}

TEST_CASE("log_in_base") {
  CHECK(log_in_base(8.0, LogBase::two) == doctest::Approx(3.0));
  CHECK(log_in_base(std::exp(2.0), LogBase::natural) == doctest::Approx(2.0));
}

TEST_CASE("block coordinates") {
  const BlockCoords bc = block_coords(16, 0.25);
  CHECK(bc.K == 4);
  CHECK(bc.K0 == 2);
  // every flat index lands in exactly one block slot and round-trips
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (std::int64_t i = 1; i <= bc.N; ++i) {
    const auto [j, b] = bc.block_of(i);
    CHECK(j >= 1);
    CHECK(j <= bc.max_j());
    CHECK(b >= 0);
    CHECK(b < bc.K0);
    CHECK(seen.insert({j, b}).second);
    CHECK(bc.flat_index(j, b) == i);
  }
  CHECK(seen.size() == 16);
  CHECK_THROWS(bc.block_of(0));
  CHECK_THROWS(bc.block_of(17));
  CHECK_THROWS(bc.flat_index(1, 2));  // b beyond the block width
  CHECK_THROWS(block_coords(16, 0.5));
}

TEST_CASE("block filter scale uses the block coordinate") {
  const IndexSequence s = make_lacunary(3.0, 10, 20);
  const BlockCoords bc = block_coords(16, 0.3);
  for (std::int64_t i = 1; i <= 16; ++i) {
    const auto [j, b] = bc.block_of(i);
    const double expected = 20.0 * static_cast<double>(j + 1) *
                            std::log(static_cast<double>(j + 1)) *
                            std::log(static_cast<double>(j + 1)) /
                            static_cast<double>(s.term_i64(i));
    CHECK(block_beta_param(s, bc, i) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("within-block growth audit") {
  // lacunary q = 3: within-block ratio is q^{K0} >= 3, passes immediately
  const IndexSequence s = make_lacunary(3.0, 10, 30);
  const LacunarityAudit a = subsequence_lacunarity_audit(s, 0.3, 25);
  CHECK_FALSE(a.below_threshold);
  CHECK(a.k_delta >= 1);
  CHECK(a.min_ratio_at_k >= 2.6);
  // delta growth crosses q^{K0} ~ e only asymptotically: over K0 ~ k^{0.6}
  // steps near index k^2 the ratio is about exp(k^{0.6} k^{-0.6}) from
  // below, so a desk-scale audit stays under the 2.6 bar.
  const IndexSequence d = make_delta_growth(0.3, 10, 120);
  const LacunarityAudit b = subsequence_lacunarity_audit(d, 0.3, 100);
  CHECK(b.below_threshold);
  CHECK_THROWS(subsequence_lacunarity_audit(d, 0.3, 121));  // past the end
}

TEST_CASE("explicit sequences and json round trip") {
  const IndexSequence e = make_explicit({BigInt(4), BigInt(9), BigInt(100)});
  CHECK(e.kind == SequenceKind::explicit_terms);
  CHECK(e.term_i64(2) == 9);
  CHECK_THROWS(make_explicit({BigInt(9), BigInt(4)}));  // must increase

  for (const IndexSequence& s :
       {make_lacunary(2.5, 7, 12), make_delta_growth(0.25, 11, 9), e}) {
    const IndexSequence t = sequence_from_json(to_json(s));
    CHECK(t.kind == s.kind);
    REQUIRE(t.size() == s.size());
    for (std::size_t j = 1; j <= s.size(); ++j) CHECK(t.term(j) == s.term(j));
    CHECK(t.q == s.q);
    CHECK(t.delta == s.delta);
  }
}
