#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cesaro {

using BigInt = boost::multiprecision::cpp_int;

enum class LogBase { natural, two };

/// log(x) in the configured base; the growth-rate formulas below default to
/// the natural log (base two also satisfies every inequality they feed).
double log_in_base(double x, LogBase base);

enum class SequenceKind { lacunary, delta_growth, explicit_terms };

/// Strictly increasing positive integer sequence (n_j), 1-based access.
/// Terms are arbitrary-precision: delta growth at delta = 0.4 over a few
/// hundred terms already overflows 64 bits.
struct IndexSequence {
  SequenceKind kind = SequenceKind::explicit_terms;
  double q = 0.0;      // lacunary ratio, when kind == lacunary
  double delta = 0.0;  // growth exponent, when kind == delta_growth
  std::vector<BigInt> terms;

  std::size_t size() const { return terms.size(); }
  const BigInt& term(std::size_t j) const;  // j in [1, size]
  /// term(j) as int64; throws when the term does not fit.
  std::int64_t term_i64(std::size_t j) const;
};

/// Exact ceiling of q * n: q is decomposed exactly as mant * 2^(-t) via
/// frexp, so the only rounding is the one already inside the double q.
BigInt ceil_multiple(double q, const BigInt& n);

/// n_{j+1} = ceil(q n_j); rejects q <= 1.
IndexSequence make_lacunary(double q, std::int64_t n1, std::int64_t count);

/// n_{j+1} = ceil((1 + j^(-delta)) n_j); rejects delta outside (0, 1/2).
IndexSequence make_delta_growth(double delta, std::int64_t n1,
                                std::int64_t count);

IndexSequence make_explicit(std::vector<BigInt> terms);

/// beta_j = 20 (j+1) log^2(j+1) / n_j. The product n_j beta_j exceeds 16
/// from j = 1 on in either log base.
double beta_param(const IndexSequence& seq, std::size_t j,
                  LogBase base = LogBase::natural);

/// m_j = floor(n_j / 10); rejects 0 unless require_positive is cleared
/// (downstream Fejer means need m_j >= 1).
BigInt m_param(const IndexSequence& seq, std::size_t j,
               bool require_positive = true);

/// Block reindexing of 1..N: K = floor(sqrt(N)), K0 = floor(K^(2 delta)),
/// i = (j-1) K0 + b with 0 <= b < K0 and j >= 1.
struct BlockCoords {
  std::int64_t N = 0;
  std::int64_t K = 0;
  std::int64_t K0 = 0;
  double delta = 0.0;

  std::int64_t flat_index(std::int64_t j, std::int64_t b) const;
  std::pair<std::int64_t, std::int64_t> block_of(std::int64_t i) const;  // (j, b)
  std::int64_t max_j() const;  // largest j with a valid flat index <= N
};

BlockCoords block_coords(std::int64_t N, double delta);

/// Block-indexed filter scale beta'_{j,b} = 20 (j+1) log^2(j+1) / n_i with
/// i = (j-1) K0 + b; the log argument uses the block coordinate j.
double block_beta_param(const IndexSequence& seq, const BlockCoords& bc,
                        std::int64_t i, LogBase base = LogBase::natural);

/// Within-block ratio audit: for b < K0 the subsequence n'_{j,b} = n_{(j-1)K0+b}
/// must grow by a factor >= 2.6 per block step once K is large enough; the
/// report carries the smallest such K found by direct scan.
struct LacunarityAudit {
  std::int64_t N = 0;
  std::int64_t K = 0;
  std::int64_t K0 = 0;
  bool below_threshold = false;  // N too small to certify any K
  std::int64_t k_delta = 0;      // minimal K from which all ratios pass
  double min_ratio_at_k = 0.0;   // worst within-block ratio at K = k_delta
};

LacunarityAudit subsequence_lacunarity_audit(const IndexSequence& seq,
                                             double delta, std::int64_t N);

std::string to_json(const IndexSequence& seq);
IndexSequence sequence_from_json(const std::string& text);

}  // namespace cesaro
