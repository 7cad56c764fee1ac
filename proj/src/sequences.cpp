#include "cesaro/sequences.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace cesaro {

double log_in_base(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

const BigInt& IndexSequence::term(std::size_t j) const {
  if (j < 1 || j > terms.size())
    throw std::out_of_range("sequence index out of range");
  return terms[j - 1];
}

std::int64_t IndexSequence::term_i64(std::size_t j) const {
  const BigInt& t = term(j);
  if (t > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error("sequence term does not fit in 64 bits");
  return t.convert_to<std::int64_t>();
}

BigInt ceil_multiple(double q, const BigInt& n) {
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::invalid_argument("growth factor must be positive and finite");
  int exp = 0;
  const double fr = std::frexp(q, &exp);  // q = fr * 2^exp, fr in [0.5, 1)
  const auto mant = static_cast<std::int64_t>(std::ldexp(fr, 53));  // exact
  const int shift = 53 - exp;
  BigInt prod = mant * n;
  if (shift <= 0) return prod << (-shift);
  return (prod + (BigInt(1) << shift) - 1) >> shift;
}

IndexSequence make_lacunary(double q, std::int64_t n1, std::int64_t count) {
  if (!(q > 1.0)) throw std::invalid_argument("lacunary ratio must exceed 1");
  if (n1 < 1) throw std::invalid_argument("first term must be >= 1");
  if (count < 1) throw std::invalid_argument("need at least one term");
  IndexSequence seq;
  seq.kind = SequenceKind::lacunary;
  seq.q = q;
  seq.terms.reserve(count);
  seq.terms.emplace_back(n1);
  for (std::int64_t j = 1; j < count; ++j)
    seq.terms.push_back(ceil_multiple(q, seq.terms.back()));
  return seq;
}

IndexSequence make_delta_growth(double delta, std::int64_t n1,
                                std::int64_t count) {
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("growth exponent must lie in (0, 1/2)");
  if (n1 < 1) throw std::invalid_argument("first term must be >= 1");
  if (count < 1) throw std::invalid_argument("need at least one term");
  IndexSequence seq;
  seq.kind = SequenceKind::delta_growth;
  seq.delta = delta;
  seq.terms.reserve(count);
  seq.terms.emplace_back(n1);
  for (std::int64_t j = 1; j < count; ++j) {
    const double factor = 1.0 + std::pow(static_cast<double>(j), -delta);
    seq.terms.push_back(ceil_multiple(factor, seq.terms.back()));
  }
  return seq;
}

IndexSequence make_explicit(std::vector<BigInt> terms) {
  if (terms.empty()) throw std::invalid_argument("need at least one term");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] < 1) throw std::invalid_argument("terms must be positive");
    if (i > 0 && terms[i] <= terms[i - 1])
      throw std::invalid_argument("terms must strictly increase");
  }
  IndexSequence seq;
  seq.kind = SequenceKind::explicit_terms;
  seq.terms = std::move(terms);
  return seq;
}

double beta_param(const IndexSequence& seq, std::size_t j, LogBase base) {
  const double lg = log_in_base(static_cast<double>(j) + 1.0, base);
  const double numer = 20.0 * (static_cast<double>(j) + 1.0) * lg * lg;
  return numer / seq.term(j).convert_to<double>();
}

BigInt m_param(const IndexSequence& seq, std::size_t j, bool require_positive) {
  BigInt m = seq.term(j) / 10;
  if (require_positive && m == 0)
    throw std::invalid_argument("Fejer order floor(n/10) vanished; need n >= 10");
  return m;
}

std::int64_t BlockCoords::flat_index(std::int64_t j, std::int64_t b) const {
  if (j < 1 || b < 0 || b >= K0)
    throw std::invalid_argument("block coordinates out of range");
  return (j - 1) * K0 + b;
}

std::pair<std::int64_t, std::int64_t> BlockCoords::block_of(std::int64_t i) const {
  if (i < 1 || i > N) throw std::invalid_argument("flat index out of range");
  const std::int64_t b = i % K0;
  return {(i - b) / K0 + 1, b};
}

std::int64_t BlockCoords::max_j() const { return block_of(N).first; }

BlockCoords block_coords(std::int64_t N, double delta) {
  if (N < 1) throw std::invalid_argument("need N >= 1");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("growth exponent must lie in (0, 1/2)");
  BlockCoords bc;
  bc.N = N;
  bc.delta = delta;
  bc.K = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(N))));
  while ((bc.K + 1) * (bc.K + 1) <= N) ++bc.K;
  while (bc.K * bc.K > N) --bc.K;
  const double t = std::pow(static_cast<double>(bc.K), 2.0 * delta);
  bc.K0 = static_cast<std::int64_t>(std::floor(t + 1e-9));  // snap e.g. 4^0.5
  if (bc.K0 < 1) bc.K0 = 1;
  return bc;
}

double block_beta_param(const IndexSequence& seq, const BlockCoords& bc,
                        std::int64_t i, LogBase base) {
  const auto [j, b] = bc.block_of(i);
  (void)b;
  const double lg = log_in_base(static_cast<double>(j) + 1.0, base);
  const double numer = 20.0 * (static_cast<double>(j) + 1.0) * lg * lg;
  return numer / seq.term(i).convert_to<double>();
}

LacunarityAudit subsequence_lacunarity_audit(const IndexSequence& seq,
                                             double delta, std::int64_t N) {
  if (N < 1 || static_cast<std::size_t>(N) > seq.size())
    throw std::invalid_argument("audit range exceeds sequence length");
  const BlockCoords bc = block_coords(N, delta);
  LacunarityAudit audit;
  audit.N = N;
  audit.K = bc.K;
  audit.K0 = bc.K0;

  // Scan candidate K values; the audit for K examines indexes up to K^2.
  std::int64_t first_good = 0;
  double ratio_at_first_good = 0.0;
  for (std::int64_t k = 1; k <= bc.K; ++k) {
    const BlockCoords cand = block_coords(k * k, delta);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::int64_t a = 1; a + cand.K0 <= k * k; ++a) {
      const double ratio = seq.term(a + cand.K0).convert_to<double>() /
                           seq.term(a).convert_to<double>();
      min_ratio = std::min(min_ratio, ratio);
    }
    if (min_ratio >= 2.6) {
      if (first_good == 0) {
        first_good = k;
        ratio_at_first_good = min_ratio;
      }
    } else {
      first_good = 0;  // must hold for every K from k_delta on
    }
  }
  if (first_good == 0) {
    audit.below_threshold = true;
  } else {
    audit.k_delta = first_good;
    audit.min_ratio_at_k = ratio_at_first_good;
  }
  return audit;
}

std::string to_json(const IndexSequence& seq) {
  nlohmann::json j;
  nlohmann::json params = nlohmann::json::object();
  switch (seq.kind) {
    case SequenceKind::lacunary:
      j["kind"] = "lacunary";
      params["q"] = seq.q;
      break;
    case SequenceKind::delta_growth:
      j["kind"] = "delta_growth";
      params["delta"] = seq.delta;
      break;
    case SequenceKind::explicit_terms:
      j["kind"] = "explicit";
      break;
  }
  j["params"] = std::move(params);
  auto terms = nlohmann::json::array();
  for (const auto& t : seq.terms) {
    if (t <= BigInt(std::int64_t{1} << 53))
      terms.push_back(t.convert_to<std::int64_t>());
    else
      terms.push_back(t.str());  // decimal string beyond exact double range
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

IndexSequence sequence_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  IndexSequence seq;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "lacunary") {
    seq.kind = SequenceKind::lacunary;
    seq.q = j.at("params").at("q").get<double>();
  } else if (kind == "delta_growth") {
    seq.kind = SequenceKind::delta_growth;
    seq.delta = j.at("params").at("delta").get<double>();
  } else if (kind == "explicit") {
    seq.kind = SequenceKind::explicit_terms;
  } else {
    throw std::invalid_argument("unknown sequence kind: " + kind);
  }
  for (const auto& t : j.at("terms")) {
    if (t.is_string())
      seq.terms.emplace_back(t.get<std::string>());
    else
      seq.terms.emplace_back(t.get<std::int64_t>());
  }
  if (seq.terms.empty()) throw std::invalid_argument("sequence has no terms");
  return seq;
}

}  // namespace cesaro
