#include "cesaro/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace cesaro {

namespace {

std::int64_t cells_at(int level) { return std::int64_t{1} << level; }

void require_valid(const DyadicInterval& iv) {
  if (iv.level < 0 || iv.level > 62)
    throw std::invalid_argument("dyadic level out of range");
  if (iv.index < 0 || iv.index >= cells_at(iv.level))
    throw std::invalid_argument("dyadic index out of range");
}

}  // namespace

double measure(const DyadicInterval& iv) {
  return kTwoPi / static_cast<double>(cells_at(iv.level));
}

double left_endpoint(const DyadicInterval& iv) {
  return -kPi + measure(iv) * static_cast<double>(iv.index);
}

bool interval_contains(const DyadicInterval& outer, const DyadicInterval& inner) {
  if (inner.level < outer.level) return false;
  return (inner.index >> (inner.level - outer.level)) == outer.index;
}

DyadicInterval parent(const DyadicInterval& iv) {
  if (iv.level == 0) throw std::invalid_argument("the whole circle has no parent");
  return {iv.level - 1, iv.index >> 1};
}

DyadicInterval containing_interval(double y, int n) {
  if (!(y >= -kPi && y < kPi))
    throw std::invalid_argument("point outside [-pi, pi)");
  if (n < 0 || n > 62) throw std::invalid_argument("dyadic level out of range");
  const double cells = static_cast<double>(cells_at(n));
  auto k = static_cast<std::int64_t>(std::floor((y + kPi) / kTwoPi * cells));
  if (k < 0) k = 0;
  if (k >= cells_at(n)) k = cells_at(n) - 1;
  return {n, k};
}

DyadicInterval neighbor(const DyadicInterval& iv, std::int64_t i) {
  require_valid(iv);
  const std::int64_t m = cells_at(iv.level);
  return {iv.level, ((iv.index + i) % m + m) % m};
}

GridSet dilate(const DyadicInterval& iv, std::int64_t gamma) {
  require_valid(iv);
  if (gamma < 1 || gamma % 2 == 0)
    throw std::invalid_argument("dilation factor must be a positive odd integer");
  const int level = std::max(iv.level, 1);
  const std::int64_t m = cells_at(level);
  BArray mask = BArray::Constant(m, false);
  if (gamma >= cells_at(iv.level)) return GridSet(level, !mask);  // saturated
  const std::int64_t scale = std::int64_t{1} << (level - iv.level);
  for (std::int64_t i = -(gamma - 1) / 2; i <= (gamma - 1) / 2; ++i) {
    const std::int64_t base = neighbor(iv, i).index * scale;
    mask.segment(base, scale).setConstant(true);
  }
  return GridSet(level, std::move(mask));
}

int IntervalFamily::finest_level(int fallback) const {
  int level = fallback;
  for (const auto& iv : intervals) level = std::max(level, iv.level);
  return level;
}

double IntervalFamily::total_measure() const {
  double acc = 0.0;
  for (const auto& iv : intervals) acc += measure(iv);
  return acc;
}

GridSet dilated_union(const IntervalFamily& fam, std::int64_t gamma,
                      int min_level) {
  const int level = std::max(fam.finest_level(min_level), min_level);
  GridSet acc = GridSet::empty(level);
  for (const auto& iv : fam.intervals)
    acc = set_union(acc, refine(dilate(iv, gamma), level));
  return acc;
}

double overlap_sum(const IntervalFamily& fam, std::int64_t gamma,
                   int min_level) {
  if (fam.empty()) return 0.0;
  const int level = std::max(fam.finest_level(), min_level);
  std::vector<GridSet> dilations;
  dilations.reserve(fam.size());
  for (const auto& iv : fam.intervals)
    dilations.push_back(refine(dilate(iv, gamma), level));
  double acc = 0.0;
  for (const auto& a : dilations)
    for (const auto& b : dilations)
      acc += measure(set_intersect(a, b));
  return acc;
}

IntervalFamily maximal_selection(const IntervalFamily& fam, std::int64_t shift) {
  IntervalFamily out;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const DyadicInterval si = neighbor(fam.intervals[i], shift);
    bool dominated = false;
    for (std::size_t j = 0; j < fam.size() && !dominated; ++j) {
      if (j == i) continue;
      const DyadicInterval sj = neighbor(fam.intervals[j], shift);
      if (sj != si && interval_contains(sj, si)) dominated = true;
    }
    if (!dominated) out.intervals.push_back(fam.intervals[i]);
  }
  return out;
}

namespace {

// Prefix sums in long double keep interval averages exact enough for the
// strict selection comparisons (lambda < avg <= 2 lambda).
struct AverageTable {
  std::vector<long double> abs_prefix;   // prefix sums of |f| cell values
  std::vector<Complex> prefix;           // prefix sums of f cell values
  double cell_width;
  int grid_level;

  explicit AverageTable(const PCFunction& f)
      : abs_prefix(f.cells() + 1, 0.0L),
        prefix(f.cells() + 1, Complex{0.0, 0.0}),
        cell_width(f.cell_width()),
        grid_level(f.level()) {
    for (std::int64_t i = 0; i < f.cells(); ++i) {
      abs_prefix[i + 1] = abs_prefix[i] + std::abs(f.value(i));
      prefix[i + 1] = prefix[i] + f.value(i);
    }
  }

  // Average of |f| over a dyadic interval at `level <= grid_level`.
  double abs_average(int level, std::int64_t index) const {
    const std::int64_t span = std::int64_t{1} << (grid_level - level);
    const std::int64_t lo = index * span;
    const long double total = abs_prefix[lo + span] - abs_prefix[lo];
    return static_cast<double>(total / static_cast<long double>(span));
  }

  Complex average(int level, std::int64_t index) const {
    const std::int64_t span = std::int64_t{1} << (grid_level - level);
    const std::int64_t lo = index * span;
    return (prefix[lo + span] - prefix[lo]) / static_cast<double>(span);
  }
};

void select_intervals(const AverageTable& table, double lambda, int level,
                      std::int64_t index, IntervalFamily& out) {
  if (table.abs_average(level, index) > lambda) {
    out.intervals.push_back({level, index});
    return;
  }
  if (level == table.grid_level) return;
  select_intervals(table, lambda, level + 1, 2 * index, out);
  select_intervals(table, lambda, level + 1, 2 * index + 1, out);
}

}  // namespace

CZDecomposition cz_decompose(const PCFunction& f, double lambda) {
  if (!std::isfinite(lambda))
    throw std::invalid_argument("cz threshold must be finite");
  const double root_average = lp_norm(f, Lp::one) / kTwoPi;
  if (root_average == 0.0)
    throw std::invalid_argument("cz input must not be identically zero");
  if (!(lambda > root_average))
    throw std::invalid_argument(
        "cz threshold must exceed the mean of |f| over the circle");

  const AverageTable table(f);
  IntervalFamily family;
  select_intervals(table, lambda, 1, 0, family);
  select_intervals(table, lambda, 1, 1, family);

  CVector good_values = f.values();
  std::vector<std::pair<DyadicInterval, PCFunction>> bad;
  bad.reserve(family.size());
  for (const auto& iv : family.intervals) {
    const Complex avg = table.average(iv.level, iv.index);
    const std::int64_t span = std::int64_t{1} << (f.level() - iv.level);
    const std::int64_t lo = iv.index * span;
    CVector part = CVector::Zero(f.cells());
    part.segment(lo, span) =
        (f.values().segment(lo, span).array() - avg).matrix();
    good_values.segment(lo, span).setConstant(avg);
    bad.emplace_back(iv, PCFunction(f.level(), std::move(part)));
  }
  return CZDecomposition{lambda, PCFunction(f.level(), std::move(good_values)),
                         std::move(bad), std::move(family)};
}

PCFunction bad_sum(const CZDecomposition& d) {
  CVector acc = CVector::Zero(d.good.cells());
  for (const auto& [iv, part] : d.bad) acc += part.values();
  return PCFunction(d.good.level(), std::move(acc));
}

IntervalFamily filter_beta(const IntervalFamily& fam, double beta) {
  if (beta < 0) throw std::invalid_argument("length filter must be >= 0");
  IntervalFamily out;
  for (const auto& iv : fam.intervals)
    if (measure(iv) > beta) out.intervals.push_back(iv);
  return out;
}

IntervalFamily filter_beta(const CZDecomposition& d, double beta) {
  return filter_beta(d.family, beta);
}

std::string to_json(const CZDecomposition& d) {
  nlohmann::json j;
  j["lambda"] = d.lambda;
  auto intervals = nlohmann::json::array();
  for (const auto& iv : d.family.intervals)
    intervals.push_back({{"level", iv.level}, {"index", iv.index}});
  j["intervals"] = std::move(intervals);
  j["measure_F"] = d.measure_family();
  return j.dump();
}

}  // namespace cesaro
