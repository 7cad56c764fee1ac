#include "cesaro/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

namespace cesaro {

namespace {
constexpr std::int64_t kPolyOrderCap = std::int64_t{1} << 20;

void require_poly_order(std::int64_t window) {
  if (window > kPolyOrderCap)
    throw std::invalid_argument(
        "order too large for coefficient materialization (cap 2^20); "
        "use the grid evaluator");
}
}  // namespace

std::int64_t exclusion_level(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  return std::bit_width(static_cast<std::uint64_t>(n)) - 1;
}

namespace detail {

std::int64_t grid_units30(double y) {
  if (!(y >= -kPi && y < kPi))
    throw std::invalid_argument("point outside [-pi, pi)");
  constexpr double kUnits = 1073741824.0;  // 2^30
  const double scaled = (y + kPi) / kTwoPi * kUnits;
  auto u = static_cast<std::int64_t>(std::llround(scaled));
  const double recon = -kPi + kTwoPi * static_cast<double>(u) / kUnits;
  if (std::fabs(recon - y) > 1e-12)
    throw std::invalid_argument(
        "evaluation point must lie on a dyadic midpoint grid (level <= 29)");
  return u & (std::int64_t{1} << 30) - 1;
}

}  // namespace detail

namespace {

struct Span {
  std::int64_t lo = 0, hi = 0;  // half-open unit range at the common level
  std::int64_t cell = 0;        // f-cell whose value applies
};

// Exact integer picture of the excised arc 3I_{|n|}(y) against f's cells.
// All endpoints live at one common dyadic level LL fine enough for the f
// grid, the arc, and the level-30 evaluation position at once, so endpoint
// differences are exact integers no matter how deep the exclusion level
// goes relative to double precision.
struct ExclusionGeometry {
  int common_level = 30;
  std::int64_t units = 0;    // 2^LL
  std::int64_t y_units = 0;  // position of y
  bool excludes_all = false;
  std::vector<Span> outside;
  std::vector<Span> inside;
};

ExclusionGeometry exclusion_geometry(const PCFunction& f,
                                     std::int64_t n_exclusion,
                                     std::int64_t u30) {
  ExclusionGeometry geo;
  const std::int64_t level = exclusion_level(n_exclusion);
  if (level > 60) throw std::invalid_argument("exclusion level too deep");
  if (level <= 1) {
    geo.excludes_all = true;  // three level-<=1 cells wrap the whole circle
    return geo;
  }
  const int ll = std::max({f.level(), static_cast<int>(level), 30});
  geo.common_level = ll;
  geo.units = std::int64_t{1} << ll;
  geo.y_units = u30 << (ll - 30);

  const std::int64_t cells_l = std::int64_t{1} << level;
  const std::int64_t scale = std::int64_t{1} << (ll - level);
  const std::int64_t own = geo.y_units >> (ll - level);  // I_level(y)
  const std::int64_t start = (((own - 1) % cells_l) + cells_l) % cells_l * scale;
  const std::int64_t len = 3 * scale;
  // The circular arc [start, start + len) as one or two linear unit ranges.
  const std::int64_t e1_lo = start;
  const std::int64_t e1_hi = std::min(start + len, geo.units);
  const std::int64_t e2_hi = std::max<std::int64_t>(start + len - geo.units, 0);

  const std::int64_t width = std::int64_t{1} << (ll - f.level());
  geo.outside.reserve(f.cells() + 2);
  for (std::int64_t c = 0; c < f.cells(); ++c) {
    const std::int64_t clo = c * width, chi = clo + width;
    Span segs[2];
    int ns = 0;
    auto clip = [&](std::int64_t lo, std::int64_t hi) {
      lo = std::max(lo, clo);
      hi = std::min(hi, chi);
      if (lo < hi) segs[ns++] = Span{lo, hi, c};
    };
    clip(0, e2_hi);
    clip(e1_lo, e1_hi);
    std::int64_t cursor = clo;
    for (int s = 0; s < ns; ++s) {
      if (segs[s].lo > cursor) geo.outside.push_back({cursor, segs[s].lo, c});
      geo.inside.push_back(segs[s]);
      cursor = segs[s].hi;
    }
    if (cursor < chi) geo.outside.push_back({cursor, chi, c});
  }
  return geo;
}

double log_sin_half(const ExclusionGeometry& geo, std::int64_t endpoint) {
  // ln |sin((y - x)/2)| where y - x = 2 pi (Y - e) / 2^LL.
  const double ang = kPi * static_cast<double>(geo.y_units - endpoint) /
                     static_cast<double>(geo.units);
  return std::log(std::fabs(std::sin(ang)));
}

Complex hilbert_core(const PCFunction& f, const ExclusionGeometry& geo) {
  if (geo.excludes_all) return {0.0, 0.0};
  Complex acc{0.0, 0.0};
  for (const auto& span : geo.outside) {
    if (span.lo == geo.y_units || span.hi == geo.y_units)
      throw std::logic_error("cot antiderivative hit its singular endpoint");
    acc += f.value(span.cell) *
           (2.0 * (log_sin_half(geo, span.lo) - log_sin_half(geo, span.hi)));
  }
  return acc;
}

Complex e_core(const PCFunction& f, const ExclusionGeometry& geo,
               std::int64_t l) {
  Complex total{0.0, 0.0};
  double norm;  // fraction of the circle per unit
  if (geo.excludes_all) {
    total = f.values().sum() / static_cast<double>(f.cells());
    norm = 1.0;
  } else {
    for (const auto& span : geo.inside)
      total += f.value(span.cell) * static_cast<double>(span.hi - span.lo);
    norm = 1.0 / static_cast<double>(geo.units);
  }
  return total * (norm * kTwoPi * static_cast<double>(l));
}

// sum_{k=1}^{l} sin(k theta)/k for theta = 2 pi d / units, with periodic
// exact rephasing so the recurrence cannot drift.
double sine_series(std::int64_t d, std::int64_t units, std::int64_t l) {
  const double theta = kTwoPi * static_cast<double>(d) / static_cast<double>(units);
  const Complex step = std::polar(1.0, theta);
  Complex w{1.0, 0.0};
  double acc = 0.0;
  for (std::int64_t k = 1; k <= l; ++k) {
    if ((k & 255) == 0) {
      auto rem = static_cast<std::int64_t>(
          ((static_cast<__int128>(k) * d) % units + units) % units);
      w = std::polar(1.0, kTwoPi * static_cast<double>(rem) /
                              static_cast<double>(units));
    } else {
      w *= step;
    }
    acc += w.imag() / static_cast<double>(k);
  }
  return acc;
}

Complex excised_partial_core(const PCFunction& f, const ExclusionGeometry& geo,
                             std::int64_t l) {
  // sum_{|k|<=l} ghat(k) e^{iky} for g = f restricted to the excised arc.
  if (geo.excludes_all)
    throw std::logic_error("caller must handle the saturated arc");
  Complex acc{0.0, 0.0};
  for (const auto& span : geo.inside) {
    const double frac = static_cast<double>(span.hi - span.lo) /
                        static_cast<double>(geo.units);
    const double series = sine_series(geo.y_units - span.lo, geo.units, l) -
                          sine_series(geo.y_units - span.hi, geo.units, l);
    acc += f.value(span.cell) * (frac + series / kPi);
  }
  return acc;
}

}  // namespace

TrigPoly partial_sum_poly(const PCFunction& f, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("order must be >= 0");
  require_poly_order(n);
  return bandlimit(f, n);
}

TrigPoly fejer_poly(const PCFunction& f, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("order must be >= 0");
  require_poly_order(n);
  TrigPoly p = bandlimit(f, n);
  for (std::int64_t k = -n; k <= n; ++k)
    p.set_coeff(k, p.coeff(k) * (1.0 - std::abs(static_cast<double>(k)) /
                                           static_cast<double>(n + 1)));
  return p;
}

TrigPoly vp_poly(const PCFunction& f, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  require_poly_order(2 * n - 1);
  TrigPoly p = bandlimit(f, 2 * n - 1);
  for (std::int64_t k = n + 1; k <= 2 * n - 1; ++k) {
    const double w = static_cast<double>(2 * n - k) / static_cast<double>(n);
    p.set_coeff(k, p.coeff(k) * w);
    p.set_coeff(-k, p.coeff(-k) * w);
  }
  return p;
}

TrigPoly sv_poly(const PCFunction& f, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  require_poly_order(2 * n - 1);
  TrigPoly p = bandlimit(f, 2 * n - 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    p.set_coeff(k, {0.0, 0.0});
    if (k) p.set_coeff(-k, {0.0, 0.0});
  }
  for (std::int64_t k = n + 1; k <= 2 * n - 1; ++k) {
    const double w = -static_cast<double>(2 * n - k) / static_cast<double>(n);
    p.set_coeff(k, p.coeff(k) * w);
    p.set_coeff(-k, p.coeff(-k) * w);
  }
  return p;
}

TrigPoly apply_bands(const TrigPoly& p, const std::vector<WeightBand>& bands,
                     double w0) {
  TrigPoly out = TrigPoly::zero(p.degree());
  out.set_coeff(0, p.coeff(0) * w0);
  for (const auto& band : bands) {
    for (std::int64_t k = band.lo; k <= std::min(band.hi, p.degree()); ++k) {
      const double w = band.a + band.b * static_cast<double>(k);
      out.set_coeff(k, out.coeff(k) + p.coeff(k) * w);
      out.set_coeff(-k, out.coeff(-k) + p.coeff(-k) * w);
    }
  }
  return out;
}

Complex partial_sum(const PCFunction& f, std::int64_t n, double y) {
  return eval_trig(partial_sum_poly(f, n), y);
}

Complex fejer_mean(const PCFunction& f, std::int64_t n, double y) {
  return eval_trig(fejer_poly(f, n), y);
}

Complex vp_mean(const PCFunction& f, std::int64_t n, double y) {
  return eval_trig(vp_poly(f, n), y);
}

Complex sv_difference(const PCFunction& f, std::int64_t n, double y) {
  return eval_trig(sv_poly(f, n), y);
}

Complex partial_sum(const TrigPoly& p, std::int64_t n, double y) {
  const std::int64_t d = std::min(n, p.degree());
  TrigPoly q = TrigPoly::zero(d);
  for (std::int64_t k = -d; k <= d; ++k) q.set_coeff(k, p.coeff(k));
  return eval_trig(q, y);
}

TrigPoly vp_mean(const TrigPoly& p, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  return apply_bands(p, bands_vp(n), 1.0);
}

Complex hilbert_modified(const PCFunction& f, std::int64_t n, double y) {
  return hilbert_core(f, exclusion_geometry(f, n, detail::grid_units30(y)));
}

Complex modified_partial_sum(const PCFunction& f, std::int64_t l,
                             std::int64_t n_exclusion, double y) {
  if (l < 1) throw std::invalid_argument("order must be >= 1");
  require_poly_order(l);
  const auto geo = exclusion_geometry(f, n_exclusion, detail::grid_units30(y));
  if (geo.excludes_all) return {0.0, 0.0};
  return eval_trig(bandlimit(f, l), y) - excised_partial_core(f, geo, l);
}

Complex e_operator(const PCFunction& f, std::int64_t l,
                   std::int64_t n_exclusion, double y) {
  if (l < 1) throw std::invalid_argument("order must be >= 1");
  return e_core(f, exclusion_geometry(f, n_exclusion, detail::grid_units30(y)), l);
}

namespace {
std::int64_t midpoint_units30(std::int64_t p, int eval_level) {
  return (2 * p + 1) << (29 - eval_level);
}
}  // namespace

CVector hilbert_grid(const PCFunction& f, std::int64_t n, int eval_level) {
  const std::int64_t m = std::int64_t{1} << eval_level;
  CVector out(m);
  for (std::int64_t p = 0; p < m; ++p)
    out[p] = hilbert_core(
        f, exclusion_geometry(f, n, midpoint_units30(p, eval_level)));
  return out;
}

CVector e_operator_grid(const PCFunction& f, std::int64_t l,
                        std::int64_t n_exclusion, int eval_level) {
  if (l < 1) throw std::invalid_argument("order must be >= 1");
  const std::int64_t m = std::int64_t{1} << eval_level;
  CVector out(m);
  for (std::int64_t p = 0; p < m; ++p)
    out[p] = e_core(
        f, exclusion_geometry(f, n_exclusion, midpoint_units30(p, eval_level)),
        l);
  return out;
}

void validate(const CompositeSpec& spec) {
  if (spec.beta <= 7 || spec.beta % 2 == 0)
    throw std::invalid_argument(
        "composite mask width must be an odd integer greater than 7 "
        "(replacement-check hypothesis)");
  if (!(spec.delta > 0.0 && spec.delta < 0.5))
    throw std::invalid_argument("growth exponent must lie in (0, 1/2)");
  if (spec.N < 1 || static_cast<std::size_t>(spec.N) > spec.seq.size())
    throw std::invalid_argument("composite length exceeds the sequence");
  if (spec.seq.term(1) < 10)
    throw std::invalid_argument(
        "sequence must start at 10 or above so floor(n/10) stays positive");
}

Complex t_operator(const PCFunction& f, const IndexSequence& seq,
                   std::int64_t N, double y) {
  if (N < 1 || static_cast<std::size_t>(N) > seq.size())
    throw std::invalid_argument("average length exceeds the sequence");
  Complex acc{0.0, 0.0};
  for (std::int64_t i = 1; i <= N; ++i)
    acc += sv_difference(f, seq.term_i64(i), y);
  return acc / static_cast<double>(N);
}

CVector t_operator_grid(const SpectralTable& table, const IndexSequence& seq,
                        std::int64_t N) {
  if (N < 1 || static_cast<std::size_t>(N) > seq.size())
    throw std::invalid_argument("average length exceeds the sequence");
  CVector acc = CVector::Zero(table.points());
  for (std::int64_t i = 1; i <= N; ++i) acc += table.sv(seq.term_i64(i));
  return acc / static_cast<double>(N);
}

std::vector<CVector> sv_terms_grid(const SpectralTable& table,
                                   const IndexSequence& seq, std::int64_t N) {
  if (N < 1 || static_cast<std::size_t>(N) > seq.size())
    throw std::invalid_argument("average length exceeds the sequence");
  std::vector<CVector> out;
  out.reserve(N);
  for (std::int64_t i = 1; i <= N; ++i) out.push_back(table.sv(seq.term_i64(i)));
  return out;
}

CVector sigma_complement_grid(const IntervalFamily& fam,
                              std::int64_t beta_dilation, std::int64_t m,
                              int eval_level) {
  const std::int64_t points = std::int64_t{1} << eval_level;
  if (fam.empty()) return CVector::Constant(points, Complex{1.0, 0.0});
  if (fam.finest_level() > eval_level)
    throw std::invalid_argument("family is finer than the evaluation grid");
  const GridSet masked = dilated_union(fam, beta_dilation, eval_level);
  const SpectralTable table(indicator(complement(masked)), eval_level);
  return table.fejer(m);
}

Complex t_beta_operator(const PCFunction& f, const CompositeSpec& spec,
                        double lambda, double y) {
  validate(spec);
  const CZDecomposition cz = cz_decompose(f, lambda);
  const BlockCoords bc = block_coords(spec.N, spec.delta);
  Complex acc{0.0, 0.0};
  for (std::int64_t i = 1; i <= spec.N; ++i) {
    const std::int64_t n_i = spec.seq.term_i64(i);
    const auto m_i = m_param(spec.seq, i).convert_to<std::int64_t>();
    const Complex diff = sv_difference(f, n_i, y);
    Complex mask{1.0, 0.0};
    const IntervalFamily fam = filter_beta(
        cz.family, block_beta_param(spec.seq, bc, i, spec.log_base));
    if (!fam.empty()) {
      const GridSet masked =
          dilated_union(fam, spec.beta, f.level());
      mask = fejer_mean(indicator(complement(masked)), m_i, y);
    }
    acc += diff * mask;
  }
  return acc / static_cast<double>(spec.N);
}

std::vector<CVector> t_beta_addends_grid(const PCFunction& f,
                                         const CompositeSpec& spec,
                                         double lambda, int eval_level) {
  validate(spec);
  const CZDecomposition cz = cz_decompose(f, lambda);
  const BlockCoords bc = block_coords(spec.N, spec.delta);
  const SpectralTable table(f, eval_level);

  // Filtered families form a chain under inclusion, so their size is a
  // faithful cache key for the masked-indicator tables.
  std::map<std::size_t, std::shared_ptr<const SpectralTable>> mask_tables;
  std::vector<CVector> addends;
  addends.reserve(spec.N);
  for (std::int64_t i = 1; i <= spec.N; ++i) {
    const std::int64_t n_i = spec.seq.term_i64(i);
    const auto m_i = m_param(spec.seq, i).convert_to<std::int64_t>();
    CVector diff = table.sv(n_i);
    const IntervalFamily fam = filter_beta(
        cz.family, block_beta_param(spec.seq, bc, i, spec.log_base));
    if (fam.empty()) {
      addends.push_back(std::move(diff));  // mask is exactly 1
      continue;
    }
    auto it = mask_tables.find(fam.size());
    if (it == mask_tables.end()) {
      const GridSet masked = dilated_union(fam, spec.beta, eval_level);
      auto built = std::make_shared<const SpectralTable>(
          indicator(complement(masked)), eval_level);
      it = mask_tables.emplace(fam.size(), std::move(built)).first;
    }
    addends.push_back(diff.cwiseProduct(it->second->fejer(m_i)));
  }
  return addends;
}

}  // namespace cesaro
