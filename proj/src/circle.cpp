#include "cesaro/circle.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace cesaro {

namespace {

constexpr int kMaxLevel = 24;

std::int64_t cells_for_level(int level) {
  if (level < 1 || level > kMaxLevel)
    throw std::invalid_argument("grid level out of range [1, 24]");
  return std::int64_t{1} << level;
}

}  // namespace

PCFunction::PCFunction(int level, CVector values)
    : level_(level), values_(std::move(values)) {
  if (values_.size() != cells_for_level(level))
    throw std::invalid_argument("value count does not match grid level");
}

double PCFunction::cell_left(std::int64_t i) const {
  return -kPi + cell_width() * static_cast<double>(i);
}

double PCFunction::cell_mid(std::int64_t i) const {
  return -kPi + cell_width() * (static_cast<double>(i) + 0.5);
}

std::int64_t PCFunction::cell_of(double y) const {
  if (!(y >= -kPi && y < kPi))
    throw std::invalid_argument("point outside [-pi, pi)");
  auto i = static_cast<std::int64_t>(std::floor((y + kPi) / cell_width()));
  if (i < 0) i = 0;
  if (i >= cells()) i = cells() - 1;
  return i;
}

bool PCFunction::is_real() const {
  for (std::int64_t i = 0; i < cells(); ++i)
    if (values_[i].imag() != 0.0) return false;
  return true;
}

GridSet::GridSet(int level, BArray mask) : level_(level), mask_(std::move(mask)) {
  if (mask_.size() != cells_for_level(level))
    throw std::invalid_argument("mask size does not match grid level");
}

GridSet GridSet::empty(int level) {
  return GridSet(level, BArray::Constant(cells_for_level(level), false));
}

GridSet GridSet::full(int level) {
  return GridSet(level, BArray::Constant(cells_for_level(level), true));
}

TrigPoly::TrigPoly(std::int64_t degree, CVector coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  if (coeffs_.size() != 2 * degree + 1)
    throw std::invalid_argument("coefficient count does not match degree");
}

TrigPoly TrigPoly::zero(std::int64_t degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  return TrigPoly(degree, CVector::Zero(2 * degree + 1));
}

Complex TrigPoly::coeff(std::int64_t k) const {
  if (k < -degree_ || k > degree_) return {0.0, 0.0};
  return coeffs_[k + degree_];
}

void TrigPoly::set_coeff(std::int64_t k, Complex c) {
  if (k < -degree_ || k > degree_)
    throw std::out_of_range("coefficient index outside band");
  coeffs_[k + degree_] = c;
}

double measure(const GridSet& s) {
  return kTwoPi * static_cast<double>(s.count()) /
         static_cast<double>(s.cells());
}

GridSet refine(const GridSet& s, int level) {
  if (level < s.level()) throw std::invalid_argument("refine cannot coarsen");
  if (level == s.level()) return s;
  std::int64_t factor = std::int64_t{1} << (level - s.level());
  BArray mask(cells_for_level(level));
  for (std::int64_t i = 0; i < s.cells(); ++i)
    mask.segment(i * factor, factor).setConstant(s.cell(i));
  return GridSet(level, std::move(mask));
}

GridSet complement(const GridSet& s) { return GridSet(s.level(), !s.mask()); }

namespace {
void require_same_level(const GridSet& a, const GridSet& b) {
  if (a.level() != b.level())
    throw std::invalid_argument("grid sets live on different levels");
}
}  // namespace

GridSet set_union(const GridSet& a, const GridSet& b) {
  require_same_level(a, b);
  return GridSet(a.level(), a.mask() || b.mask());
}

GridSet set_intersect(const GridSet& a, const GridSet& b) {
  require_same_level(a, b);
  return GridSet(a.level(), a.mask() && b.mask());
}

GridSet set_difference(const GridSet& a, const GridSet& b) {
  require_same_level(a, b);
  return GridSet(a.level(), a.mask() && !b.mask());
}

bool contains(const GridSet& s, double y) {
  double width = kTwoPi / static_cast<double>(s.cells());
  auto i = static_cast<std::int64_t>(std::floor((y + kPi) / width));
  if (i < 0) i = 0;
  if (i >= s.cells()) i = s.cells() - 1;
  return s.cell(i);
}

PCFunction refine(const PCFunction& f, int level) {
  if (level < f.level()) throw std::invalid_argument("refine cannot coarsen");
  if (level == f.level()) return f;
  std::int64_t factor = std::int64_t{1} << (level - f.level());
  CVector values(cells_for_level(level));
  for (std::int64_t i = 0; i < f.cells(); ++i)
    values.segment(i * factor, factor).setConstant(f.value(i));
  return PCFunction(level, std::move(values));
}

PCFunction indicator(const GridSet& s) {
  CVector values(s.cells());
  for (std::int64_t i = 0; i < s.cells(); ++i)
    values[i] = s.cell(i) ? 1.0 : 0.0;
  return PCFunction(s.level(), std::move(values));
}

PCFunction modulate(const PCFunction& f, std::int64_t theta) {
  CVector values(f.cells());
  for (std::int64_t i = 0; i < f.cells(); ++i) {
    double phase = static_cast<double>(theta) * f.cell_mid(i);
    values[i] = f.value(i) * std::polar(1.0, phase);
  }
  return PCFunction(f.level(), std::move(values));
}

PCFunction abs(const PCFunction& f) {
  CVector values(f.cells());
  for (std::int64_t i = 0; i < f.cells(); ++i)
    values[i] = std::abs(f.value(i));
  return PCFunction(f.level(), std::move(values));
}

PCFunction scaled(const PCFunction& f, Complex c) {
  return PCFunction(f.level(), f.values() * c);
}

PCFunction sum(const PCFunction& a, const PCFunction& b) {
  int level = std::max(a.level(), b.level());
  const PCFunction fa = refine(a, level);
  const PCFunction fb = refine(b, level);
  return PCFunction(level, fa.values() + fb.values());
}

Complex integral(const PCFunction& f) {
  return f.values().sum() * f.cell_width();
}

Complex integral_over(const PCFunction& f, const GridSet& s) {
  if (s.level() < f.level())
    return integral_over(f, refine(s, f.level()));
  const PCFunction g = refine(f, s.level());
  Complex acc{0.0, 0.0};
  for (std::int64_t i = 0; i < s.cells(); ++i)
    if (s.cell(i)) acc += g.value(i);
  return acc * g.cell_width();
}

double abs_integral_over(const PCFunction& f, const GridSet& s) {
  if (s.level() < f.level())
    return abs_integral_over(f, refine(s, f.level()));
  const PCFunction g = refine(f, s.level());
  double acc = 0.0;
  for (std::int64_t i = 0; i < s.cells(); ++i)
    if (s.cell(i)) acc += std::abs(g.value(i));
  return acc * g.cell_width();
}

double lp_norm(const PCFunction& f, Lp p) {
  switch (p) {
    case Lp::one:
      return f.values().cwiseAbs().sum() * f.cell_width();
    case Lp::two:
      return std::sqrt(f.values().squaredNorm() * f.cell_width());
    case Lp::infinity:
      return f.values().cwiseAbs().maxCoeff();
  }
  throw std::logic_error("unknown norm");
}

namespace detail {

CVector dft_residue_table(const CVector& values) {
  const std::int64_t m = values.size();
  CVector roots(m);
  for (std::int64_t j = 0; j < m; ++j) {
    double phase = -kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    roots[j] = std::polar(1.0, phase);
  }
  CVector table(m);
  for (std::int64_t r = 0; r < m; ++r) {
    Complex acc{0.0, 0.0};
    for (std::int64_t i = 0; i < m; ++i)
      acc += values[i] * roots[(r * i) % m];
    table[r] = acc;
  }
  return table;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  // Top 53 bits; identical across platforms, unlike std::uniform_real.
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace detail

Complex fourier_coefficient(const PCFunction& f, std::int64_t k) {
  const std::int64_t m = f.cells();
  if (k == 0) return f.values().sum() / static_cast<double>(m);
  const std::int64_t r = ((k % m) + m) % m;
  if (r == 0) return {0.0, 0.0};  // e^{-ikx} has full periods in every cell
  Complex s{0.0, 0.0};
  for (std::int64_t i = 0; i < m; ++i) {
    double phase = -kTwoPi * static_cast<double>((r * i) % m) /
                   static_cast<double>(m);
    s += f.value(i) * std::polar(1.0, phase);
  }
  // Left endpoints are a_i = -pi + i h, so e^{-ik a_i} = (-1)^k w^{ri mod m}.
  double sign = (k & 1) ? -1.0 : 1.0;
  Complex w = std::polar(1.0, -kTwoPi * static_cast<double>(r) /
                                  static_cast<double>(m));
  Complex numer = sign * (Complex{1.0, 0.0} - w) * s;
  return numer / (Complex{0.0, 1.0} * kTwoPi * static_cast<double>(k));
}

TrigPoly bandlimit(const PCFunction& f, std::int64_t degree) {
  const std::int64_t m = f.cells();
  const CVector table = detail::dft_residue_table(f.values());
  CVector ws(m);
  for (std::int64_t r = 0; r < m; ++r)
    ws[r] = std::polar(1.0, -kTwoPi * static_cast<double>(r) /
                                static_cast<double>(m));
  TrigPoly p = TrigPoly::zero(degree);
  p.set_coeff(0, table[0] / static_cast<double>(m));
  for (std::int64_t k = -degree; k <= degree; ++k) {
    if (k == 0) continue;
    const std::int64_t r = ((k % m) + m) % m;
    if (r == 0) continue;
    double sign = (k & 1) ? -1.0 : 1.0;
    Complex numer = sign * (Complex{1.0, 0.0} - ws[r]) * table[r];
    p.set_coeff(k, numer / (Complex{0.0, 1.0} * kTwoPi * static_cast<double>(k)));
  }
  return p;
}

Complex eval_trig(const TrigPoly& p, double y) {
  // sum_k c_k e^{iky} = e^{-i d y} sum_{j=0}^{2d} c_{j-d} e^{ijy}.
  // Plain power recurrence; phase drift over 2d steps stays near sqrt(2d) ulp,
  // with an occasional magnitude renormalisation to stop |w| from wandering.
  const std::int64_t n = p.coeffs().size();
  const Complex z = std::polar(1.0, y);
  Complex w{1.0, 0.0};
  Complex acc{0.0, 0.0};
  for (std::int64_t j = 0; j < n; ++j) {
    acc += p.coeffs()[j] * w;
    w *= z;
    if ((j & 1023) == 1023) w /= std::abs(w);
  }
  return acc * std::polar(1.0, -static_cast<double>(p.degree()) * y);
}

TrigPoly product(const TrigPoly& a, const TrigPoly& b) {
  std::int64_t la, ha, lb, hb;
  const std::int64_t dc = a.degree() + b.degree();
  if (!support_bounds(a, la, ha) || !support_bounds(b, lb, hb))
    return TrigPoly::zero(dc);
  TrigPoly c = TrigPoly::zero(dc);
  // c_k = sum_j a_j b_{k-j}. Reversing b makes both index ranges contiguous,
  // so each output coefficient is one vectorised segment product. The first
  // factor is convolved one maximal nonzero run at a time: band-limited
  // factors (a high-low difference is zero on the inner half of its support)
  // then cost what their occupied bands cost, not their degree.
  const std::int64_t nb = hb - lb + 1;
  CVector bv = b.coeffs().segment(lb + b.degree(), nb).reverse();
  std::int64_t run = la;
  while (run <= ha) {
    while (run <= ha && a.coeff(run) == Complex{0.0, 0.0}) ++run;
    if (run > ha) break;
    std::int64_t end = run;
    while (end < ha && a.coeff(end + 1) != Complex{0.0, 0.0}) ++end;
    const std::int64_t na = end - run + 1;
    CVector av = a.coeffs().segment(run + a.degree(), na);
    for (std::int64_t k = run + lb; k <= end + hb; ++k) {
      const std::int64_t j0 = std::max(run, k - hb);
      const std::int64_t j1 = std::min(end, k - lb);
      if (j0 > j1) continue;
      const std::int64_t len = j1 - j0 + 1;
      const Complex v = (av.segment(j0 - run, len).array() *
                         bv.segment(hb - k + j0, len).array())
                            .sum();
      c.set_coeff(k, c.coeff(k) + v);
    }
    run = end + 1;
  }
  return c;
}

TrigPoly poly_sum(const TrigPoly& a, const TrigPoly& b) {
  const std::int64_t d = std::max(a.degree(), b.degree());
  TrigPoly c = TrigPoly::zero(d);
  for (std::int64_t k = -d; k <= d; ++k)
    c.set_coeff(k, a.coeff(k) + b.coeff(k));
  return c;
}

TrigPoly poly_scaled(const TrigPoly& a, Complex c) {
  return TrigPoly(a.degree(), a.coeffs() * c);
}

double l2_norm(const TrigPoly& p) {
  return std::sqrt(kTwoPi * p.coeffs().squaredNorm());
}

bool support_bounds(const TrigPoly& p, std::int64_t& lo, std::int64_t& hi) {
  const std::int64_t d = p.degree();
  std::int64_t first = -1, last = -1;
  for (std::int64_t j = 0; j < 2 * d + 1; ++j) {
    if (p.coeffs()[j] != Complex{0.0, 0.0}) {
      if (first < 0) first = j;
      last = j;
    }
  }
  if (first < 0) return false;
  lo = first - d;
  hi = last - d;
  return true;
}

std::string to_json(const PCFunction& f) {
  nlohmann::json j;
  j["level"] = f.level();
  auto values = nlohmann::json::array();
  for (std::int64_t i = 0; i < f.cells(); ++i)
    values.push_back({f.value(i).real(), f.value(i).imag()});
  j["values"] = std::move(values);
  return j.dump();
}

PCFunction pcfunction_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int level = j.at("level").get<int>();
  const auto& values = j.at("values");
  CVector v(static_cast<std::int64_t>(values.size()));
  for (std::int64_t i = 0; i < v.size(); ++i)
    v[i] = Complex{values[i][0].get<double>(), values[i][1].get<double>()};
  return PCFunction(level, std::move(v));
}

}  // namespace cesaro
