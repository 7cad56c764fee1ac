#include "cesaro/spectral.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/special_functions/digamma.hpp>

namespace cesaro {

std::vector<WeightBand> bands_partial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("order must be >= 0");
  if (n == 0) return {};
  return {{1, n, 1.0, 0.0}};
}

std::vector<WeightBand> bands_fejer(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("order must be >= 0");
  if (n == 0) return {};
  return {{1, n, 1.0, -1.0 / static_cast<double>(n + 1)}};
}

std::vector<WeightBand> bands_vp(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  std::vector<WeightBand> bands{{1, n, 1.0, 0.0}};
  if (n > 1)  // window (n, 2n-1] with weight (2n - |k|)/n
    bands.push_back({n + 1, 2 * n - 1, 2.0, -1.0 / static_cast<double>(n)});
  return bands;
}

std::vector<WeightBand> bands_sv(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (n == 1) return {};  // S_1 = V_1
  return {{n + 1, 2 * n - 1, -2.0, 1.0 / static_cast<double>(n)}};
}

namespace detail {

namespace {
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return (a >= 0) ? a / b : -((-a + b - 1) / b);
}
}  // namespace

double alternating_reciprocal_sum(std::int64_t t0, std::int64_t t1, double x) {
  if (t1 < t0) return 0.0;
  using boost::math::digamma;
  // Split into even t = 2s and odd t = 2s + 1.
  const std::int64_t s0e = (t0 + 1) / 2, s1e = t1 / 2;
  const std::int64_t s0o = t0 / 2, s1o = floor_div(t1 - 1, 2);
  double even = 0.0, odd = 0.0;
  if (s0e <= s1e)
    even = digamma(static_cast<double>(s1e) + 1.0 + 0.5 * x) -
           digamma(static_cast<double>(s0e) + 0.5 * x);
  if (s0o <= s1o)
    odd = digamma(static_cast<double>(s1o) + 1.0 + 0.5 * (x + 1.0)) -
          digamma(static_cast<double>(s0o) + 0.5 * (x + 1.0));
  return 0.5 * (even - odd);
}

}  // namespace detail

namespace {

// Synthesis bases depend only on the grid size; share them across tables.
std::shared_ptr<const Eigen::MatrixXcd> shared_basis(std::int64_t m) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const Eigen::MatrixXcd>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // basis(p, r) = exp(i r h (p + 1/2)) = exp(i pi r (2p+1) / m); the root
  // table keeps every entry one polar() call from the exact angle.
  std::vector<Complex> roots(2 * m);
  for (std::int64_t t = 0; t < 2 * m; ++t)
    roots[t] = std::polar(1.0, kPi * static_cast<double>(t) / static_cast<double>(m));
  auto basis = std::make_shared<Eigen::MatrixXcd>(m, m);
  for (std::int64_t p = 0; p < m; ++p) {
    const std::int64_t step = 2 * p + 1;
    std::int64_t idx = 0;
    for (std::int64_t r = 0; r < m; ++r) {
      (*basis)(p, r) = roots[idx];
      idx += step;
      if (idx >= 2 * m) idx -= 2 * m;
      if (idx >= 2 * m) idx %= 2 * m;
    }
  }
  cache.emplace(m, basis);
  return basis;
}

}  // namespace

SpectralTable::SpectralTable(const PCFunction& f, int eval_level)
    : level_(eval_level) {
  if (eval_level < f.level())
    throw std::invalid_argument("evaluation grid must refine the function grid");
  if (eval_level > 11)
    throw std::invalid_argument("evaluation grid capped at level 11");
  const PCFunction g = refine(f, eval_level);
  m_ = g.cells();
  const CVector table = detail::dft_residue_table(g.values());
  mean_ = table[0] / static_cast<double>(m_);
  residue_ = CVector::Zero(m_);
  const Complex two_pi_i{0.0, kTwoPi};
  for (std::int64_t r = 1; r < m_; ++r) {
    const Complex w = std::polar(
        1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(m_));
    residue_[r] = (Complex{1.0, 0.0} - w) * table[r] / two_pi_i;
  }
  basis_ = shared_basis(m_);
}

double SpectralTable::midpoint(std::int64_t p) const {
  return -kPi + kTwoPi * (static_cast<double>(p) + 0.5) / static_cast<double>(m_);
}

CVector SpectralTable::eval(const std::vector<WeightBand>& bands,
                            double w0) const {
  RVector recip = RVector::Zero(m_);   // R_r: sum of (-1)^t / k over the band
  RVector alt = RVector::Zero(m_);     // C_r: sum of (-1)^t over the band
  RVector factor = RVector::Zero(m_);
  for (const auto& band : bands) {
    if (band.hi < band.lo) continue;
    if (band.lo < 1) throw std::invalid_argument("band edges must be >= 1");
    recip.setZero();
    alt.setZero();
    const std::int64_t span = band.hi - band.lo + 1;
    if (span <= 8 * m_) {
      // Direct pass over the band; exactly the sums the digamma path folds.
      std::int64_t r = band.lo % m_;
      std::int64_t t = band.lo / m_;
      for (std::int64_t k = band.lo; k <= band.hi; ++k) {
        const double sign = (t & 1) ? -1.0 : 1.0;
        recip[r] += sign / static_cast<double>(k);
        alt[r] += sign;
        if (++r == m_) {
          r = 0;
          ++t;
        }
      }
    } else {
      const double md = static_cast<double>(m_);
      for (std::int64_t r = 1; r < m_; ++r) {
        std::int64_t t0 = 0;
        if (band.lo > r) t0 = (band.lo - r + m_ - 1) / m_;
        const std::int64_t t1 = (band.hi - r) / m_;
        if (t1 < t0) continue;
        recip[r] = detail::alternating_reciprocal_sum(
                       t0, t1, static_cast<double>(r) / md) /
                   md;
        const std::int64_t count = t1 - t0 + 1;
        alt[r] = (count & 1) ? ((t0 & 1) ? -1.0 : 1.0) : 0.0;
      }
    }
    for (std::int64_t r = 1; r < m_; ++r) {
      const std::int64_t rm = m_ - r;
      factor[r] += band.a * (recip[r] + recip[rm]) +
                   band.b * (alt[r] + alt[rm]);
    }
  }
  CVector b = CVector::Zero(m_);
  for (std::int64_t r = 1; r < m_; ++r) b[r] = residue_[r] * factor[r];
  CVector out = (*basis_) * b;
  out.array() += w0 * mean_;
  return out;
}

CVector SpectralTable::partial_sum(std::int64_t n) const {
  return eval(bands_partial(n), 1.0);
}

CVector SpectralTable::fejer(std::int64_t n) const {
  return eval(bands_fejer(n), 1.0);
}

CVector SpectralTable::vp(std::int64_t n) const { return eval(bands_vp(n), 1.0); }

CVector SpectralTable::sv(std::int64_t n) const { return eval(bands_sv(n), 0.0); }

}  // namespace cesaro
