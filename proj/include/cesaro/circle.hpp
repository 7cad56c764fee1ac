#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace cesaro {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using BArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

class GridSet;

/// Piecewise constant complex function on the dyadic grid of T = [-pi, pi).
/// Level m splits T into 2^m half-open cells [a_i, a_{i+1}); `values` holds
/// one complex number per cell. This is the only function representation in
/// the library, and it is closed under everything done to it: integrals
/// against exponentials and cotangent kernels have cellwise closed forms, so
/// no operation ever resamples or runs a quadrature rule.
class PCFunction {
public:
  PCFunction(int level, CVector values);

  int level() const { return level_; }
  std::int64_t cells() const { return values_.size(); }
  const CVector& values() const { return values_; }
  Complex value(std::int64_t i) const { return values_[i]; }

  double cell_width() const { return kTwoPi / static_cast<double>(cells()); }
  double cell_left(std::int64_t i) const;
  double cell_mid(std::int64_t i) const;
  /// Index of the cell containing y; y must lie in [-pi, pi).
  std::int64_t cell_of(double y) const;
  bool is_real() const;

private:
  int level_;
  CVector values_;
};

/// Union of grid cells at a fixed dyadic level, stored as a boolean mask.
class GridSet {
public:
  GridSet(int level, BArray mask);
  static GridSet empty(int level);
  static GridSet full(int level);

  int level() const { return level_; }
  std::int64_t cells() const { return mask_.size(); }
  const BArray& mask() const { return mask_; }
  bool cell(std::int64_t i) const { return mask_[i]; }
  std::int64_t count() const { return mask_.count(); }

private:
  int level_;
  BArray mask_;
};

/// Trigonometric polynomial sum_{|k| <= degree} c_k e^{iky}, dense storage,
/// coefficient k at position k + degree.
class TrigPoly {
public:
  TrigPoly(std::int64_t degree, CVector coeffs);
  static TrigPoly zero(std::int64_t degree);

  std::int64_t degree() const { return degree_; }
  const CVector& coeffs() const { return coeffs_; }
  Complex coeff(std::int64_t k) const;  // zero outside the band
  void set_coeff(std::int64_t k, Complex c);

private:
  std::int64_t degree_;
  CVector coeffs_;
};

enum class Lp { one, two, infinity };

double measure(const GridSet& s);
GridSet refine(const GridSet& s, int level);
GridSet complement(const GridSet& s);
GridSet set_union(const GridSet& a, const GridSet& b);
GridSet set_intersect(const GridSet& a, const GridSet& b);
GridSet set_difference(const GridSet& a, const GridSet& b);
bool contains(const GridSet& s, double y);

PCFunction refine(const PCFunction& f, int level);
PCFunction indicator(const GridSet& s);
/// f(x) e^{i theta x} realized on the grid: each cell value picks up the
/// phase at its cell midpoint, which keeps |f| untouched cell by cell.
PCFunction modulate(const PCFunction& f, std::int64_t theta);
PCFunction abs(const PCFunction& f);
PCFunction scaled(const PCFunction& f, Complex c);
PCFunction sum(const PCFunction& a, const PCFunction& b);

Complex integral(const PCFunction& f);  // int_T f dx
Complex integral_over(const PCFunction& f, const GridSet& s);
double abs_integral_over(const PCFunction& f, const GridSet& s);
double lp_norm(const PCFunction& f, Lp p);

/// hat f(k) = (1/2pi) int_T f(x) e^{-ikx} dx, cellwise closed form. For cell
/// [a,b) with value v and k != 0 the contribution is
/// v (e^{-ika} - e^{-ikb}) / (2 pi i k); for k = 0 it is v (b-a) / (2 pi).
Complex fourier_coefficient(const PCFunction& f, std::int64_t k);
/// All coefficients |k| <= degree at once (residue-table accelerated, exact).
TrigPoly bandlimit(const PCFunction& f, std::int64_t degree);

Complex eval_trig(const TrigPoly& p, double y);
TrigPoly product(const TrigPoly& a, const TrigPoly& b);
TrigPoly poly_sum(const TrigPoly& a, const TrigPoly& b);
TrigPoly poly_scaled(const TrigPoly& a, Complex c);
double l2_norm(const TrigPoly& p);  // sqrt(int_T |p|^2) = sqrt(2 pi sum |c_k|^2)
/// First and last k with c_k != 0; returns false when p is identically zero.
bool support_bounds(const TrigPoly& p, std::int64_t& lo, std::int64_t& hi);

std::string to_json(const PCFunction& f);
PCFunction pcfunction_from_json(const std::string& text);

namespace detail {
/// S(r) = sum_i v_i e^{-2 pi i r i / M}, r = 0..M-1, with exact root-table
/// index arithmetic (no accumulated phase drift).
CVector dft_residue_table(const CVector& values);
std::uint64_t splitmix64(std::uint64_t& state);
double uniform01(std::uint64_t& state);  // in [0,1), reproducible bit recipe
}  // namespace detail

}  // namespace cesaro
