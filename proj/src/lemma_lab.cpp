#include "cesaro/lemma_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cesaro/kernels.hpp"

namespace cesaro {

namespace {

std::int64_t grid_points(int level) { return std::int64_t{1} << level; }

double cell_mid_at(int level, std::int64_t p) {
  const double h = kTwoPi / static_cast<double>(grid_points(level));
  return -kPi + h * (static_cast<double>(p) + 0.5);
}

/// Integral over the masked cells of |a|^2 (optionally times |b|^2).
double masked_energy(const CVector& a, const CVector* b, const GridSet* region,
                     double h) {
  double acc = 0.0;
  for (std::int64_t p = 0; p < a.size(); ++p) {
    if (region && !region->cell(p)) continue;
    double term = std::norm(a[p]);
    if (b) term *= std::norm((*b)[p]);
    acc += term;
  }
  return acc * h;
}

void require_odd_above(std::int64_t v, std::int64_t floor_excl,
                       const char* what) {
  if (v <= floor_excl || v % 2 == 0)
    throw std::invalid_argument(std::string(what) +
                                " must be an odd integer greater than " +
                                std::to_string(floor_excl));
}

bool families_equal(IntervalFamily a, IntervalFamily b) {
  auto key = [](const DyadicInterval& iv) {
    return std::pair<int, std::int64_t>(iv.level, iv.index);
  };
  auto lt = [&](const DyadicInterval& x, const DyadicInterval& y) {
    return key(x) < key(y);
  };
  std::sort(a.intervals.begin(), a.intervals.end(), lt);
  std::sort(b.intervals.begin(), b.intervals.end(), lt);
  return a.intervals == b.intervals;
}

/// Deterministic worker pool: fn(i) for i = 0..count-1, any schedule; the
/// caller owns index-addressed result slots, so merges do not depend on the
/// schedule. The first worker exception is rethrown after the join.
template <typename Fn>
void parallel_for_index(std::size_t count, int jobs, Fn&& fn) {
  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                              : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min({workers, 32u,
                                   static_cast<unsigned>(count ? count : 1)}));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

/// Aggregates repeated hard checks by id; `worst` is always a violation
/// margin (larger = worse), so the fold keeps the worst witness.
void fold_hard(std::vector<HardCheck>& agg, const HardCheck& h) {
  for (auto& existing : agg) {
    if (existing.check_id != h.check_id) continue;
    existing.pass = existing.pass && h.pass;
    if (h.worst > existing.worst) {
      existing.worst = h.worst;
      existing.detail = h.detail;
    }
    return;
  }
  agg.push_back(h);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

LabParams default_lab_params() {
  LabParams p;
  p.lemma_seq = make_lacunary(3.0, 10, 32);
  p.replacement_seq = make_delta_growth(0.3, 10, 64);
  p.convergence_seq = make_lacunary(2.0, 2, 32);  // n_j = 2^j
  return p;
}

double lambda_for(const PCFunction& f, double multiplier) {
  if (!(multiplier > 1.0))
    throw std::invalid_argument(
        "threshold multiplier must exceed 1 (decomposition threshold)");
  return multiplier * lp_norm(f, Lp::one) / kTwoPi;
}

// --- hard identities -------------------------------------------------------

std::vector<HardCheck> cz_invariant_checks(const std::string& item,
                                           const PCFunction& f,
                                           double lambda) {
  const CZDecomposition cz = cz_decompose(f, lambda);
  const double l1 = lp_norm(f, Lp::one);
  std::vector<HardCheck> out;
  auto push = [&](const char* id, double worst, double tol) {
    out.push_back({id, item + " lambda=" + fmt(lambda), worst, worst <= tol});
  };

  CVector recon = cz.good.values();
  for (const auto& [iv, part] : cz.bad) recon += part.values();
  push("cz_reconstruction", (recon - f.values()).cwiseAbs().maxCoeff(), 1e-10);

  push("cz_good_linf",
       cz.good.values().cwiseAbs().maxCoeff() - 2.0 * lambda, 1e-12 * lambda);
  push("cz_good_l1", lp_norm(cz.good, Lp::one) - 2.0 * l1, 1e-12 * l1);

  double mean_worst = 0.0;
  double avg_low = 0.0, avg_high = 0.0;
  for (const auto& [iv, part] : cz.bad) {
    mean_worst = std::max(mean_worst, std::abs(integral(part)));
    const GridSet cells = refine(dilate(iv, 1), f.level());
    const double avg = abs_integral_over(f, cells) / measure(iv);
    avg_low = std::max(avg_low, lambda - avg);        // require avg > lambda
    avg_high = std::max(avg_high, avg - 2.0 * lambda);  // require avg <= 2 lambda
  }
  push("cz_bad_mean_zero", mean_worst, 1e-10 * std::max(1.0, l1));
  push("cz_average_window", std::max(avg_low, avg_high), 1e-12 * lambda);
  push("cz_family_measure", cz.measure_family() - l1 / lambda,
       1e-12 * std::max(1.0, l1 / lambda));

  bool disjoint = true;
  for (std::size_t i = 0; i < cz.family.size() && disjoint; ++i)
    for (std::size_t j = 0; j < cz.family.size() && disjoint; ++j)
      if (i != j && interval_contains(cz.family.intervals[i],
                                      cz.family.intervals[j]))
        disjoint = false;
  out.push_back({"cz_family_disjoint", item, disjoint ? 0.0 : 1.0, disjoint});
  return out;
}

HardCheck cz_family_invariance_check(const std::string& item,
                                     const PCFunction& f, double lambda) {
  const IntervalFamily base = cz_decompose(f, lambda).family;
  bool ok = true;
  std::string which;
  if (!families_equal(base, cz_decompose(abs(f), lambda).family)) {
    ok = false;
    which = "abs";
  }
  for (std::int64_t k : {3, -7}) {
    if (!families_equal(base, cz_decompose(modulate(f, k), lambda).family)) {
      ok = false;
      which += " modulate(" + std::to_string(k) + ")";
    }
  }
  return {"cz_family_invariance", item + " " + which, ok ? 0.0 : 1.0, ok};
}

HardCheck check_domination(const std::string& item, const PCFunction& f,
                           std::int64_t l, int eval_level) {
  const std::int64_t pts = grid_points(eval_level);
  const PCFunction fa = abs(f);
  double worst = -1e300;
  for (std::int64_t p = 0; p < pts; ++p) {
    const double y = cell_mid_at(eval_level, p);
    const Complex s = partial_sum(f, l, y);
    const Complex st = modified_partial_sum(f, l, l, y);
    const double e = e_operator(fa, l, l, y).real();
    worst = std::max(worst, std::abs(s - st) - e);
  }
  return {"sl_domination", item + " l=" + std::to_string(l), worst,
          worst <= 1e-9};
}

HardCheck check_modified_partial_bound(const std::string& item,
                                       const PCFunction& f, std::int64_t l,
                                       int eval_level) {
  const std::int64_t pts = grid_points(eval_level);
  const double l1 = lp_norm(f, Lp::one);
  const PCFunction g1 = modulate(f, -(l + 1));
  const PCFunction g2 = modulate(f, l);
  double worst = -1e300;
  for (std::int64_t p = 0; p < pts; ++p) {
    const double y = cell_mid_at(eval_level, p);
    const double lhs = std::norm(modified_partial_sum(f, l, l, y));
    const double rhs = l1 * l1 + std::norm(hilbert_modified(g1, l, y)) +
                       std::norm(hilbert_modified(g2, l, y));
    worst = std::max(worst, (lhs - rhs) / std::max(1.0, rhs));
  }
  return {"modified_partial_sq_bound", item + " l=" + std::to_string(l), worst,
          worst <= 1e-9};
}

HardCheck check_e_vanishing(const std::string& item, const PCFunction& f,
                            double lambda, std::int64_t gamma, std::int64_t l,
                            int grid_level) {
  const CZDecomposition cz = cz_decompose(f, lambda);
  const PCFunction f0 = bad_sum(cz);
  const CVector grid = e_operator_grid(f0, l, l, grid_level);
  const GridSet outside =
      complement(dilated_union(cz.family, gamma, grid_level));
  double worst = 0.0;
  for (std::int64_t p = 0; p < grid.size(); ++p)
    if (outside.cell(p)) worst = std::max(worst, std::abs(grid[p]));
  return {"e_vanishing_outside",
          item + " l=" + std::to_string(l) + " lambda=" + fmt(lambda), worst,
          worst <= 1e-10};
}

// --- composite addends and orthogonality -----------------------------------

std::vector<TrigPoly> composite_addend_polys(
    const PCFunction& f, const IndexSequence& seq, std::int64_t N,
    std::int64_t beta, double lambda, LogBase log_base,
    const std::optional<BlockCoords>& block) {
  require_odd_above(beta, 7, "mask dilation width");
  if (N < 1 || static_cast<std::size_t>(N) > seq.size())
    throw std::invalid_argument("addend count exceeds the sequence");
  const CZDecomposition cz = cz_decompose(f, lambda);
  std::vector<TrigPoly> out;
  out.reserve(N);
  for (std::int64_t j = 1; j <= N; ++j) {
    const std::int64_t n = seq.term_i64(j);
    const auto m = m_param(seq, j).convert_to<std::int64_t>();
    if (2 * n - 1 + m > (std::int64_t{1} << 20))
      throw std::invalid_argument(
          "addend order too large for coefficient materialization");
    const double thr = block ? block_beta_param(seq, *block, j, log_base)
                             : beta_param(seq, j, log_base);
    const IntervalFamily fam = filter_beta(cz.family, thr);
    TrigPoly sv = sv_poly(f, n);
    if (fam.empty()) {
      out.push_back(std::move(sv));  // the mask is exactly 1
      continue;
    }
    const PCFunction ind =
        indicator(complement(dilated_union(fam, beta, f.level())));
    out.push_back(product(sv, fejer_poly(ind, m)));
  }
  return out;
}

namespace {

struct SupportWindow {
  std::int64_t lo = 0, hi = -1;  // smallest/largest |k| with a nonzero coeff
  bool empty() const { return hi < lo; }
};

SupportWindow abs_support(const TrigPoly& p) {
  SupportWindow w{std::numeric_limits<std::int64_t>::max(), -1};
  for (std::int64_t k = -p.degree(); k <= p.degree(); ++k) {
    if (p.coeff(k) == Complex{0.0, 0.0}) continue;
    w.lo = std::min(w.lo, std::abs(k));
    w.hi = std::max(w.hi, std::abs(k));
  }
  return w;
}

}  // namespace

OrthoEqualityResult check_orthogonality_equality(const PCFunction& f,
                                                 const IndexSequence& seq,
                                                 std::int64_t N,
                                                 std::int64_t beta,
                                                 double lambda,
                                                 LogBase log_base) {
  if (seq.kind != SequenceKind::lacunary || !(seq.q > 2.5))
    throw std::invalid_argument(
        "orthogonality check needs a lacunary sequence with ratio q > 2.5");
  const auto polys =
      composite_addend_polys(f, seq, N, beta, lambda, log_base, std::nullopt);

  OrthoEqualityResult res;
  res.N = N;
  res.windows_exact = true;
  res.disjoint = true;

  std::vector<SupportWindow> windows;
  std::int64_t max_deg = 0;
  for (std::int64_t j = 1; j <= N; ++j) {
    const TrigPoly& p = polys[j - 1];
    max_deg = std::max(max_deg, p.degree());
    const std::int64_t n = seq.term_i64(j);
    const std::int64_t klo = (9 * n + 9) / 10;   // ceil(0.9 n)
    const std::int64_t khi = (21 * n) / 10;      // floor(2.1 n)
    const SupportWindow w = abs_support(p);
    if (!w.empty() && (w.lo < klo || w.hi > khi)) res.windows_exact = false;
    windows.push_back(w);
  }

  std::vector<SupportWindow> occupied;
  for (const auto& w : windows)
    if (!w.empty()) occupied.push_back(w);
  std::sort(occupied.begin(), occupied.end(),
            [](const SupportWindow& a, const SupportWindow& b) {
              return a.lo < b.lo;
            });
  for (std::size_t i = 1; i < occupied.size(); ++i)
    if (occupied[i].lo <= occupied[i - 1].hi) res.disjoint = false;

  CVector acc = CVector::Zero(2 * max_deg + 1);
  double sum_sq = 0.0;
  for (const auto& p : polys) {
    const std::int64_t off = max_deg - p.degree();
    acc.segment(off, 2 * p.degree() + 1) += p.coeffs();
    const double norm = l2_norm(p);
    sum_sq += norm * norm;
  }
  const double lhs = kTwoPi * acc.squaredNorm();
  res.defect = std::abs(lhs - sum_sq) / std::max(sum_sq, 1e-300);
  if (sum_sq == 0.0) res.defect = std::abs(lhs);
  return res;
}

std::vector<BoundRatioReport> check_orthogonality_bound(
    const std::string& item, const PCFunction& f, const IndexSequence& seq,
    const std::vector<std::int64_t>& n_values, std::int64_t beta,
    double lambda, LogBase log_base) {
  if (seq.kind != SequenceKind::lacunary || !(seq.q > 2.5))
    throw std::invalid_argument(
        "orthogonality check needs a lacunary sequence with ratio q > 2.5");
  if (n_values.empty()) return {};
  const std::int64_t n_max =
      *std::max_element(n_values.begin(), n_values.end());
  const auto polys = composite_addend_polys(f, seq, n_max, beta, lambda,
                                            log_base, std::nullopt);
  const double l1 = lp_norm(f, Lp::one);

  std::int64_t max_deg = 0;
  for (const auto& p : polys) max_deg = std::max(max_deg, p.degree());
  CVector acc = CVector::Zero(2 * max_deg + 1);

  std::vector<BoundRatioReport> out;
  for (std::int64_t j = 1; j <= n_max; ++j) {
    const TrigPoly& p = polys[j - 1];
    acc.segment(max_deg - p.degree(), 2 * p.degree() + 1) += p.coeffs();
    if (std::find(n_values.begin(), n_values.end(), j) == n_values.end())
      continue;
    const double lhs = kTwoPi * acc.squaredNorm();
    const double logN = std::log(static_cast<double>(j) + 1.0);
    const double rhs = static_cast<double>(j) * std::pow(logN, 5) * l1 * lambda;
    out.push_back(make_ratio(
        "orthogonality_energy", item,
        {{"N", std::to_string(j)},
         {"q", fmt(seq.q)},
         {"beta", std::to_string(beta)},
         {"lambda", fmt(lambda)}},
        lhs, rhs));
  }
  return out;
}

// --- measured energy inequalities ------------------------------------------

namespace {

double log5_rhs(std::int64_t N, double l1, double lambda) {
  const double logN = std::log(static_cast<double>(N) + 1.0);
  return static_cast<double>(N) * std::pow(logN, 5) * l1 * lambda;
}

}  // namespace

BoundRatioReport check_hilbert_energy_filtered(const std::string& item,
                                               const PCFunction& f,
                                               double lambda,
                                               std::int64_t gamma,
                                               std::int64_t beta,
                                               std::int64_t n, std::int64_t m,
                                               int grid_level) {
  require_odd_above(gamma, 5, "family dilation width");
  require_odd_above(beta, gamma, "mask dilation width");
  if (m < 1 || n > 100 * m)
    throw std::invalid_argument("filtered-energy check requires n <= 100 m");
  const CZDecomposition cz = cz_decompose(f, lambda);
  const CVector hg = hilbert_grid(f, n, grid_level);
  const double h = kTwoPi / static_cast<double>(hg.size());
  double best = 0.0;
  int best_s = 1;
  for (int s = 1; s <= grid_level; ++s) {
    const IntervalFamily fam =
        filter_beta(cz.family, kTwoPi / static_cast<double>(1LL << s));
    if (fam.empty()) continue;
    const GridSet region = dilated_union(fam, gamma, grid_level);
    const CVector sigma = sigma_complement_grid(fam, beta, m, grid_level);
    const double lhs = masked_energy(hg, &sigma, &region, h);
    if (lhs > best) {
      best = lhs;
      best_s = s;
    }
  }
  return make_ratio("hilbert_energy_filtered", item,
                    {{"n", std::to_string(n)},
                     {"m", std::to_string(m)},
                     {"gamma", std::to_string(gamma)},
                     {"beta", std::to_string(beta)},
                     {"lambda", fmt(lambda)},
                     {"eps_scale", std::to_string(best_s)}},
                    best, lp_norm(f, Lp::one) * lambda);
}

BoundRatioReport check_partial_energy_filtered(const std::string& item,
                                               const PCFunction& f,
                                               double lambda,
                                               std::int64_t gamma,
                                               std::int64_t beta,
                                               std::int64_t l, std::int64_t m,
                                               int grid_level) {
  require_odd_above(gamma, 5, "family dilation width");
  require_odd_above(beta, gamma, "mask dilation width");
  if (m < 1 || l > 100 * m)
    throw std::invalid_argument("filtered-energy check requires l <= 100 m");
  const CZDecomposition cz = cz_decompose(f, lambda);
  const SpectralTable table(f, grid_level);
  const CVector sg = table.partial_sum(l);
  const double h = kTwoPi / static_cast<double>(sg.size());
  double best = 0.0;
  int best_s = 1;
  for (int s = 1; s <= grid_level; ++s) {
    const IntervalFamily fam =
        filter_beta(cz.family, kTwoPi / static_cast<double>(1LL << s));
    if (fam.empty()) continue;
    const GridSet region = dilated_union(fam, gamma, grid_level);
    const CVector sigma = sigma_complement_grid(fam, beta, m, grid_level);
    const double lhs = masked_energy(sg, &sigma, &region, h);
    if (lhs > best) {
      best = lhs;
      best_s = s;
    }
  }
  return make_ratio("partial_energy_filtered", item,
                    {{"l", std::to_string(l)},
                     {"m", std::to_string(m)},
                     {"gamma", std::to_string(gamma)},
                     {"beta", std::to_string(beta)},
                     {"lambda", fmt(lambda)},
                     {"eps_scale", std::to_string(best_s)}},
                    best, lp_norm(f, Lp::one) * lambda);
}

BoundRatioReport check_energy_residual(const std::string& item,
                                       const PCFunction& f, double lambda,
                                       std::int64_t gamma,
                                       const IndexSequence& seq,
                                       std::int64_t N, EnergyKind kind,
                                       int grid_level, LogBase log_base) {
  require_odd_above(gamma, 5, "family dilation width");
  if (kind == EnergyKind::sv &&
      (seq.kind != SequenceKind::lacunary || !(seq.q >= 2.0)))
    throw std::invalid_argument(
        "sv residual check needs a lacunary sequence with ratio q >= 2");
  const CZDecomposition cz = cz_decompose(f, lambda);
  const GridSet gammaF = dilated_union(cz.family, gamma, grid_level);
  const double h = kTwoPi / static_cast<double>(grid_points(grid_level));
  std::unique_ptr<SpectralTable> table;
  if (kind != EnergyKind::hilbert)
    table = std::make_unique<SpectralTable>(f, grid_level);
  double acc = 0.0;
  for (std::int64_t j = 1; j <= N; ++j) {
    const std::int64_t n = seq.term_i64(j);
    const GridSet region = set_difference(
        gammaF,
        dilated_union(filter_beta(cz.family, beta_param(seq, j, log_base)),
                      gamma, grid_level));
    CVector grid;
    switch (kind) {
      case EnergyKind::hilbert:
        grid = hilbert_grid(modulate(f, -2 * n), n, grid_level);
        break;
      case EnergyKind::partial:
        grid = table->partial_sum(2 * n - 1);
        break;
      case EnergyKind::sv:
        grid = table->sv(n);
        break;
    }
    acc += masked_energy(grid, nullptr, &region, h);
  }
  const char* id = kind == EnergyKind::hilbert   ? "hilbert_energy_residual"
                   : kind == EnergyKind::partial ? "partial_energy_residual"
                                                 : "sv_energy_residual";
  return make_ratio(id, item,
                    {{"N", std::to_string(N)},
                     {"gamma", std::to_string(gamma)},
                     {"lambda", fmt(lambda)}},
                    acc, log5_rhs(N, lp_norm(f, Lp::one), lambda));
}

BoundRatioReport residual_disjointness_report(const std::string& item,
                                              const PCFunction& f,
                                              double lambda,
                                              std::int64_t gamma,
                                              const IndexSequence& seq,
                                              std::int64_t N, int grid_level,
                                              LogBase log_base) {
  const CZDecomposition cz = cz_decompose(f, lambda);
  std::vector<GridSet> delta;
  delta.reserve(N);
  for (std::int64_t j = 1; j <= N; ++j) {
    const double nj = static_cast<double>(seq.term_i64(j));
    delta.push_back(set_difference(
        dilated_union(filter_beta(cz.family, 16.0 / nj), gamma, grid_level),
        dilated_union(filter_beta(cz.family, beta_param(seq, j, log_base)),
                      gamma, grid_level)));
  }
  const double logN = log_in_base(static_cast<double>(N), log_base);
  const auto k0 = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(logN * logN)));
  std::int64_t pairs = 0, violations = 0;
  for (std::int64_t j = 1; j <= N; ++j) {
    for (std::int64_t k = k0; j + k <= N; ++k) {
      ++pairs;
      if (measure(set_intersect(delta[j - 1], delta[j + k - 1])) > 0.0)
        ++violations;
    }
  }
  return make_ratio("residual_delta_overlap", item,
                    {{"N", std::to_string(N)},
                     {"k0", std::to_string(k0)},
                     {"lambda", fmt(lambda)}},
                    static_cast<double>(violations),
                    static_cast<double>(std::max<std::int64_t>(pairs, 1)));
}

BoundRatioReport check_energy_complement(const std::string& item,
                                         const PCFunction& f, double lambda,
                                         std::int64_t gamma, EnergyKind kind,
                                         std::int64_t order, int grid_level) {
  require_odd_above(gamma, 5, "family dilation width");
  const CZDecomposition cz = cz_decompose(f, lambda);
  const GridSet region =
      complement(dilated_union(cz.family, gamma, grid_level));
  CVector grid;
  const char* id = "";
  switch (kind) {
    case EnergyKind::hilbert:
      grid = hilbert_grid(f, order, grid_level);
      id = "hilbert_energy_complement";
      break;
    case EnergyKind::partial:
      grid = SpectralTable(f, grid_level).partial_sum(order);
      id = "partial_energy_complement";
      break;
    case EnergyKind::sv:
      grid = SpectralTable(f, grid_level).sv(order);
      id = "sv_energy_complement";
      break;
  }
  const double h = kTwoPi / static_cast<double>(grid.size());
  return make_ratio(id, item,
                    {{"order", std::to_string(order)},
                     {"gamma", std::to_string(gamma)},
                     {"lambda", fmt(lambda)}},
                    masked_energy(grid, nullptr, &region, h),
                    lp_norm(f, Lp::one) * lambda);
}

BoundRatioReport check_sv_energy_weighted(const std::string& item,
                                          const PCFunction& f, double lambda,
                                          std::int64_t beta,
                                          const IndexSequence& seq,
                                          std::int64_t N, int grid_level,
                                          LogBase log_base, bool over_gammaF,
                                          std::int64_t gamma) {
  if (seq.kind != SequenceKind::lacunary || !(seq.q >= 2.0))
    throw std::invalid_argument(
        "weighted sv check needs a lacunary sequence with ratio q >= 2");
  if (over_gammaF) {
    require_odd_above(gamma, 5, "family dilation width");
    require_odd_above(beta, gamma, "mask dilation width");
  } else {
    require_odd_above(beta, 7, "mask dilation width");
  }
  const CZDecomposition cz = cz_decompose(f, lambda);
  const SpectralTable table(f, grid_level);
  const double h = kTwoPi / static_cast<double>(grid_points(grid_level));
  std::optional<GridSet> region;
  if (over_gammaF) region = dilated_union(cz.family, gamma, grid_level);
  double acc = 0.0;
  for (std::int64_t j = 1; j <= N; ++j) {
    const CVector sv = table.sv(seq.term_i64(j));
    const CVector sigma = sigma_complement_grid(
        filter_beta(cz.family, beta_param(seq, j, log_base)), beta,
        m_param(seq, j).convert_to<std::int64_t>(), grid_level);
    acc += masked_energy(sv, &sigma, region ? &*region : nullptr, h);
  }
  return make_ratio(
      over_gammaF ? "sv_energy_weighted_gammaF" : "sv_energy_weighted_full",
      item,
      {{"N", std::to_string(N)},
       {"beta", std::to_string(beta)},
       {"gamma", over_gammaF ? std::to_string(gamma) : std::string("-")},
       {"lambda", fmt(lambda)}},
      acc, log5_rhs(N, lp_norm(f, Lp::one), lambda));
}

std::vector<BoundRatioReport> bounded_ratio_battery(const std::string& item,
                                                    const PCFunction& f,
                                                    const LabParams& params,
                                                    int grid_level) {
  const IndexSequence& seq = params.lemma_seq;
  const std::int64_t n_max =
      *std::max_element(params.n_sweep.begin(), params.n_sweep.end());
  if (static_cast<std::size_t>(n_max) > seq.size())
    throw std::invalid_argument("N sweep exceeds the sequence length");
  const int g = grid_level;
  const double h = kTwoPi / static_cast<double>(grid_points(g));
  const double l1 = lp_norm(f, Lp::one);
  const SpectralTable table(f, g);

  // Threshold-independent grids, shared across the lambda loop.
  std::vector<CVector> sv_g, sp_g, hmod_g;
  std::vector<std::int64_t> n_of(n_max + 1), m_of(n_max + 1);
  for (std::int64_t j = 1; j <= n_max; ++j) {
    const std::int64_t n = seq.term_i64(j);
    n_of[j] = n;
    m_of[j] = m_param(seq, j).convert_to<std::int64_t>();
    sv_g.push_back(table.sv(n));
    sp_g.push_back(table.partial_sum(2 * n - 1));
    hmod_g.push_back(hilbert_grid(modulate(f, -2 * n), n, g));
  }
  std::map<std::int64_t, CVector> hn_g, sn_g;
  for (std::int64_t N : params.n_sweep) {
    hn_g.emplace(N, hilbert_grid(f, n_of[N], g));
    sn_g.emplace(N, table.partial_sum(n_of[N]));
  }

  std::vector<BoundRatioReport> out;
  for (double mult : params.lambda_multipliers) {
    const double lam = lambda_for(f, mult);
    const CZDecomposition cz = cz_decompose(f, lam);
    const IntervalFamily& F = cz.family;
    const GridSet gammaF = dilated_union(F, params.gamma, g);

    // Filtered subfamilies form a chain, so their size keys both the
    // dilation masks and the smoothed-indicator tables.
    std::map<std::size_t, GridSet> region_cache;
    std::map<std::size_t, std::shared_ptr<SpectralTable>> sigma_tables;
    std::map<std::pair<std::size_t, std::int64_t>, CVector> sigma_cache;
    auto region_of = [&](const IntervalFamily& fam) -> const GridSet& {
      auto it = region_cache.find(fam.size());
      if (it == region_cache.end())
        it = region_cache
                 .emplace(fam.size(), dilated_union(fam, params.gamma, g))
                 .first;
      return it->second;
    };
    auto sigma_of = [&](const IntervalFamily& fam,
                        std::int64_t m) -> const CVector& {
      const auto key = std::make_pair(fam.size(), m);
      auto it = sigma_cache.find(key);
      if (it != sigma_cache.end()) return it->second;
      if (fam.empty())
        return sigma_cache
            .emplace(key, CVector::Constant(grid_points(g), Complex{1.0, 0.0}))
            .first->second;
      auto tit = sigma_tables.find(fam.size());
      if (tit == sigma_tables.end()) {
        const GridSet masked = dilated_union(fam, params.beta, g);
        tit = sigma_tables
                  .emplace(fam.size(), std::make_shared<SpectralTable>(
                                           indicator(complement(masked)), g))
                  .first;
      }
      return sigma_cache.emplace(key, tit->second->fejer(m)).first->second;
    };

    const ParamList base_params{{"lambda_mult", fmt(mult)}};

    // Masked single-order energies, worst case over the dyadic scale sweep.
    for (std::int64_t N : params.n_sweep) {
      const std::int64_t n = n_of[N], m = m_of[N];
      double best_h = 0.0, best_s = 0.0;
      int s_h = 1, s_s = 1;
      for (int s = 1; s <= g; ++s) {
        const IntervalFamily fam =
            filter_beta(F, kTwoPi / static_cast<double>(1LL << s));
        if (fam.empty()) continue;
        const GridSet& region = region_of(fam);
        const CVector& sigma = sigma_of(fam, m);
        const double e_h = masked_energy(hn_g.at(N), &sigma, &region, h);
        const double e_s = masked_energy(sn_g.at(N), &sigma, &region, h);
        if (e_h > best_h) { best_h = e_h; s_h = s; }
        if (e_s > best_s) { best_s = e_s; s_s = s; }
      }
      ParamList ph = base_params;
      ph.insert(ph.end(), {{"N", std::to_string(N)},
                           {"n", std::to_string(n)},
                           {"m", std::to_string(m)},
                           {"eps_scale", std::to_string(s_h)}});
      out.push_back(
          make_ratio("hilbert_energy_filtered", item, ph, best_h, l1 * lam));
      ParamList ps = base_params;
      ps.insert(ps.end(), {{"N", std::to_string(N)},
                           {"n", std::to_string(n)},
                           {"m", std::to_string(m)},
                           {"eps_scale", std::to_string(s_s)}});
      out.push_back(
          make_ratio("partial_energy_filtered", item, ps, best_s, l1 * lam));
    }

    // Summed energies, prefix sums over j shared by every N in the sweep.
    std::vector<double> a_h(n_max + 1, 0.0), a_s(n_max + 1, 0.0),
        a_sv(n_max + 1, 0.0), w_full(n_max + 1, 0.0), w_gf(n_max + 1, 0.0);
    for (std::int64_t j = 1; j <= n_max; ++j) {
      const IntervalFamily fam_j =
          filter_beta(F, beta_param(seq, j, params.log_base));
      const GridSet region =
          set_difference(gammaF, region_of(fam_j));
      a_h[j] = masked_energy(hmod_g[j - 1], nullptr, &region, h);
      a_s[j] = masked_energy(sp_g[j - 1], nullptr, &region, h);
      a_sv[j] = masked_energy(sv_g[j - 1], nullptr, &region, h);
      const CVector& sigma = sigma_of(fam_j, m_of[j]);
      w_full[j] = masked_energy(sv_g[j - 1], &sigma, nullptr, h);
      w_gf[j] = masked_energy(sv_g[j - 1], &sigma, &gammaF, h);
    }
    for (std::int64_t j = 1; j <= n_max; ++j) {
      a_h[j] += a_h[j - 1];
      a_s[j] += a_s[j - 1];
      a_sv[j] += a_sv[j - 1];
      w_full[j] += w_full[j - 1];
      w_gf[j] += w_gf[j - 1];
    }
    for (std::int64_t N : params.n_sweep) {
      const double rhs = log5_rhs(N, l1, lam);
      ParamList pn = base_params;
      pn.push_back({"N", std::to_string(N)});
      out.push_back(
          make_ratio("hilbert_energy_residual", item, pn, a_h[N], rhs));
      out.push_back(
          make_ratio("partial_energy_residual", item, pn, a_s[N], rhs));
      out.push_back(make_ratio("sv_energy_residual", item, pn, a_sv[N], rhs));
      out.push_back(
          make_ratio("sv_energy_weighted_full", item, pn, w_full[N], rhs));
      out.push_back(
          make_ratio("sv_energy_weighted_gammaF", item, pn, w_gf[N], rhs));
    }
  }
  return out;
}

// --- weak type and convergence ---------------------------------------------

WeakTypeCurve check_replacement(const std::string& item, const PCFunction& f,
                                const IndexSequence& seq, std::int64_t n_max,
                                std::int64_t beta, double delta,
                                LogBase log_base,
                                const std::vector<double>& lambda_multipliers,
                                int grid_level) {
  CompositeSpec spec;
  spec.seq = seq;
  spec.N = n_max;
  spec.beta = beta;
  spec.delta = delta;
  spec.log_base = log_base;
  validate(spec);

  const SpectralTable table(f, grid_level);
  const auto plain = sv_terms_grid(table, seq, n_max);
  const double l1 = lp_norm(f, Lp::one);
  const double h = kTwoPi / static_cast<double>(table.points());

  std::vector<double> mults = lambda_multipliers;
  std::sort(mults.begin(), mults.end());

  WeakTypeCurve curve;
  curve.corpus_item = item;
  for (double mult : mults) {
    const double lam = lambda_for(f, mult);
    const auto masked = t_beta_addends_grid(f, spec, lam, grid_level);
    CVector diff = CVector::Zero(table.points());
    RVector sup = RVector::Zero(table.points());
    for (std::int64_t i = 1; i <= n_max; ++i) {
      diff += masked[i - 1] - plain[i - 1];
      sup = sup.cwiseMax(diff.cwiseAbs() / static_cast<double>(i));
    }
    const double meas = h * static_cast<double>((sup.array() > lam / 2.0).count());
    curve.lambdas.push_back(lam);
    curve.measures.push_back(meas);
    curve.bounds.push_back(std::sqrt(l1 / lam) / (1.0 - 2.0 * delta));
  }
  return curve;
}

ErrorCurve convergence_curve(const std::string& item, const PCFunction& f,
                             const IndexSequence& seq,
                             const std::vector<std::int64_t>& n_list,
                             AverageMode mode, int grid_level,
                             double threshold) {
  if (n_list.empty()) throw std::invalid_argument("empty length sweep");
  const std::int64_t n_max =
      *std::max_element(n_list.begin(), n_list.end());
  if (static_cast<std::size_t>(n_max) > seq.size())
    throw std::invalid_argument("length sweep exceeds the sequence");
  const SpectralTable table(f, grid_level);
  const CVector target = refine(f, grid_level).values();
  const double h = kTwoPi / static_cast<double>(table.points());

  ErrorCurve curve;
  curve.corpus_item = item;
  curve.mode = mode == AverageMode::full_average ? "full_average"
               : mode == AverageMode::sv_average ? "sv_average"
                                                 : "vp";
  curve.threshold = threshold;

  auto record = [&](std::int64_t n, const CVector& err) {
    curve.n_values.push_back(n);
    curve.sup_error.push_back(err.cwiseAbs().maxCoeff());
    curve.l1_error.push_back(h * err.cwiseAbs().sum());
    curve.exceed_measure.push_back(
        h * static_cast<double>((err.cwiseAbs().array() > threshold).count()));
  };

  if (mode == AverageMode::vp) {
    for (std::int64_t j : n_list)
      record(j, CVector(table.vp(seq.term_i64(j)) - target));
    return curve;
  }
  CVector running = CVector::Zero(table.points());
  for (std::int64_t j = 1; j <= n_max; ++j) {
    running += mode == AverageMode::full_average
                   ? table.partial_sum(seq.term_i64(j))
                   : table.sv(seq.term_i64(j));
    if (std::find(n_list.begin(), n_list.end(), j) == n_list.end()) continue;
    CVector err = running / static_cast<double>(j);
    if (mode == AverageMode::full_average) err -= target;
    record(j, err);
  }
  return curve;
}

HardCheck check_sv_bandlimited_vanishes(const TrigPoly& p,
                                        const IndexSequence& seq) {
  if (seq.size() == 0 || p.degree() >= seq.term_i64(1))
    throw std::invalid_argument(
        "input degree must stay below the first sequence term");
  double worst = 0.0;
  bool all_zero = true;
  for (std::size_t j = 1; j <= seq.size(); ++j) {
    const TrigPoly sv = apply_bands(p, bands_sv(seq.term_i64(j)), 0.0);
    std::int64_t lo = 0, hi = 0;
    if (support_bounds(sv, lo, hi)) {
      all_zero = false;
      worst = std::max(worst, sv.coeffs().cwiseAbs().maxCoeff());
    }
  }
  return {"sv_bandlimited_zero", "degree " + std::to_string(p.degree()), worst,
          all_zero};
}

// --- randomized set combinatorics ------------------------------------------

IntervalFamily random_family(std::uint64_t& state, int max_level) {
  if (max_level < 1 || max_level > 24)
    throw std::invalid_argument("family level out of range");
  const std::int64_t want =
      1 + static_cast<std::int64_t>(detail::splitmix64(state) % 12);
  IntervalFamily fam;
  for (int attempt = 0;
       attempt < 64 && static_cast<std::int64_t>(fam.intervals.size()) < want;
       ++attempt) {
    const int level =
        1 + static_cast<int>(detail::splitmix64(state) %
                             static_cast<std::uint64_t>(max_level));
    const std::int64_t index = static_cast<std::int64_t>(
        detail::splitmix64(state) % (std::uint64_t{1} << level));
    const DyadicInterval cand{level, index};
    bool clashes = false;
    for (const auto& iv : fam.intervals)
      if (interval_contains(iv, cand) || interval_contains(cand, iv))
        clashes = true;
    if (!clashes) fam.intervals.push_back(cand);
  }
  return fam;
}

// --- suites ------------------------------------------------------------------

SuiteResult run_kernels_suite(const LabParams& p) {
  (void)p;
  SuiteResult res;
  res.suite = "kernels";
  const std::int64_t pts = 1024;

  double id_worst = 0.0;
  double min_value = 0.0, ratio_worst = 0.0;
  for (std::int64_t i = 0; i < pts; ++i) {
    const double u = cell_mid_at(10, i);
    Complex dsum{0.0, 0.0};
    for (std::int64_t n = 0; n <= 64; ++n) {
      dsum += dirichlet_kernel(n, u);
      const double avg = dsum.real() / static_cast<double>(n + 1);
      id_worst = std::max({id_worst, std::abs(fejer_kernel(n, u) - avg),
                           std::abs(dsum.imag()) / static_cast<double>(n + 1)});
    }
  }
  res.hard.push_back({"kernel_cesaro_identity", "n<=64 on 1024 midpoints",
                      id_worst, id_worst <= 1e-10});

  for (std::int64_t n = 0; n <= 64; ++n) {
    const FejerBoundReport rep = check_fejer_bounds(n, pts);
    min_value = std::min(min_value, rep.min_value);
    ratio_worst = std::max(ratio_worst, rep.max_bound_ratio);
  }
  res.hard.push_back({"fejer_nonnegative", "n<=64", -min_value,
                      min_value >= -1e-12});
  res.hard.push_back({"fejer_upper_bound", "n<=64", ratio_worst - 1.0,
                      ratio_worst <= 1.0 + 1e-9});

  double dir_worst = 0.0;
  for (std::int64_t l : {0, 1, 2, 3, 5, 8, 13, 21, 34}) {
    for (std::int64_t i = 0; i < pts; ++i) {
      const double z = cell_mid_at(10, i);
      Complex direct{0.5, 0.0};
      for (std::int64_t k = 1; k <= l; ++k)
        direct += Complex{std::cos(k * z), 0.0};
      dir_worst = std::max(dir_worst,
                           std::abs(dirichlet_kernel(l, z) - direct));
    }
  }
  res.hard.push_back({"dirichlet_closed_form", "l<=34 on 1024 midpoints",
                      dir_worst, dir_worst <= 1e-9});
  return res;
}

SuiteResult run_cz_suite(const Corpus& corpus, const LabParams& p) {
  SuiteResult res;
  res.suite = "cz";
  std::vector<std::vector<HardCheck>> per_item(corpus.size());
  parallel_for_index(corpus.size(), p.jobs, [&](std::size_t i) {
    const auto& [name, f] = corpus[i];
    for (double mult : p.lambda_multipliers) {
      const double lam = lambda_for(f, mult);
      auto checks = cz_invariant_checks(name, f, lam);
      checks.push_back(cz_family_invariance_check(name, f, lam));
      per_item[i].insert(per_item[i].end(), checks.begin(), checks.end());
    }
  });
  for (const auto& list : per_item)
    for (const auto& h : list) fold_hard(res.hard, h);
  return res;
}

SuiteResult run_sets_suite(const LabParams& p) {
  SuiteResult res;
  res.suite = "sets";
  std::uint64_t state = p.seed ^ 0x736574735F726E67ULL;
  double level_inv_worst = 0.0;
  bool selection_ok = true;
  std::map<std::int64_t, double> worst_ratio;
  for (int trial = 0; trial < 100; ++trial) {
    const IntervalFamily fam = random_family(state, 8);
    if (fam.empty()) continue;
    for (std::int64_t gamma : {std::int64_t{7}, std::int64_t{9}, std::int64_t{11}}) {
      const double total = fam.total_measure();
      const double base = overlap_sum(fam, gamma);
      const double refined = overlap_sum(fam, gamma, fam.finest_level() + 1);
      level_inv_worst = std::max(
          level_inv_worst, std::abs(base - refined) / std::max(base, 1e-300));
      worst_ratio[gamma] = std::max(worst_ratio[gamma], base / total);
    }
    const IntervalFamily kept = maximal_selection(fam, 1);
    for (std::size_t i = 0; i < kept.size() && selection_ok; ++i)
      for (std::size_t j = 0; j < kept.size() && selection_ok; ++j) {
        if (i == j) continue;
        const DyadicInterval si = neighbor(kept.intervals[i], 1);
        const DyadicInterval sj = neighbor(kept.intervals[j], 1);
        if (interval_contains(si, sj) || interval_contains(sj, si))
          selection_ok = false;
      }
  }
  double bound_worst = 0.0;
  for (const auto& [gamma, ratio] : worst_ratio) {
    const double cap = static_cast<double>(gamma * (2 * gamma - 1));
    bound_worst = std::max(bound_worst, ratio / cap);
    res.ratios.push_back(make_ratio(
        "overlap_ratio", "random_families",
        {{"gamma", std::to_string(gamma)}, {"trials", "100"}}, ratio, cap));
  }
  res.hard.push_back({"overlap_bound", "100 random families, gamma 7/9/11",
                      bound_worst, bound_worst <= 1.0 + 1e-12});
  res.hard.push_back({"overlap_level_invariance", "refined by one level",
                      level_inv_worst, level_inv_worst <= 1e-9});
  res.hard.push_back({"selection_disjoint", "shifted maximal families",
                      selection_ok ? 0.0 : 1.0, selection_ok});
  return res;
}

SuiteResult run_hilbert_suite(const Corpus& corpus, const LabParams& p) {
  SuiteResult res;
  res.suite = "hilbert";
  const std::size_t take = std::min<std::size_t>(corpus.size(), 20);
  std::vector<std::vector<HardCheck>> hard(take);
  std::vector<std::vector<BoundRatioReport>> rows(take);
  parallel_for_index(take, p.jobs, [&](std::size_t i) {
    const auto& [name, f] = corpus[i];
    for (std::int64_t l : {8, 32, 128})
      hard[i].push_back(check_domination(name, f, l, 6));
    hard[i].push_back(check_modified_partial_bound(name, f, 8, 6));
    const double l1 = lp_norm(f, Lp::one);
    for (std::int64_t n : {16, 256}) {
      for (int g : {p.grid_level - 1, p.grid_level}) {
        const CVector grid = hilbert_grid(f, n, g);
        const double h = kTwoPi / static_cast<double>(grid.size());
        for (double mult : p.lambda_multipliers) {
          const double t = lambda_for(f, mult);
          const double meas =
              h * static_cast<double>((grid.cwiseAbs().array() > t).count());
          rows[i].push_back(make_ratio("hilbert_weak_type", name,
                                       {{"n", std::to_string(n)},
                                        {"grid", std::to_string(g)},
                                        {"t", fmt(t)}},
                                       meas, l1 / t));
        }
      }
    }
  });
  for (const auto& list : hard)
    for (const auto& h : list) fold_hard(res.hard, h);
  for (auto& list : rows)
    res.ratios.insert(res.ratios.end(), list.begin(), list.end());
  return res;
}

namespace {

SuiteResult battery_suite(const Corpus& corpus, const LabParams& p,
                          const std::string& suite,
                          const std::vector<std::string>& keep_ids) {
  SuiteResult res;
  res.suite = suite;
  std::vector<std::vector<BoundRatioReport>> rows(corpus.size());
  parallel_for_index(corpus.size(), p.jobs, [&](std::size_t i) {
    const auto all =
        bounded_ratio_battery(corpus[i].name, corpus[i].f, p, p.grid_level);
    for (const auto& r : all)
      if (std::find(keep_ids.begin(), keep_ids.end(), r.check_id) !=
          keep_ids.end())
        rows[i].push_back(r);
  });
  for (auto& list : rows)
    res.ratios.insert(res.ratios.end(), list.begin(), list.end());
  return res;
}

}  // namespace

SuiteResult run_lemmas34_suite(const Corpus& corpus, const LabParams& p) {
  SuiteResult res = battery_suite(
      corpus, p, "lemmas34",
      {"hilbert_energy_filtered", "partial_energy_filtered",
       "hilbert_energy_residual", "partial_energy_residual",
       "sv_energy_residual"});
  const double mid =
      p.lambda_multipliers[p.lambda_multipliers.size() / 2];
  const std::int64_t n_max =
      *std::max_element(p.n_sweep.begin(), p.n_sweep.end());
  std::vector<BoundRatioReport> audits(corpus.size());
  parallel_for_index(corpus.size(), p.jobs, [&](std::size_t i) {
    audits[i] = residual_disjointness_report(
        corpus[i].name, corpus[i].f, lambda_for(corpus[i].f, mid), p.gamma,
        p.lemma_seq, n_max, p.grid_level, p.log_base);
  });
  res.ratios.insert(res.ratios.end(), audits.begin(), audits.end());
  return res;
}

SuiteResult run_lemmas5_suite(const Corpus& corpus, const LabParams& p) {
  SuiteResult res = battery_suite(
      corpus, p, "lemmas5",
      {"sv_energy_weighted_full", "sv_energy_weighted_gammaF"});
  std::vector<std::vector<BoundRatioReport>> rows(corpus.size());
  std::vector<std::vector<HardCheck>> hard(corpus.size());
  parallel_for_index(corpus.size(), p.jobs, [&](std::size_t i) {
    const auto& [name, f] = corpus[i];
    const double mid =
        p.lambda_multipliers[p.lambda_multipliers.size() / 2];
    const double lam = lambda_for(f, mid);
    for (std::int64_t order : {p.lemma_seq.term_i64(1), p.lemma_seq.term_i64(8)}) {
      rows[i].push_back(check_energy_complement(
          name, f, lam, p.gamma, EnergyKind::hilbert, order, p.grid_level));
      rows[i].push_back(check_energy_complement(
          name, f, lam, p.gamma, EnergyKind::partial, order, p.grid_level));
      rows[i].push_back(check_energy_complement(
          name, f, lam, p.gamma, EnergyKind::sv, order, p.grid_level));
    }
    for (double mult : p.lambda_multipliers)
      for (std::int64_t l : {8, 64, 512})
        hard[i].push_back(check_e_vanishing(name, f, lambda_for(f, mult),
                                            p.gamma, l, p.grid_level));
    // sigma stays within [0, 1] up to rounding wherever sampled
    const CZDecomposition cz = cz_decompose(f, lam);
    if (!cz.family.empty()) {
      const CVector sigma =
          sigma_complement_grid(cz.family, p.beta, 50, p.grid_level);
      double low = 0.0, high = 0.0;
      for (std::int64_t q = 0; q < sigma.size(); ++q) {
        low = std::max(low, -sigma[q].real());
        high = std::max(high, sigma[q].real() - 1.0);
        low = std::max(low, std::abs(sigma[q].imag()));
      }
      const double worst = std::max(low, high);
      hard[i].push_back({"sigma_range", name, worst, worst <= 1e-10});
    }
  });
  for (auto& list : rows)
    res.ratios.insert(res.ratios.end(), list.begin(), list.end());
  for (const auto& list : hard)
    for (const auto& h : list) fold_hard(res.hard, h);
  return res;
}

SuiteResult run_orthogonality_suite(const Corpus& corpus, const LabParams& p) {
  const IndexSequence& seq = p.lemma_seq;
  if (seq.kind != SequenceKind::lacunary || !(seq.q > 2.5))
    throw std::invalid_argument(
        "orthogonality checks need a lacunary sequence with ratio q > 2.5");
  // Truncate to coefficient-materializable terms (and the 2^16 desk cap).
  std::int64_t j_max = 0;
  while (static_cast<std::size_t>(j_max) < seq.size() &&
         seq.term(j_max + 1) <= 65536)
    ++j_max;
  if (j_max < 1)
    throw std::invalid_argument("sequence starts beyond the desk-scale cap");
  std::vector<std::int64_t> n_values;
  for (std::int64_t N : p.n_sweep)
    if (N <= j_max) n_values.push_back(N);
  if (n_values.empty() || n_values.back() != j_max) n_values.push_back(j_max);

  SuiteResult res;
  res.suite = "orthogonality";
  const double mid = p.lambda_multipliers[p.lambda_multipliers.size() / 2];
  std::vector<std::vector<HardCheck>> hard(corpus.size());
  std::vector<std::vector<BoundRatioReport>> rows(corpus.size());
  parallel_for_index(corpus.size(), p.jobs, [&](std::size_t i) {
    const auto& [name, f] = corpus[i];
    const double lam = lambda_for(f, mid);
    const auto eq =
        check_orthogonality_equality(f, seq, j_max, p.beta, lam, p.log_base);
    hard[i].push_back({"orthogonality_equality",
                       name + " N=" + std::to_string(eq.N), eq.defect,
                       eq.defect <= 1e-8});
    hard[i].push_back({"spectral_windows", name, eq.windows_exact ? 0.0 : 1.0,
                       eq.windows_exact});
    hard[i].push_back({"support_disjointness", name, eq.disjoint ? 0.0 : 1.0,
                       eq.disjoint});
    rows[i] = check_orthogonality_bound(name, f, seq, n_values, p.beta, lam,
                                        p.log_base);
  });
  for (const auto& list : hard)
    for (const auto& h : list) fold_hard(res.hard, h);
  for (auto& list : rows)
    res.ratios.insert(res.ratios.end(), list.begin(), list.end());
  return res;
}

SuiteResult run_replacement_suite(const Corpus& corpus, const LabParams& p) {
  SuiteResult res;
  res.suite = "replacement";
  const std::int64_t n_max =
      std::min<std::int64_t>(64, static_cast<std::int64_t>(p.replacement_seq.size()));
  std::vector<WeakTypeCurve> curves(corpus.size());
  parallel_for_index(corpus.size(), p.jobs, [&](std::size_t i) {
    curves[i] = check_replacement(corpus[i].name, corpus[i].f,
                                  p.replacement_seq, n_max, p.beta, p.delta,
                                  p.log_base, p.lambda_multipliers,
                                  p.grid_level);
  });
  double fitted_c = 0.0;
  double monotone_worst = 0.0;
  for (const auto& c : curves) {
    double item_c = 0.0;
    for (std::size_t k = 0; k < c.lambdas.size(); ++k) {
      item_c = std::max(item_c, c.measures[k] / c.bounds[k]);
      if (k > 0)
        monotone_worst =
            std::max(monotone_worst, c.measures[k] - c.measures[k - 1]);
    }
    fitted_c = std::max(fitted_c, item_c);
    res.ratios.push_back(make_ratio("replacement_weak_type", c.corpus_item,
                                    {{"N_max", std::to_string(n_max)},
                                     {"beta", std::to_string(p.beta)},
                                     {"delta", fmt(p.delta)}},
                                    item_c, 1.0));
  }
  res.ratios.push_back(make_ratio("replacement_weak_type", "ALL",
                                  {{"N_max", std::to_string(n_max)},
                                   {"beta", std::to_string(p.beta)},
                                   {"delta", fmt(p.delta)}},
                                  fitted_c, 1.0));
  res.hard.push_back({"replacement_monotone", "measures along lambda",
                      monotone_worst, monotone_worst <= 1e-12});
  res.weak = std::move(curves);
  return res;
}

SuiteResult run_convergence_suite(const Corpus& corpus, const LabParams& p) {
  SuiteResult res;
  res.suite = "convergence";
  const IndexSequence& seq = p.convergence_seq;
  const auto& ind = find_item(corpus, "ind_half");

  const ErrorCurve full = convergence_curve("ind_half", ind.f, seq, p.n_sweep,
                                            AverageMode::full_average,
                                            p.grid_level, 0.1);
  int inversions = 0;
  double worst_rise = 0.0;
  for (std::size_t k = 1; k < full.exceed_measure.size(); ++k) {
    if (full.exceed_measure[k] >= full.exceed_measure[k - 1]) {
      ++inversions;
      worst_rise = std::max(
          worst_rise, full.exceed_measure[k] - full.exceed_measure[k - 1]);
    }
  }
  res.hard.push_back({"convergence_indicator_trend",
                      "exceedance at 0.1, one inversion allowed", worst_rise,
                      inversions <= 1});
  res.curves.push_back(full);

  const ErrorCurve vp = convergence_curve("ind_half", ind.f, seq, p.n_sweep,
                                          AverageMode::vp, p.grid_level, 0.1);
  int vp_inversions = 0;
  double vp_rise = 0.0;
  for (std::size_t k = 1; k < vp.l1_error.size(); ++k) {
    if (vp.l1_error[k] >= vp.l1_error[k - 1]) {
      ++vp_inversions;
      vp_rise = std::max(vp_rise, vp.l1_error[k] - vp.l1_error[k - 1]);
    }
  }
  res.hard.push_back({"vp_trend", "grid L1 error, one inversion allowed",
                      vp_rise, vp_inversions <= 1});
  res.curves.push_back(vp);

  res.hard.push_back(check_sv_bandlimited_vanishes(
      partial_sum_poly(ind.f, seq.term_i64(1) - 1), seq));

  const std::size_t extra = std::min<std::size_t>(corpus.size(), 6);
  std::vector<ErrorCurve> svs(extra);
  parallel_for_index(extra, p.jobs, [&](std::size_t i) {
    svs[i] = convergence_curve(corpus[i].name, corpus[i].f, seq, p.n_sweep,
                               AverageMode::sv_average, p.grid_level, 0.1);
  });
  for (auto& c : svs) res.curves.push_back(std::move(c));
  return res;
}

}  // namespace cesaro
