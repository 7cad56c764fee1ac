#include "cesaro/corpus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cesaro {

namespace {

constexpr int kLevel = 8;
constexpr std::int64_t kCells = std::int64_t{1} << kLevel;

PCFunction from_mask(std::int64_t lo, std::int64_t hi) {  // half-open cells
  CVector v = CVector::Zero(kCells);
  for (std::int64_t i = lo; i < hi; ++i) v[i % kCells] = 1.0;
  return PCFunction(kLevel, std::move(v));
}

PCFunction comb(std::int64_t stride) {
  CVector v = CVector::Zero(kCells);
  for (std::int64_t i = 0; i < kCells; i += stride) v[i] = 1.0;
  return PCFunction(kLevel, std::move(v));
}

PCFunction haar(std::int64_t lo, std::int64_t hi, double amp) {
  CVector v = CVector::Zero(kCells);
  const std::int64_t mid = (lo + hi) / 2;
  for (std::int64_t i = lo; i < mid; ++i) v[i] = amp;
  for (std::int64_t i = mid; i < hi; ++i) v[i] = -amp;
  return PCFunction(kLevel, std::move(v));
}

PCFunction blocks(std::int64_t width) {
  CVector v(kCells);
  for (std::int64_t i = 0; i < kCells; ++i)
    v[i] = ((i / width) % 2 == 0) ? 1.0 : -1.0;
  return PCFunction(kLevel, std::move(v));
}

PCFunction random_signs(std::uint64_t stream) {
  CVector v(kCells);
  for (std::int64_t i = 0; i < kCells; ++i)
    v[i] = (detail::splitmix64(stream) >> 63) ? 1.0 : -1.0;
  return PCFunction(kLevel, std::move(v));
}

/// min(cap, |x - center|^(-1/2)) sampled at cell midpoints (midpoints are
/// odd multiples of pi/2^9, so the distance never vanishes on the grid).
PCFunction profile(double center, double cap, double sign_split) {
  CVector v(kCells);
  const double h = kTwoPi / static_cast<double>(kCells);
  for (std::int64_t i = 0; i < kCells; ++i) {
    const double x = -kPi + h * (static_cast<double>(i) + 0.5);
    double d = std::fabs(x - center);
    d = std::min(d, kTwoPi - d);  // circle distance
    double val = std::min(cap, 1.0 / std::sqrt(d));
    if (sign_split != 0.0 && x < center) val = -val * sign_split;
    v[i] = val;
  }
  return PCFunction(kLevel, std::move(v));
}

PCFunction mean_zero(const PCFunction& f) {
  const Complex avg = f.values().sum() / static_cast<double>(f.cells());
  return PCFunction(f.level(), f.values().array() - avg);
}

}  // namespace

Corpus default_corpus(std::uint64_t seed) {
  Corpus c;
  c.reserve(24);

  c.push_back({"ind_half", from_mask(128, 256)});       // [0, pi)
  c.push_back({"ind_quarter", from_mask(128, 192)});    // [0, pi/2)
  c.push_back({"ind_cell", from_mask(128, 129)});       // one level-8 cell
  c.push_back({"ind_two_arcs",
               PCFunction(kLevel, from_mask(64, 96).values() +
                                      from_mask(192, 208).values())});
  c.push_back({"ind_comb16", comb(16)});
  c.push_back({"ind_near_full", from_mask(16, 256)});

  c.push_back({"step_sign", PCFunction(kLevel, from_mask(0, 128).values() -
                                                   from_mask(128, 256).values())});
  c.push_back({"haar_right", haar(128, 256, 1.0)});
  c.push_back({"haar_pair", haar(128, 130, 1.0)});
  c.push_back({"step_blocks32", blocks(32)});
  c.push_back({"step_quarters",
               mean_zero(PCFunction(kLevel, 4.0 * from_mask(128, 192).values()))});
  c.push_back({"haar_nested",
               PCFunction(kLevel, haar(0, 128, 1.0).values() +
                                      haar(64, 96, 2.0).values())});

  for (int i = 0; i < 6; ++i) {
    std::uint64_t stream = seed + 0x100 * static_cast<std::uint64_t>(i + 1);
    c.push_back({"rnd_sign_" + std::to_string(i + 1), random_signs(stream)});
  }

  c.push_back({"prof_center", profile(0.0, 8.0, 0.0)});
  c.push_back({"prof_shift", profile(kPi / 2.0, 8.0, 0.0)});
  c.push_back({"prof_cap16", profile(0.0, 16.0, 0.0)});
  c.push_back({"prof_signed", profile(0.0, 8.0, 1.0)});
  c.push_back({"prof_meanzero", mean_zero(profile(0.0, 8.0, 0.0))});
  c.push_back({"prof_far", profile(-kPi / 2.0, 4.0, 0.0)});

  return c;
}

const CorpusItem& find_item(const Corpus& corpus, const std::string& name) {
  for (const auto& item : corpus)
    if (item.name == name) return item;
  throw std::invalid_argument("unknown corpus item: " + name);
}

std::string corpus_summary(const Corpus& corpus) {
  std::ostringstream out;
  for (const auto& item : corpus) {
    out << item.name << " level=" << item.f.level()
        << " l1=" << lp_norm(item.f, Lp::one)
        << " linf=" << lp_norm(item.f, Lp::infinity)
        << " mean=" << integral(item.f).real() / kTwoPi << "\n";
  }
  return out.str();
}

std::string to_json(const Corpus& corpus) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& item : corpus) {
    arr.push_back({{"name", item.name},
                   {"f", nlohmann::json::parse(to_json(item.f))}});
  }
  return arr.dump(2);
}

Corpus corpus_from_json(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("corpus file must be a JSON array");
  Corpus c;
  for (const auto& entry : arr) {
    c.push_back({entry.at("name").get<std::string>(),
                 pcfunction_from_json(entry.at("f").dump())});
  }
  return c;
}

}  // namespace cesaro
