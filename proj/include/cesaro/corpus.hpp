#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cesaro/circle.hpp"

namespace cesaro {

struct CorpusItem {
  std::string name;
  PCFunction f;
};

using Corpus = std::vector<CorpusItem>;

/// The built-in 24-item test corpus, all at grid level 8: six indicators,
/// six mean-zero steps, six random sign functions (seeded), and six capped
/// |x|^(-1/2)-type profiles. Everything except the sign items is
/// seed-independent.
Corpus default_corpus(std::uint64_t seed);

const CorpusItem& find_item(const Corpus& corpus, const std::string& name);

/// One line per item: name, level, L1/Linf norms, mean.
std::string corpus_summary(const Corpus& corpus);

std::string to_json(const Corpus& corpus);
Corpus corpus_from_json(const std::string& text);

}  // namespace cesaro
