#pragma once

#include <string>
#include <vector>

#include "cesaro/lemma_lab.hpp"

namespace cesaro {

/// One experiment run, as loaded from a config file. Every field has a
/// usable default, so a config may override any subset of keys.
struct RunConfig {
  int grid_level = 10;
  /// "default" for the built-in corpus, otherwise a path to a corpus JSON.
  std::string corpus = "default";
  std::vector<double> lambda_multipliers{1.3, 2.7, 5.3, 11.1, 23.7, 49.9};
  /// Index sequences available to the suites: the first lacunary one feeds
  /// the energy/orthogonality checks, the first delta-growth one feeds the
  /// replacement check.
  std::vector<IndexSequence> sequences;
  std::int64_t beta = 9;
  std::int64_t gamma = 7;
  double delta = 0.3;
  std::vector<std::int64_t> n_sweep{4, 8, 16, 32};
  LogBase log_base = LogBase::natural;
  std::uint64_t seed = 1;
  std::string output_dir;  // empty = CESARO_OUT env var, then ./cesaro_out
  int jobs = 0;            // 0 = hardware concurrency
};

RunConfig default_config();

/// Parses a config JSON; keys not present keep their defaults. Unknown keys
/// are rejected (they are always typos).
RunConfig config_from_json(const std::string& text);
std::string to_json(const RunConfig& config);

/// Rejects parameter combinations that break a hypothesis of some check;
/// messages name the violated hypothesis.
void validate_config(const RunConfig& config);

LabParams lab_params(const RunConfig& config);
Corpus load_corpus(const RunConfig& config);

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// cli_value > config.output_dir > $CESARO_OUT > "cesaro_out".
std::string resolve_output_dir(const std::string& cli_value,
                               const RunConfig& config);

struct RunOutcome {
  std::vector<SuiteResult> results;
  std::vector<std::string> files;  // paths written, in order

  bool ok() const;
};

/// Runs `suite` (one name or "all") and writes every report into out_dir.
RunOutcome run_and_write(const RunConfig& config, const std::string& suite,
                         const std::string& out_dir);

}  // namespace cesaro
