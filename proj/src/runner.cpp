#include "cesaro/runner.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cesaro {

namespace {

using nlohmann::json;

std::string log_base_name(LogBase base) {
  return base == LogBase::natural ? "natural" : "two";
}

LogBase log_base_from_name(const std::string& name) {
  if (name == "natural") return LogBase::natural;
  if (name == "two") return LogBase::two;
  throw std::invalid_argument("log_base must be \"natural\" or \"two\"");
}

std::vector<IndexSequence> default_sequences() {
  return {make_lacunary(3.0, 10, 32), make_delta_growth(0.3, 10, 64)};
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.sequences = default_sequences();
  return c;
}

RunConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  RunConfig c = default_config();
  for (const auto& [key, value] : j.items()) {
    if (key == "grid_level") {
      c.grid_level = value.get<int>();
    } else if (key == "corpus") {
      c.corpus = value.get<std::string>();
    } else if (key == "lambda_multipliers") {
      c.lambda_multipliers = value.get<std::vector<double>>();
    } else if (key == "sequences") {
      c.sequences.clear();
      for (const auto& s : value)
        c.sequences.push_back(sequence_from_json(s.dump()));
    } else if (key == "beta") {
      c.beta = value.get<std::int64_t>();
    } else if (key == "gamma") {
      c.gamma = value.get<std::int64_t>();
    } else if (key == "delta") {
      c.delta = value.get<double>();
    } else if (key == "n_sweep") {
      c.n_sweep = value.get<std::vector<std::int64_t>>();
    } else if (key == "log_base") {
      c.log_base = log_base_from_name(value.get<std::string>());
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "output_dir") {
      c.output_dir = value.get<std::string>();
    } else if (key == "jobs") {
      c.jobs = value.get<int>();
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return c;
}

std::string to_json(const RunConfig& c) {
  json j;
  j["grid_level"] = c.grid_level;
  j["corpus"] = c.corpus;
  j["lambda_multipliers"] = c.lambda_multipliers;
  j["sequences"] = json::array();
  for (const auto& s : c.sequences)
    j["sequences"].push_back(json::parse(to_json(s)));
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["delta"] = c.delta;
  j["n_sweep"] = c.n_sweep;
  j["log_base"] = log_base_name(c.log_base);
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["jobs"] = c.jobs;
  return j.dump(2);
}

void validate_config(const RunConfig& c) {
  if (c.grid_level < 8 || c.grid_level > 11)
    throw std::invalid_argument(
        "evaluation grid level must lie in [8, 11] (corpus functions live at "
        "level 8; spectral tables cap at level 11)");
  if (c.beta <= 7 || c.beta % 2 == 0)
    throw std::invalid_argument(
        "mask dilation width must be an odd integer greater than 7 "
        "(replacement-check hypothesis)");
  if (c.gamma <= 5 || c.gamma % 2 == 0 || c.gamma >= c.beta)
    throw std::invalid_argument(
        "family dilation width must be an odd integer greater than 5 and "
        "smaller than the mask width (filtered-energy hypothesis)");
  if (!(c.delta > 0.0) || !(c.delta < 0.5))
    throw std::invalid_argument(
        "growth exponent must lie strictly between 0 and 1/2 "
        "(replacement-check hypothesis)");
  if (c.lambda_multipliers.empty())
    throw std::invalid_argument("at least one threshold multiplier required");
  for (double m : c.lambda_multipliers)
    if (!(m > 1.0))
      throw std::invalid_argument(
          "threshold multipliers must all exceed 1 (decomposition threshold "
          "must sit strictly above the mean of |f|)");
  if (c.n_sweep.empty())
    throw std::invalid_argument("length sweep must not be empty");
  for (std::size_t i = 0; i < c.n_sweep.size(); ++i)
    if (c.n_sweep[i] < 1 || (i > 0 && c.n_sweep[i] <= c.n_sweep[i - 1]))
      throw std::invalid_argument(
          "length sweep must be positive and strictly increasing");
  if (c.sequences.empty())
    throw std::invalid_argument("at least one index sequence required");
  if (c.jobs < 0) throw std::invalid_argument("jobs must be >= 0");
}

LabParams lab_params(const RunConfig& c) {
  LabParams p;
  p.grid_level = c.grid_level;
  p.lambda_multipliers = c.lambda_multipliers;
  p.beta = c.beta;
  p.gamma = c.gamma;
  p.delta = c.delta;
  p.n_sweep = c.n_sweep;
  p.log_base = c.log_base;
  p.seed = c.seed;
  p.jobs = c.jobs;
  for (const auto& s : c.sequences) {
    if (p.lemma_seq.size() == 0 && s.kind == SequenceKind::lacunary)
      p.lemma_seq = s;
    if (p.replacement_seq.size() == 0 && s.kind == SequenceKind::delta_growth)
      p.replacement_seq = s;
  }
  if (p.lemma_seq.size() == 0) p.lemma_seq = make_lacunary(3.0, 10, 32);
  if (p.replacement_seq.size() == 0)
    p.replacement_seq = make_delta_growth(0.3, 10, 64);
  p.convergence_seq = make_lacunary(2.0, 2, 32);
  const std::int64_t n_max =
      *std::max_element(c.n_sweep.begin(), c.n_sweep.end());
  if (static_cast<std::size_t>(n_max) > p.lemma_seq.size())
    throw std::invalid_argument(
        "lacunary sequence is shorter than the length sweep");
  return p;
}

Corpus load_corpus(const RunConfig& c) {
  if (c.corpus == "default") return default_corpus(c.seed);
  std::ifstream in(c.corpus);
  if (!in) throw std::runtime_error("cannot read corpus file: " + c.corpus);
  std::ostringstream buf;
  buf << in.rdbuf();
  return corpus_from_json(buf.str());
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "kernels",       "cz",          "sets",
      "hilbert",       "lemmas34",    "lemmas5",
      "orthogonality", "replacement", "convergence"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& names = suite_names();
  return name == "all" ||
         std::find(names.begin(), names.end(), name) != names.end();
}

std::string resolve_output_dir(const std::string& cli_value,
                               const RunConfig& config) {
  if (!cli_value.empty()) return cli_value;
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv("CESARO_OUT"); env && *env) return env;
  return "cesaro_out";
}

bool RunOutcome::ok() const {
  return std::all_of(results.begin(), results.end(),
                     [](const SuiteResult& r) { return r.ok(); });
}

namespace {

SuiteResult run_one(const std::string& name, const Corpus& corpus,
                    const LabParams& p) {
  if (name == "kernels") return run_kernels_suite(p);
  if (name == "cz") return run_cz_suite(corpus, p);
  if (name == "sets") return run_sets_suite(p);
  if (name == "hilbert") return run_hilbert_suite(corpus, p);
  if (name == "lemmas34") return run_lemmas34_suite(corpus, p);
  if (name == "lemmas5") return run_lemmas5_suite(corpus, p);
  if (name == "orthogonality") return run_orthogonality_suite(corpus, p);
  if (name == "replacement") return run_replacement_suite(corpus, p);
  if (name == "convergence") return run_convergence_suite(corpus, p);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace

RunOutcome run_and_write(const RunConfig& config, const std::string& suite,
                         const std::string& out_dir) {
  validate_config(config);
  if (!is_suite_name(suite))
    throw std::invalid_argument("unknown suite: " + suite);
  const LabParams params = lab_params(config);
  const Corpus corpus = load_corpus(config);

  std::vector<std::string> todo;
  if (suite == "all")
    todo = suite_names();
  else
    todo.push_back(suite);

  RunOutcome outcome;
  for (const auto& name : todo) {
    SuiteResult res = run_one(name, corpus, params);
    auto files = write_reports(res, out_dir);
    for (auto& file : files)
      outcome.files.push_back(
          (std::filesystem::path(out_dir) / file).string());
    outcome.results.push_back(std::move(res));
  }
  return outcome;
}

}  // namespace cesaro
