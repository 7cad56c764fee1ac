#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cesaro/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale experiments with averaged partial sums on the "
               "dyadic circle"};
  app.require_subcommand(1);

  std::string suite;
  std::string config_path;
  std::string out_cli;
  int grid_level = -1;
  long long seed = -1;
  int jobs = -1;

  CLI::App* run_cmd =
      app.add_subcommand("run", "run a suite and write its reports");
  run_cmd->add_option("--suite", suite,
                      "kernels|cz|sets|hilbert|lemmas34|lemmas5|"
                      "orthogonality|replacement|convergence|all")
      ->required();
  run_cmd->add_option("--config", config_path, "config JSON path");
  run_cmd->add_option("--grid-level", grid_level,
                      "override the evaluation grid level");
  run_cmd->add_option("--seed", seed, "override the RNG seed");
  run_cmd->add_option("--out", out_cli, "output directory");
  run_cmd->add_option("--jobs", jobs, "worker threads (0 = all cores)");

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "corpus utilities");
  corpus_cmd->require_subcommand(1);
  CLI::App* list_cmd =
      corpus_cmd->add_subcommand("list", "print one line per corpus item");
  list_cmd->add_option("--config", config_path, "config JSON path");
  list_cmd->add_option("--seed", seed, "override the RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cesaro::RunConfig config = cesaro::default_config();
    if (!config_path.empty())
      config = cesaro::config_from_json(read_file(config_path));
    if (grid_level >= 0) config.grid_level = grid_level;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    if (jobs >= 0) config.jobs = jobs;

    if (list_cmd->parsed()) {
      std::cout << cesaro::corpus_summary(cesaro::load_corpus(config));
      return 0;
    }

    const std::string out_dir = cesaro::resolve_output_dir(out_cli, config);
    const cesaro::RunOutcome outcome =
        cesaro::run_and_write(config, suite, out_dir);
    for (const auto& r : outcome.results) {
      std::size_t failed = 0;
      for (const auto& h : r.hard)
        if (!h.pass) ++failed;
      std::cout << r.suite << ": " << r.hard.size() << " hard checks, "
                << failed << " failed, " << r.ratios.size()
                << " ratio rows\n";
      for (const auto& h : r.hard)
        if (!h.pass)
          std::cout << "  FAIL " << h.check_id
                    << " worst=" << cesaro::format_double(h.worst) << " ("
                    << h.detail << ")\n";
    }
    for (const auto& f : outcome.files) std::cout << "wrote " << f << "\n";
    std::cout << (outcome.ok() ? "HARD CHECKS: pass" : "HARD CHECKS: fail")
              << "\n";
    return outcome.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
