// Experiment runner: one experiment per invocation, artifacts (config echo,
// summary.json, CSV tables) written to the output directory.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fiolab/cli_runner.hpp"
#include "fiolab/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fiolab: numerical experiments for Fourier integral operators"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long long seed = -1;
  int threads = 0;

  const char* kinds[] = {"apply",      "kernel",     "sweep",        "ce2",
                         "weights",    "bmo",        "stationary",   "wave",
                         "commutator", "substitution"};
  for (const char* k : kinds) {
    auto* sub = app.add_subcommand(k);
    sub->add_option("--config", config_path, "experiment config file (key = value)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "deterministic seed");
    sub->add_option("--threads", threads, "worker thread cap");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    fiolab::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = fiolab::parse_config_file(config_path);
    cfg.kind = app.get_subcommands().front()->get_name();
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (threads > 0) cfg.threads = threads;
    return fiolab::run_experiment(cfg);
  } catch (const fiolab::config_error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const fiolab::precondition_error& e) {
    std::fprintf(stderr, "numerical precondition failure: %s\n", e.what());
    return 3;
  }
}
