#ifndef FIOLAB_CLI_RUNNER_HPP
#define FIOLAB_CLI_RUNNER_HPP

#include <cstdint>
#include <map>
#include <string>

namespace fiolab {

// Flat "key = value" experiment configuration.  Unknown keys are rejected at
// validation time; every run echoes the exact configuration next to its
// outputs so a run can be reproduced from its artifacts.
struct ExperimentConfig {
  std::string kind;
  std::map<std::string, std::string> values;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int threads = 0;  // 0: library default

  bool has(const std::string& k) const { return values.count(k) != 0; }
  double get_num(const std::string& k, double fallback) const;
  int get_int(const std::string& k, int fallback) const;
  std::string get_str(const std::string& k, const std::string& fallback) const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Exit status: 0 success, 2 validation error, 3 numerical precondition
// failure.  Writes summary.json, config.echo and per-experiment CSV tables
// into config.out_dir.
int run_experiment(ExperimentConfig config);

}  // namespace fiolab

#endif
