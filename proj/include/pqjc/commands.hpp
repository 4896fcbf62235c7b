#ifndef PQJC_COMMANDS_HPP
#define PQJC_COMMANDS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "pqjc/config.hpp"

namespace pqjc {

// Tabular payload; each row is a JSON array whose cells keep their native
// types (numbers stay numbers in JSON output, 17-digit decimal in CSV).
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<nlohmann::json> rows;
};

struct ResultEnvelope {
  std::string command;
  std::string timestamp;  // empty when suppressed
  nlohmann::json config_echo;
  ResultTable payload;
  nlohmann::json diagnostics;

  // exit-status summary for commands with a pass/fail semantic
  bool all_pass = true;
};

std::string render_csv(const ResultEnvelope& env);
std::string render_json(const ResultEnvelope& env);

std::string iso_timestamp_now();

ResultEnvelope cmd_spectrum(const RunConfig& cfg);
ResultEnvelope cmd_vcs(const RunConfig& cfg);
ResultEnvelope cmd_dynamics(const RunConfig& cfg, double t_start, double t_end, int t_steps);
ResultEnvelope cmd_moments(const RunConfig& cfg);
ResultEnvelope cmd_verify(const RunConfig& cfg);

// Worker cap for grid evaluations: PQJC_NUM_THREADS, clamped to [1, hw].
int worker_count(int grid_size);

}  // namespace pqjc

#endif  // PQJC_COMMANDS_HPP
