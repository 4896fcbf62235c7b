#include "pqjc/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "pqjc/checks.hpp"
#include "pqjc/ladder.hpp"
#include "pqjc/moments.hpp"
#include "pqjc/vcs.hpp"

namespace pqjc {

using nlohmann::json;

std::string iso_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int worker_count(int grid_size) {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* env = std::getenv("PQJC_NUM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) workers = std::min(workers, cap);
  }
  return std::min(workers, std::max(1, grid_size));
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_cell_csv(const json& cell) {
  if (cell.is_number_float()) return format_double(cell.get<double>());
  if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_string()) return csv_quote(cell.get<std::string>());
  return csv_quote(cell.dump());
}

ResultEnvelope make_envelope(const std::string& command, const RunConfig& cfg) {
  ResultEnvelope env;
  env.command = command;
  env.timestamp = iso_timestamp_now();
  env.config_echo = to_json(cfg);
  return env;
}

}  // namespace

std::string render_csv(const ResultEnvelope& env) {
  std::ostringstream out;
  out << "# command: " << env.command << '\n';
  if (!env.timestamp.empty()) out << "# timestamp: " << env.timestamp << '\n';
  out << "# config: " << env.config_echo.dump() << '\n';
  for (std::size_t i = 0; i < env.payload.columns.size(); ++i) {
    if (i) out << ',';
    out << env.payload.columns[i];
  }
  out << '\n';
  for (const json& row : env.payload.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << render_cell_csv(row.at(i));
    }
    out << '\n';
  }
  if (!env.diagnostics.is_null()) out << "# diagnostics: " << env.diagnostics.dump() << '\n';
  return out.str();
}

std::string render_json(const ResultEnvelope& env) {
  json j;
  j["command"] = env.command;
  if (!env.timestamp.empty()) j["timestamp"] = env.timestamp;
  j["config"] = env.config_echo;
  j["payload"] = {{"columns", env.payload.columns}, {"rows", env.payload.rows}};
  j["diagnostics"] = env.diagnostics;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

ResultEnvelope cmd_spectrum(const RunConfig& cfg) {
  const JCModelParams model = cfg.make_model();
  const SpectrumTable table(model, cfg.numeric.n_max);
  ResultEnvelope env = make_envelope("spectrum", cfg);
  env.payload.columns = {"n",         "script_E", "Q",      "sin_theta",
                         "cos_theta", "E_plus",   "E_minus", "zeeman"};
  for (const LevelData& lv : table.levels())
    env.payload.rows.push_back(json::array({lv.n, lv.script_E, lv.Q, lv.sin_theta,
                                            lv.cos_theta, lv.E_plus, lv.E_minus, lv.zeeman}));

  const SpectrumVerification v =
      verify_spectrum(model, std::clamp(cfg.numeric.n_max, 4, 24), 1e-10);
  json diag;
  diag["singleton_energy"] = table.singleton_energy();
  diag["verify_max_residual"] = v.max_residual;
  diag["verify_matched_levels"] = v.matched_levels;
  diag["min_E_minus"] = table.diagnostics().min_E_minus;
  if (table.diagnostics().turnaround_n0)
    diag["turnaround_n0"] = *table.diagnostics().turnaround_n0;
  diag["degenerate_pairs"] = table.diagnostics().degenerate_pairs.size();
  env.diagnostics = diag;
  return env;
}

ResultEnvelope cmd_vcs(const RunConfig& cfg) {
  const VCSState state =
      build_vcs(cfg.make_vcs_params(), cfg.numeric.n_max, cfg.make_series_control());
  ResultEnvelope env = make_envelope("vcs", cfg);
  env.payload.columns = {"n", "c_plus_re", "c_plus_im", "c_minus_re", "c_minus_im"};
  for (int n = 0; n <= state.n_max(); ++n) {
    const auto cp = state.coeff(Sign::Plus)[n];
    const auto cm = state.coeff(Sign::Minus)[n];
    env.payload.rows.push_back(
        json::array({n, cp.real(), cp.imag(), cm.real(), cm.imag()}));
  }
  const ActionVariables jv = action_variables(state);
  json diag;
  diag["norm"] = std::sqrt(state.norm_squared());
  diag["N_plus"] = state.norm_factor(Sign::Plus);
  diag["N_minus"] = state.norm_factor(Sign::Minus);
  diag["annihilation_residual"] = annihilation_residual(state);
  diag["expectation_H"] = expectation_H(state);
  diag["expectation_number"] = expectation_number(state);
  diag["J_plus"] = jv.J_plus;
  diag["J_minus"] = jv.J_minus;
  const RadiusPair& r = state.radius();
  diag["radius_min"] =
      std::isinf(r.min_value()) ? json("infinite") : json(r.min_value());
  diag["truncation"] = {{"converged_plus", state.truncation().converged_plus},
                        {"converged_minus", state.truncation().converged_minus},
                        {"last_term_plus", state.truncation().last_term_plus},
                        {"last_term_minus", state.truncation().last_term_minus}};
  env.diagnostics = diag;
  return env;
}

ResultEnvelope cmd_dynamics(const RunConfig& cfg, double t_start, double t_end, int t_steps) {
  if (t_steps < 2) throw ConfigError("--t-steps", "must be >= 2");
  const VCSState state =
      build_vcs(cfg.make_vcs_params(), cfg.numeric.n_max, cfg.make_series_control());

  std::vector<double> times(static_cast<std::size_t>(t_steps));
  for (int k = 0; k < t_steps; ++k)
    times[static_cast<std::size_t>(k)] =
        t_start + (t_end - t_start) * k / static_cast<double>(t_steps - 1);

  // grid points are independent; results land by index so output order is fixed
  std::vector<double> sigma(times.size());
  const int workers = worker_count(t_steps);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= times.size()) return;
      sigma[i] = atomic_inversion(state, times[i]);
    }
  };
  if (workers > 1) {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  } else {
    run();
  }

  ResultEnvelope env = make_envelope("dynamics", cfg);
  env.payload.columns = {"t", "sigma3"};
  double lo = sigma.empty() ? 0.0 : sigma[0], hi = lo;
  for (std::size_t i = 0; i < times.size(); ++i) {
    env.payload.rows.push_back(json::array({times[i], sigma[i]}));
    lo = std::min(lo, sigma[i]);
    hi = std::max(hi, sigma[i]);
  }
  json diag;
  diag["sigma3_min"] = lo;
  diag["sigma3_max"] = hi;
  diag["spread"] = hi - lo;
  diag["workers"] = workers;
  env.diagnostics = diag;
  return env;
}

ResultEnvelope cmd_moments(const RunConfig& cfg) {
  const JCModelParams model = cfg.make_model();
  const WeightChoice choice = cfg.make_weight_choice();
  const MomentReport report = verify_moments(choice, model, 8, cfg.numeric.quad_tol);
  ResultEnvelope env = make_envelope("moments", cfg);
  env.payload.columns = {"n", "lhs", "rhs", "rel_err"};
  for (const MomentEntry& e : report.entries)
    env.payload.rows.push_back(json::array({e.n, e.lhs, e.rhs, e.rel_err}));
  json diag;
  diag["max_rel_err"] = report.max_rel_err;
  diag["quad_tol"] = report.quad_tol;
  diag["pass"] = report.pass();
  switch (choice.kind) {
    case WeightChoice::Kind::FockExplicit: diag["family"] = "fock"; break;
    case WeightChoice::Kind::PQExplicit: diag["family"] = "pq_explicit"; break;
    case WeightChoice::Kind::AlphaFamily: diag["family"] = "alpha_family"; break;
  }
  env.diagnostics = diag;
  env.all_pass = report.pass();
  if (!report.pass())
    throw QuadratureFailure("moments: max rel err " + std::to_string(report.max_rel_err) +
                            " above quad_tol");
  return env;
}

ResultEnvelope cmd_verify(const RunConfig& cfg) {
  const std::vector<CheckResult> results = run_verification_suite(cfg);
  ResultEnvelope env = make_envelope("verify", cfg);
  env.payload.columns = {"check", "status", "residual", "threshold", "detail"};
  for (const CheckResult& r : results) {
    const std::string status =
        r.informational ? "info" : (r.pass ? "pass" : "FAIL");
    env.payload.rows.push_back(
        json::array({r.name, status, r.residual, r.threshold, r.detail}));
  }
  env.all_pass = all_pass(results);
  json diag;
  diag["all_pass"] = env.all_pass;
  diag["checks"] = results.size();
  env.diagnostics = diag;
  return env;
}

}  // namespace pqjc
