// pqjc: spectra, vector coherent states, dynamics and moment checks for the
// (p,q)-deformed Jaynes-Cummings model in the rotating wave approximation.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pqjc/commands.hpp"
#include "pqjc/config.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string format;
  std::string out_path;
  bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--format", opts.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out_path, "Output path ('-' for stdout)");
  cmd->add_flag("--no-timestamp", opts.no_timestamp,
                "Omit the timestamp line (byte-stable output)");
}

pqjc::RunConfig resolve_config(const CommonOpts& opts) {
  pqjc::RunConfig cfg;
  if (!opts.config_path.empty()) cfg = pqjc::load_config_file(opts.config_path);
  if (!opts.format.empty()) cfg.output.format = opts.format;
  if (!opts.out_path.empty()) cfg.output.path = opts.out_path;
  return cfg;
}

int emit(pqjc::ResultEnvelope env, const pqjc::RunConfig& cfg, const CommonOpts& opts) {
  if (opts.no_timestamp) env.timestamp.clear();
  const std::string text =
      cfg.output.format == "json" ? pqjc::render_json(env) : pqjc::render_csv(env);
  if (cfg.output.path == "-" || cfg.output.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output.path, std::ios::binary);
    if (!out) throw pqjc::ConfigError("output.path", "cannot open '" + cfg.output.path + "'");
    out << text;
  }
  return env.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(p,q)-deformed Jaynes-Cummings model toolkit"};
  app.require_subcommand(1);

  CommonOpts spectrum_opts, vcs_opts, dynamics_opts, moments_opts, verify_opts;
  double t_start = 0.0, t_end = 10.0;
  int t_steps = 101;

  CLI::App* spectrum = app.add_subcommand("spectrum", "Energy towers and mixing angles");
  add_common(spectrum, spectrum_opts);

  CLI::App* vcs = app.add_subcommand("vcs", "Vector coherent state coefficients");
  add_common(vcs, vcs_opts);

  CLI::App* dynamics = app.add_subcommand("dynamics", "Atomic inversion over a time grid");
  add_common(dynamics, dynamics_opts);
  dynamics->add_option("--t-start", t_start, "First time point");
  dynamics->add_option("--t-end", t_end, "Last time point");
  dynamics->add_option("--t-steps", t_steps, "Number of grid points (>= 2)");

  CLI::App* moments = app.add_subcommand("moments", "Stieltjes moment verification");
  add_common(moments, moments_opts);

  CLI::App* verify = app.add_subcommand("verify", "Run the full invariant suite");
  add_common(verify, verify_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) {
      const pqjc::RunConfig cfg = resolve_config(spectrum_opts);
      return emit(pqjc::cmd_spectrum(cfg), cfg, spectrum_opts);
    }
    if (vcs->parsed()) {
      const pqjc::RunConfig cfg = resolve_config(vcs_opts);
      return emit(pqjc::cmd_vcs(cfg), cfg, vcs_opts);
    }
    if (dynamics->parsed()) {
      const pqjc::RunConfig cfg = resolve_config(dynamics_opts);
      return emit(pqjc::cmd_dynamics(cfg, t_start, t_end, t_steps), cfg, dynamics_opts);
    }
    if (moments->parsed()) {
      const pqjc::RunConfig cfg = resolve_config(moments_opts);
      return emit(pqjc::cmd_moments(cfg), cfg, moments_opts);
    }
    if (verify->parsed()) {
      const pqjc::RunConfig cfg = resolve_config(verify_opts);
      return emit(pqjc::cmd_verify(cfg), cfg, verify_opts);
    }
  } catch (const pqjc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pqjc::QuadratureFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const pqjc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
