#include "pqjc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace pqjc {

using nlohmann::json;

namespace {

// Merge one block: every present key must be known and type-correct.
template <typename Setter>
void read_field(const json& block, const std::string& scope, const std::string& key,
                bool& seen, Setter set) {
  if (!block.contains(key)) return;
  seen = true;
  try {
    set(block.at(key));
  } catch (const json::exception& e) {
    throw ConfigError(scope + "." + key, e.what());
  }
}

void check_known_keys(const json& block, const std::string& scope,
                      std::initializer_list<const char*> keys) {
  for (auto it = block.begin(); it != block.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) throw ConfigError(scope + "." + it.key(), "unknown key");
  }
}

double require_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

int require_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<int>();
}

std::string require_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

bool nearly(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

JCModelParams RunConfig::make_model() const {
  JCModelParams m{DeformationParams(1.0, 1.0)};
  try {
    m.deformation = DeformationParams(model.p, model.q);
  } catch (const InvalidParameter& e) {
    throw ConfigError("model.p/model.q", e.what());
  }
  m.epsilon = model.epsilon;
  m.lambda = model.lambda;
  m.omega0 = model.omega0;
  m.h = HChoice::constant(model.h_constant);
  m.mu = model.mu;
  m.nu = model.nu;
  try {
    m.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError("model", e.what());
  }
  return m;
}

LadderScheme RunConfig::make_scheme() const {
  try {
    if (scheme.kind == "algebra")
      return LadderScheme::algebra(scheme.p0, scheme.q0, scheme.tau_plus, scheme.tau_minus);
    if (scheme.kind == "action_identity")
      return LadderScheme::action_identity(scheme.tau_plus, scheme.tau_minus);
  } catch (const InvalidParameter& e) {
    throw ConfigError("scheme", e.what());
  }
  throw ConfigError("scheme.kind", "expected 'algebra' or 'action_identity', got '" +
                                       scheme.kind + "'");
}

VCSParams RunConfig::make_vcs_params() const {
  VCSParams p;
  p.z = {vcs.z_re, vcs.z_im};
  p.theta = vcs.theta;
  p.phi = vcs.phi;
  p.tau_plus = scheme.tau_plus;
  p.tau_minus = scheme.tau_minus;
  p.scheme = make_scheme();
  p.model = make_model();
  try {
    p.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError("vcs", e.what());
  }
  return p;
}

SeriesControl RunConfig::make_series_control() const {
  SeriesControl ctl;
  ctl.rel_tol = numeric.rel_tol;
  ctl.abs_tol = numeric.abs_tol;
  ctl.max_terms = numeric.max_terms;
  try {
    ctl.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError("numeric", e.what());
  }
  if (numeric.n_max < 1) throw ConfigError("numeric.n_max", "must be >= 1");
  if (!(numeric.quad_tol > 0.0)) throw ConfigError("numeric.quad_tol", "must be > 0");
  return ctl;
}

WeightChoice RunConfig::make_weight_choice() const {
  if (scheme.kind != "algebra")
    throw ConfigError("scheme.kind",
                      "moment families are defined for algebra schemes only");
  if (nearly(scheme.p0, 1.0) && nearly(scheme.q0, 1.0)) return WeightChoice::fock();
  if (nearly(scheme.p0, model.p) && nearly(scheme.q0, model.q))
    return WeightChoice::pq_explicit();
  if (nearly(scheme.p0, std::pow(model.p, scheme.alpha)) &&
      nearly(scheme.q0, std::pow(model.q, scheme.alpha)))
    return WeightChoice::alpha_family(scheme.alpha);
  throw ConfigError("scheme.p0/scheme.q0",
                    "not a recognized weight family: expected (1,1), (p,q) or "
                    "(p^alpha, q^alpha)");
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  check_known_keys(j, "<root>", {"model", "scheme", "vcs", "numeric", "output"});
  RunConfig cfg;
  bool seen = false;

  if (j.contains("model")) {
    const json& b = j.at("model");
    check_known_keys(b, "model",
                     {"p", "q", "epsilon", "lambda", "omega0", "h_constant", "mu", "nu"});
    read_field(b, "model", "p", seen, [&](const json& v) { cfg.model.p = require_number(v, "model.p"); });
    read_field(b, "model", "q", seen, [&](const json& v) { cfg.model.q = require_number(v, "model.q"); });
    read_field(b, "model", "epsilon", seen,
               [&](const json& v) { cfg.model.epsilon = require_number(v, "model.epsilon"); });
    read_field(b, "model", "lambda", seen,
               [&](const json& v) { cfg.model.lambda = require_number(v, "model.lambda"); });
    read_field(b, "model", "omega0", seen,
               [&](const json& v) { cfg.model.omega0 = require_number(v, "model.omega0"); });
    read_field(b, "model", "h_constant", seen, [&](const json& v) {
      cfg.model.h_constant = require_number(v, "model.h_constant");
    });
    read_field(b, "model", "mu", seen,
               [&](const json& v) { cfg.model.mu = require_number(v, "model.mu"); });
    read_field(b, "model", "nu", seen,
               [&](const json& v) { cfg.model.nu = require_number(v, "model.nu"); });
  }
  if (j.contains("scheme")) {
    const json& b = j.at("scheme");
    check_known_keys(b, "scheme", {"kind", "p0", "q0", "alpha", "tau_plus", "tau_minus"});
    read_field(b, "scheme", "kind", seen,
               [&](const json& v) { cfg.scheme.kind = require_string(v, "scheme.kind"); });
    read_field(b, "scheme", "p0", seen,
               [&](const json& v) { cfg.scheme.p0 = require_number(v, "scheme.p0"); });
    read_field(b, "scheme", "q0", seen,
               [&](const json& v) { cfg.scheme.q0 = require_number(v, "scheme.q0"); });
    read_field(b, "scheme", "alpha", seen,
               [&](const json& v) { cfg.scheme.alpha = require_number(v, "scheme.alpha"); });
    read_field(b, "scheme", "tau_plus", seen, [&](const json& v) {
      cfg.scheme.tau_plus = require_number(v, "scheme.tau_plus");
    });
    read_field(b, "scheme", "tau_minus", seen, [&](const json& v) {
      cfg.scheme.tau_minus = require_number(v, "scheme.tau_minus");
    });
  }
  if (j.contains("vcs")) {
    const json& b = j.at("vcs");
    check_known_keys(b, "vcs", {"z_re", "z_im", "theta", "phi"});
    read_field(b, "vcs", "z_re", seen,
               [&](const json& v) { cfg.vcs.z_re = require_number(v, "vcs.z_re"); });
    read_field(b, "vcs", "z_im", seen,
               [&](const json& v) { cfg.vcs.z_im = require_number(v, "vcs.z_im"); });
    read_field(b, "vcs", "theta", seen,
               [&](const json& v) { cfg.vcs.theta = require_number(v, "vcs.theta"); });
    read_field(b, "vcs", "phi", seen,
               [&](const json& v) { cfg.vcs.phi = require_number(v, "vcs.phi"); });
  }
  if (j.contains("numeric")) {
    const json& b = j.at("numeric");
    check_known_keys(b, "numeric", {"n_max", "rel_tol", "abs_tol", "max_terms", "quad_tol"});
    read_field(b, "numeric", "n_max", seen,
               [&](const json& v) { cfg.numeric.n_max = require_int(v, "numeric.n_max"); });
    read_field(b, "numeric", "rel_tol", seen, [&](const json& v) {
      cfg.numeric.rel_tol = require_number(v, "numeric.rel_tol");
    });
    read_field(b, "numeric", "abs_tol", seen, [&](const json& v) {
      cfg.numeric.abs_tol = require_number(v, "numeric.abs_tol");
    });
    read_field(b, "numeric", "max_terms", seen, [&](const json& v) {
      cfg.numeric.max_terms = require_int(v, "numeric.max_terms");
    });
    read_field(b, "numeric", "quad_tol", seen, [&](const json& v) {
      cfg.numeric.quad_tol = require_number(v, "numeric.quad_tol");
    });
  }
  if (j.contains("output")) {
    const json& b = j.at("output");
    check_known_keys(b, "output", {"format", "path"});
    read_field(b, "output", "format", seen, [&](const json& v) {
      cfg.output.format = require_string(v, "output.format");
    });
    read_field(b, "output", "path", seen,
               [&](const json& v) { cfg.output.path = require_string(v, "output.path"); });
  }
  if (cfg.output.format != "csv" && cfg.output.format != "json")
    throw ConfigError("output.format", "expected 'csv' or 'json'");

  // Validate eagerly so malformed files fail at parse time.
  (void)cfg.make_model();
  (void)cfg.make_scheme();
  (void)cfg.make_series_control();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("--config", std::string("JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& cfg) {
  return json{
      {"model",
       {{"p", cfg.model.p},
        {"q", cfg.model.q},
        {"epsilon", cfg.model.epsilon},
        {"lambda", cfg.model.lambda},
        {"omega0", cfg.model.omega0},
        {"h_constant", cfg.model.h_constant},
        {"mu", cfg.model.mu},
        {"nu", cfg.model.nu}}},
      {"scheme",
       {{"kind", cfg.scheme.kind},
        {"p0", cfg.scheme.p0},
        {"q0", cfg.scheme.q0},
        {"alpha", cfg.scheme.alpha},
        {"tau_plus", cfg.scheme.tau_plus},
        {"tau_minus", cfg.scheme.tau_minus}}},
      {"vcs",
       {{"z_re", cfg.vcs.z_re},
        {"z_im", cfg.vcs.z_im},
        {"theta", cfg.vcs.theta},
        {"phi", cfg.vcs.phi}}},
      {"numeric",
       {{"n_max", cfg.numeric.n_max},
        {"rel_tol", cfg.numeric.rel_tol},
        {"abs_tol", cfg.numeric.abs_tol},
        {"max_terms", cfg.numeric.max_terms},
        {"quad_tol", cfg.numeric.quad_tol}}},
      {"output", {{"format", cfg.output.format}, {"path", cfg.output.path}}}};
}

std::string canonical_config(const RunConfig& cfg) { return to_json(cfg).dump(); }

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace pqjc
