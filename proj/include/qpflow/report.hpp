#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpflow/construct.hpp"
#include "qpflow/dynamics.hpp"
#include "qpflow/integrals.hpp"
#include "qpflow/verify.hpp"

namespace qpflow {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Parsed `simulate` configuration. Unknown keys are rejected everywhere.
struct RunConfig {
  FSpec f;
  std::vector<CartesianState> initial_states;
  IntegratorConfig integrator;
  std::vector<IntegralSpec> observables;
  uint64_t seed = 0;
  double drift_threshold = 1e-6;
  std::string trajectory_prefix = "trajectory";
  std::string summary_name = "drift_summary.json";
};

/// Parsed `verify` / `independence` configuration.
struct VerifyConfig {
  FSpec f;
  int dim = 2;
  int samples = 1000;
  uint64_t seed = 42;
  double fd_step = 1e-5;
  double bracket_tol = 1e-6;
  double identity8_tol = 1e-10;
  double ad_vs_fd_tol = 1e-6;
  double rank_tol = 1e-8;
  double rank_fraction = 0.95;
};

FSpec fspec_from_json(const Json& j);
Json fspec_to_json(const FSpec& f);

IntegralSpec integral_spec_from_json(const Json& j);
Json integral_spec_to_json(const IntegralSpec& s);

RunConfig run_config_from_json(const Json& j);
VerifyConfig verify_config_from_json(const Json& j);

Json load_json_file(const std::string& path);  // ConfigError on parse failure

/// Trajectory CSV: header t,q1..qn,p1..pn,<observables>, 17-significant-digit
/// round-trip decimal formatting.
std::string trajectory_csv(const Trajectory& traj);

/// Runs every initial state, writes one CSV per state plus a drift summary
/// under out_dir, returns the summary. summary["all_within_threshold"] drives
/// the exit code.
Json run_simulate(const RunConfig& cfg, const std::string& out_dir);

/// fd-bracket suite, ad-vs-fd suite, two-path identity suite, and
/// independence ranks; deterministic for a fixed seed.
Json run_verify(const VerifyConfig& cfg);

/// The independence-rank part alone.
Json run_independence(const VerifyConfig& cfg);

/// Constructs the polynomial integral for a monomial (or the Zernike pair),
/// proves {C,H} = 0 exactly, reports the verdict.
struct ConstructReport {
  TrigPoly integral;
  bool bracket_zero = false;
  int degree = -1;
  Json json;
};
ConstructReport run_construct_monomial(int N, const BigRational& gamma);
ConstructReport run_construct_zernike(const BigRational& g1, const BigRational& g2);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qpflow
