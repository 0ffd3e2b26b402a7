// qpflow: symbolic-numeric toolkit for the superintegrable family
// H = p^2 + F(q.p). Subcommands: simulate, construct, verify, independence.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qpflow/report.hpp"

namespace {

// Exit codes (documented in the README):
//   0 success / all checks within tolerance
//   2 configuration error
//   3 Newton divergence during integration
//   4 tolerance or threshold violation
//   5 divisibility failure in an exact construction
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNewton = 3;
constexpr int kExitThreshold = 4;
constexpr int kExitDivisibility = 5;

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<uint64_t> seed;
  std::optional<int> dim;
  std::optional<double> threshold;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
  auto* opt = cmd->add_option("--config", flags.config_path, "Path to the JSON configuration");
  if (config_required) opt->required();
  cmd->add_option("--out", flags.out_dir, "Output directory");
  cmd->add_option("--seed", flags.seed, "Override the config seed");
  cmd->add_option("--dim", flags.dim, "Override the configuration dimension n");
  cmd->add_option("--threshold", flags.threshold, "Override the drift/bracket tolerance");
}

qpflow::VerifyConfig load_verify_config(const CommonFlags& flags) {
  qpflow::VerifyConfig cfg =
      qpflow::verify_config_from_json(qpflow::load_json_file(flags.config_path));
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.dim) cfg.dim = *flags.dim;
  if (flags.threshold) {
    cfg.bracket_tol = *flags.threshold;
    cfg.ad_vs_fd_tol = *flags.threshold;
    cfg.identity8_tol = *flags.threshold;
  }
  return cfg;
}

int run_simulate_cmd(const CommonFlags& flags) {
  qpflow::Json j = qpflow::load_json_file(flags.config_path);
  if (flags.seed) j["seed"] = *flags.seed;
  qpflow::RunConfig cfg = qpflow::run_config_from_json(j);
  if (flags.threshold) cfg.drift_threshold = *flags.threshold;
  const qpflow::Json summary = qpflow::run_simulate(cfg, flags.out_dir);
  std::cout << summary.dump(2) << "\n";
  return summary["all_within_threshold"].get<bool>() ? kExitOk : kExitThreshold;
}

int run_verify_cmd(const CommonFlags& flags, bool independence_only) {
  const qpflow::VerifyConfig cfg = load_verify_config(flags);
  const qpflow::Json report =
      independence_only ? qpflow::run_independence(cfg) : qpflow::run_verify(cfg);
  const std::string out_name = independence_only ? "independence_report.json" : "verify_report.json";
  qpflow::write_text_file(flags.out_dir + "/" + out_name, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return report["pass"].get<bool>() ? kExitOk : kExitThreshold;
}

int report_construct(const qpflow::ConstructReport& rep) {
  std::cout << rep.json["pretty"].get<std::string>() << "\n";
  std::cout << rep.json.dump(2) << "\n";
  std::cout << "bracket {C,H}: " << (rep.bracket_zero ? "exactly zero" : "NONZERO") << "\n";
  std::cout << "momentum degree: " << rep.degree << "\n";
  return rep.bracket_zero ? kExitOk : kExitThreshold;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conserved-quantity toolkit for H = p^2 + F(q.p)"};
  app.require_subcommand(1);

  CommonFlags sim_flags, ver_flags, ind_flags;
  auto* sim = app.add_subcommand("simulate", "Integrate trajectories and report drifts");
  add_common(sim, sim_flags, true);

  auto* ver = app.add_subcommand("verify", "Bracket, identity, and rank suites");
  add_common(ver, ver_flags, true);

  auto* ind = app.add_subcommand("independence", "Jacobian rank suite only");
  add_common(ind, ind_flags, true);

  int construct_N = 0;
  std::string construct_gamma = "1";
  std::vector<std::string> zernike_gammas;
  auto* con = app.add_subcommand("construct", "Exact polynomial integral + bracket proof");
  con->add_option("--N", construct_N, "Monomial degree N >= 1 of F = gamma s^N");
  con->add_option("--gamma", construct_gamma, "Exact rational gamma (e.g. -3/2)");
  con->add_option("--zernike", zernike_gammas, "Zernike pair gamma1 gamma2")->expected(2);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_simulate_cmd(sim_flags);
    if (ver->parsed()) return run_verify_cmd(ver_flags, false);
    if (ind->parsed()) return run_verify_cmd(ind_flags, true);
    if (con->parsed()) {
      if (!zernike_gammas.empty()) {
        return report_construct(qpflow::run_construct_zernike(
            qpflow::BigRational::from_string(zernike_gammas[0]),
            qpflow::BigRational::from_string(zernike_gammas[1])));
      }
      if (construct_N < 1) {
        std::cerr << "construct: need --N >= 1 or --zernike g1 g2\n";
        return kExitConfig;
      }
      return report_construct(qpflow::run_construct_monomial(
          construct_N, qpflow::BigRational::from_string(construct_gamma)));
    }
  } catch (const qpflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qpflow::NewtonDivergence& e) {
    std::cerr << e.what() << "\n";
    return kExitNewton;
  } catch (const qpflow::DivisibilityFailure& e) {
    std::cerr << e.what() << "\n";
    return kExitDivisibility;
  } catch (const qpflow::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qpflow::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
