#include "qpflow/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

namespace qpflow {

namespace {

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

BigRational rational_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return BigRational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return BigRational(j.get<long long>());
    if (j.is_number_float()) return BigRational::from_string(fmt17(j.get<double>()));
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected a rational (string or number)");
}

}  // namespace

FSpec fspec_from_json(const Json& j) {
  reject_unknown_keys(j, {"type", "coeffs", "text"}, "f");
  const std::string type = j.value("type", "");
  if (type == "poly") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
      throw ConfigError("f: poly requires a 'coeffs' array");
    std::vector<BigRational> gammas;
    for (const auto& c : j["coeffs"]) gammas.push_back(rational_from_json(c, "f.coeffs"));
    return FSpec::poly(std::move(gammas));
  }
  if (type == "expr") {
    if (!j.contains("text") || !j["text"].is_string())
      throw ConfigError("f: expr requires a 'text' string");
    try {
      return FSpec::parse(j["text"].get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(std::string("f: ") + e.what());
    }
  }
  throw ConfigError("f: type must be 'poly' or 'expr'");
}

Json fspec_to_json(const FSpec& f) {
  Json out;
  if (f.is_poly()) {
    out["type"] = "poly";
    Json coeffs = Json::array();
    for (const auto& g : f.gammas()) coeffs.push_back(g.str());
    out["coeffs"] = std::move(coeffs);
  } else {
    out["type"] = "expr";
    out["text"] = f.text();
  }
  return out;
}

IntegralSpec integral_spec_from_json(const Json& j) {
  reject_unknown_keys(j, {"kind", "n", "k", "i", "j", "axis", "gamma", "gamma1", "gamma2"},
                      "observable");
  IntegralSpec s;
  const std::string kind = j.value("kind", "");
  using Kind = IntegralSpec::Kind;
  if (kind == "energy") s.kind = Kind::Energy;
  else if (kind == "angular_momentum") s.kind = Kind::AngularMomentum;
  else if (kind == "angular_momentum_total") s.kind = Kind::AngularMomentumTotal;
  else if (kind == "c_n") s.kind = Kind::Cn;
  else if (kind == "k_analytic") s.kind = Kind::KAnalytic;
  else if (kind == "ctilde_even") s.kind = Kind::CTildeEven;
  else if (kind == "ctilde_odd") s.kind = Kind::CTildeOdd;
  else if (kind == "zernike") s.kind = Kind::Zernike;
  else if (kind == "c3_explicit") s.kind = Kind::C3Explicit;
  else if (kind == "plane_c1") s.kind = Kind::PlaneC1;
  else throw ConfigError("observable: unknown kind '" + kind + "'");

  if (j.contains("n")) s.n = j["n"].get<int>();
  if (j.contains("k")) s.k = j["k"].get<int>();
  if (j.contains("i")) s.i = j["i"].get<int>();
  if (j.contains("j")) s.j = j["j"].get<int>();
  if (j.contains("axis")) s.axis = j["axis"].get<int>();
  if (j.contains("gamma")) s.gamma = rational_from_json(j["gamma"], "observable.gamma");
  if (j.contains("gamma1")) s.gamma1 = rational_from_json(j["gamma1"], "observable.gamma1");
  if (j.contains("gamma2")) s.gamma2 = rational_from_json(j["gamma2"], "observable.gamma2");
  return s;
}

Json integral_spec_to_json(const IntegralSpec& s) {
  using Kind = IntegralSpec::Kind;
  Json out;
  switch (s.kind) {
    case Kind::Energy: out["kind"] = "energy"; break;
    case Kind::AngularMomentum:
      out["kind"] = "angular_momentum";
      out["i"] = s.i;
      out["j"] = s.j;
      break;
    case Kind::AngularMomentumTotal: out["kind"] = "angular_momentum_total"; break;
    case Kind::Cn:
      out["kind"] = "c_n";
      out["n"] = s.n;
      break;
    case Kind::KAnalytic:
      out["kind"] = "k_analytic";
      out["axis"] = s.axis;
      break;
    case Kind::CTildeEven:
      out["kind"] = "ctilde_even";
      out["k"] = s.k;
      out["gamma"] = s.gamma.str();
      break;
    case Kind::CTildeOdd:
      out["kind"] = "ctilde_odd";
      out["k"] = s.k;
      out["gamma"] = s.gamma.str();
      break;
    case Kind::Zernike:
      out["kind"] = "zernike";
      out["gamma1"] = s.gamma1.str();
      out["gamma2"] = s.gamma2.str();
      break;
    case Kind::C3Explicit:
      out["kind"] = "c3_explicit";
      out["gamma"] = s.gamma.str();
      break;
    case Kind::PlaneC1: out["kind"] = "plane_c1"; break;
  }
  return out;
}

namespace {

CartesianState state_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() < 4 || j.size() % 2 != 0)
      throw ConfigError("initial state array must hold [q..., p...] with n >= 2");
    const Eigen::Index n = Eigen::Index(j.size() / 2);
    CartesianState s;
    s.q.resize(n);
    s.p.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      s.q[i] = j[size_t(i)].get<double>();
      s.p[i] = j[size_t(n + i)].get<double>();
    }
    return s;
  }
  reject_unknown_keys(j, {"r", "phi", "pr", "pphi"}, "initial state");
  PolarState ps{j.at("r").get<double>(), j.at("phi").get<double>(), j.at("pr").get<double>(),
                j.at("pphi").get<double>()};
  return to_cartesian(ps);
}

Json state_to_json(const CartesianState& s) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) out.push_back(s.q[i]);
  for (Eigen::Index i = 0; i < s.dim(); ++i) out.push_back(s.p[i]);
  return out;
}

IntegratorConfig integrator_from_json(const Json& j) {
  reject_unknown_keys(
      j, {"method", "h", "t_end", "newton_tol", "newton_max_iter", "record_every"},
      "integrator");
  IntegratorConfig cfg;
  const std::string method = j.value("method", "implicit_midpoint");
  if (method == "implicit_midpoint") cfg.method = Method::ImplicitMidpoint;
  else if (method == "rk4") cfg.method = Method::Rk4;
  else throw ConfigError("integrator.method must be implicit_midpoint or rk4");
  if (!j.contains("h") || !j.contains("t_end"))
    throw ConfigError("integrator requires h and t_end");
  cfg.h = j["h"].get<double>();
  cfg.t_end = j["t_end"].get<double>();
  cfg.newton_tol = j.value("newton_tol", 1e-12);
  cfg.newton_max_iter = j.value("newton_max_iter", 50);
  cfg.record_every = j.value("record_every", 1);
  if (!(cfg.h > 0.0) || !(cfg.t_end > cfg.h) || !(cfg.newton_tol > 0.0) ||
      cfg.record_every < 1)
    throw ConfigError("integrator: need 0 < h < t_end, positive tolerances, record_every >= 1");
  return cfg;
}

void check_schema_version(const Json& j, const std::string& where) {
  if (!j.contains("schema_version")) throw ConfigError(where + ": missing schema_version");
  if (j["schema_version"].get<int>() != kSchemaVersion)
    throw ConfigError(where + ": unsupported schema_version");
}

}  // namespace

RunConfig run_config_from_json(const Json& j) {
  reject_unknown_keys(j,
                      {"schema_version", "f", "initial_states", "random_states", "integrator",
                       "observables", "seed", "drift_threshold", "output"},
                      "config");
  check_schema_version(j, "config");
  RunConfig cfg;
  if (!j.contains("f")) throw ConfigError("config: missing f");
  cfg.f = fspec_from_json(j["f"]);
  if (!j.contains("integrator")) throw ConfigError("config: missing integrator");
  cfg.integrator = integrator_from_json(j["integrator"]);
  cfg.seed = j.value("seed", uint64_t(0));
  cfg.drift_threshold = j.value("drift_threshold", 1e-6);

  if (j.contains("initial_states")) {
    if (!j["initial_states"].is_array()) throw ConfigError("initial_states must be an array");
    for (const auto& sj : j["initial_states"]) cfg.initial_states.push_back(state_from_json(sj));
  }
  if (j.contains("random_states")) {
    reject_unknown_keys(j["random_states"], {"count", "dim"}, "random_states");
    const int count = j["random_states"].value("count", 0);
    const int dim = j["random_states"].value("dim", 2);
    if (count < 1 || dim < 2) throw ConfigError("random_states: count >= 1, dim >= 2");
    Rng rng(cfg.seed);
    for (int i = 0; i < count; ++i) cfg.initial_states.push_back(sample_nondegenerate(rng, dim));
  }
  if (cfg.initial_states.empty()) throw ConfigError("config: no initial states");

  if (!j.contains("observables") || !j["observables"].is_array() || j["observables"].empty())
    throw ConfigError("config: missing observables");
  for (const auto& oj : j["observables"])
    cfg.observables.push_back(integral_spec_from_json(oj));

  if (j.contains("output")) {
    reject_unknown_keys(j["output"], {"trajectory_prefix", "summary_name"}, "output");
    cfg.trajectory_prefix = j["output"].value("trajectory_prefix", cfg.trajectory_prefix);
    cfg.summary_name = j["output"].value("summary_name", cfg.summary_name);
  }
  return cfg;
}

VerifyConfig verify_config_from_json(const Json& j) {
  reject_unknown_keys(j, {"schema_version", "f", "dim", "samples", "seed", "fd_step", "tolerances"},
                      "config");
  check_schema_version(j, "config");
  VerifyConfig cfg;
  if (!j.contains("f")) throw ConfigError("config: missing f");
  cfg.f = fspec_from_json(j["f"]);
  cfg.dim = j.value("dim", 2);
  cfg.samples = j.value("samples", 1000);
  cfg.seed = j.value("seed", uint64_t(42));
  cfg.fd_step = j.value("fd_step", 1e-5);
  if (cfg.dim < 2 || cfg.samples < 1) throw ConfigError("config: dim >= 2, samples >= 1");
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    reject_unknown_keys(t, {"bracket", "identity8", "ad_vs_fd", "rank_tol", "rank_fraction"},
                        "tolerances");
    cfg.bracket_tol = t.value("bracket", cfg.bracket_tol);
    cfg.identity8_tol = t.value("identity8", cfg.identity8_tol);
    cfg.ad_vs_fd_tol = t.value("ad_vs_fd", cfg.ad_vs_fd_tol);
    cfg.rank_tol = t.value("rank_tol", cfg.rank_tol);
    cfg.rank_fraction = t.value("rank_fraction", cfg.rank_fraction);
  }
  return cfg;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t";
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().dim();
  for (Eigen::Index i = 1; i <= n; ++i) out += ",q" + std::to_string(i);
  for (Eigen::Index i = 1; i <= n; ++i) out += ",p" + std::to_string(i);
  for (const auto& name : traj.observable_names) out += "," + name;
  out += "\n";
  for (size_t row = 0; row < traj.t.size(); ++row) {
    out += fmt17(traj.t[row]);
    const CartesianState& s = traj.states[row];
    for (Eigen::Index i = 0; i < n; ++i) out += "," + fmt17(s.q[i]);
    for (Eigen::Index i = 0; i < n; ++i) out += "," + fmt17(s.p[i]);
    for (const auto& col : traj.observables) out += "," + fmt17(col[row]);
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

Json run_simulate(const RunConfig& cfg, const std::string& out_dir) {
  Json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["f"] = fspec_to_json(cfg.f);
  summary["drift_threshold"] = cfg.drift_threshold;
  Json per_state = Json::array();
  bool all_ok = true;

  for (size_t idx = 0; idx < cfg.initial_states.size(); ++idx) {
    std::vector<Observable> obs;
    for (const auto& spec : cfg.observables) obs.push_back(make_observable(spec, cfg.f));
    const Trajectory traj = integrate(cfg.initial_states[idx], cfg.f, cfg.integrator, obs);
    const std::string csv_name =
        cfg.trajectory_prefix + "_" + std::to_string(idx) + ".csv";
    write_text_file(out_dir + "/" + csv_name, trajectory_csv(traj));

    Json entry;
    entry["initial_state"] = state_to_json(cfg.initial_states[idx]);
    entry["csv"] = csv_name;
    Json drifts;
    bool ok = true;
    for (size_t k = 0; k < obs.size(); ++k) {
      drifts[traj.observable_names[k]] = traj.drift[k];
      ok = ok && traj.drift[k] <= cfg.drift_threshold;
    }
    entry["drift"] = std::move(drifts);
    entry["within_threshold"] = ok;
    all_ok = all_ok && ok;
    per_state.push_back(std::move(entry));
  }
  summary["states"] = std::move(per_state);
  summary["all_within_threshold"] = all_ok;
  write_text_file(out_dir + "/" + cfg.summary_name, summary.dump(2) + "\n");
  return summary;
}

namespace {

Json report_state(const CartesianState& s) { return state_to_json(s); }

struct NamedObservable {
  IntegralSpec spec;
  Observable obs;
};

// The deterministic observable list the verify suites run over.
std::vector<NamedObservable> verify_observables(const VerifyConfig& cfg) {
  std::vector<NamedObservable> out;
  using Kind = IntegralSpec::Kind;
  auto add = [&](IntegralSpec spec) {
    out.push_back({spec, make_observable(spec, cfg.f)});
  };
  add({.kind = Kind::Energy});
  if (cfg.dim == 2) {
    add({.kind = Kind::AngularMomentum, .i = 1, .j = 2});
    add({.kind = Kind::Cn, .n = 1});
    add({.kind = Kind::Cn, .n = 2});
    add({.kind = Kind::KAnalytic, .axis = 1});
    add({.kind = Kind::KAnalytic, .axis = 2});
  } else {
    for (int i = 1; i <= cfg.dim; ++i)
      for (int j = i + 1; j <= cfg.dim; ++j)
        add({.kind = Kind::AngularMomentum, .i = i, .j = j});
    add({.kind = Kind::AngularMomentumTotal});
    add({.kind = Kind::PlaneC1});
  }
  return out;
}

}  // namespace

Json run_independence(const VerifyConfig& cfg) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["f"] = fspec_to_json(cfg.f);
  out["seed"] = cfg.seed;
  out["samples"] = cfg.samples;
  out["dim"] = cfg.dim;

  std::vector<Observable> base, extended;
  int expected_rank = 0;
  if (cfg.dim == 2) {
    base.push_back(make_observable({.kind = IntegralSpec::Kind::Energy}, cfg.f));
    base.push_back(make_observable({.kind = IntegralSpec::Kind::AngularMomentum}, cfg.f));
    base.push_back(make_observable({.kind = IntegralSpec::Kind::Cn, .n = 1}, cfg.f));
    extended = base;
    extended.push_back(make_observable({.kind = IntegralSpec::Kind::Cn, .n = 2}, cfg.f));
    expected_rank = 3;
  } else {
    base.push_back(make_observable({.kind = IntegralSpec::Kind::Energy}, cfg.f));
    for (int i = 1; i <= cfg.dim; ++i)
      for (int j = i + 1; j <= cfg.dim; ++j)
        base.push_back(
            make_observable({.kind = IntegralSpec::Kind::AngularMomentum, .i = i, .j = j}, cfg.f));
    base.push_back(make_observable({.kind = IntegralSpec::Kind::PlaneC1}, cfg.f));
    expected_rank = 2 * cfg.dim - 1;
  }

  Rng rng(cfg.seed);
  std::map<int, int> base_hist, ext_hist;
  int hits = 0, ext_leq = 0;
  for (int k = 0; k < cfg.samples; ++k) {
    const CartesianState s = sample_nondegenerate(rng, cfg.dim);
    const int rb = independence_rank(s, base, cfg.rank_tol);
    base_hist[rb]++;
    if (rb == expected_rank) ++hits;
    if (!extended.empty()) {
      const int re = independence_rank(s, extended, cfg.rank_tol);
      ext_hist[re]++;
      if (re <= expected_rank) ++ext_leq;
    }
  }

  Json bh, eh;
  for (const auto& [rank, count] : base_hist) bh[std::to_string(rank)] = count;
  for (const auto& [rank, count] : ext_hist) eh[std::to_string(rank)] = count;
  out["expected_rank"] = expected_rank;
  out["rank_histogram"] = std::move(bh);
  out["rank_fraction"] = double(hits) / double(cfg.samples);
  if (cfg.dim == 2) {
    out["extended_rank_histogram"] = std::move(eh);
    out["extended_rank_not_exceeding"] = double(ext_leq) / double(cfg.samples);
  }
  out["pass"] = double(hits) / double(cfg.samples) >= cfg.rank_fraction &&
                (cfg.dim != 2 || ext_leq == cfg.samples);
  return out;
}

Json run_verify(const VerifyConfig& cfg) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["f"] = fspec_to_json(cfg.f);
  out["seed"] = cfg.seed;
  out["samples"] = cfg.samples;
  out["dim"] = cfg.dim;
  out["tolerances"] = {{"bracket", cfg.bracket_tol},
                       {"identity8", cfg.identity8_tol},
                       {"ad_vs_fd", cfg.ad_vs_fd_tol},
                       {"rank_tol", cfg.rank_tol},
                       {"rank_fraction", cfg.rank_fraction}};
  bool pass = true;

  // fd-bracket residual suite: |{C, H}| for every implemented integral.
  const auto observables = verify_observables(cfg);
  const Observable h_obs = make_observable({.kind = IntegralSpec::Kind::Energy}, cfg.f);
  Rng rng_bracket(cfg.seed);
  Json brackets = Json::array();
  for (const auto& [spec, obs] : observables) {
    BracketReport rep = bracket_suite(obs, h_obs, rng_bracket, cfg.dim, cfg.samples, cfg.fd_step);
    Json entry;
    entry["integral"] = rep.integral;
    entry["spec"] = integral_spec_to_json(spec);
    entry["samples"] = rep.samples;
    entry["excluded"] = rep.excluded;
    entry["max_abs_residual"] = rep.max_abs_residual;
    entry["worst_state"] = report_state(rep.worst_state);
    entry["pass"] = rep.max_abs_residual <= cfg.bracket_tol;
    pass = pass && rep.max_abs_residual <= cfg.bracket_tol;
    brackets.push_back(std::move(entry));
  }
  out["bracket_suite"] = std::move(brackets);

  // Analytic (dual) bracket vs finite differences on random pairs.
  if (cfg.dim == 2) {
    std::vector<Observable> pool;
    pool.push_back(make_observable({.kind = IntegralSpec::Kind::Energy}, cfg.f));
    pool.push_back(make_observable({.kind = IntegralSpec::Kind::AngularMomentum}, cfg.f));
    pool.push_back(make_observable({.kind = IntegralSpec::Kind::Cn, .n = 1}, cfg.f));
    pool.push_back(make_observable({.kind = IntegralSpec::Kind::KAnalytic, .axis = 2}, cfg.f));
    Rng rng_pairs(cfg.seed + 1);
    double worst = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
      const CartesianState s = sample_nondegenerate(rng_pairs, 2);
      const size_t a = size_t(rng_pairs.uniform(0.0, double(pool.size())));
      const size_t b = size_t(rng_pairs.uniform(0.0, double(pool.size())));
      const double ad = ad_bracket(pool[a], pool[b], s);
      const double fd = fd_bracket(pool[a], pool[b], s, cfg.fd_step);
      const double rel = std::abs(ad - fd) / std::max({1.0, std::abs(ad), std::abs(fd)});
      worst = std::max(worst, rel);
    }
    Json ad;
    ad["pairs"] = cfg.samples;
    ad["max_rel_difference"] = worst;
    ad["pass"] = worst <= cfg.ad_vs_fd_tol;
    pass = pass && worst <= cfg.ad_vs_fd_tol;
    out["ad_vs_fd"] = std::move(ad);
  }

  // Two-path identity residuals (n = 2 only; its own p^2 predicate).
  if (cfg.dim == 2) {
    Rng rng_id(cfg.seed + 2);
    double worst = 0.0;
    Json worst_state = Json::array();
    int used = 0;
    while (used < cfg.samples) {
      const CartesianState s = sample_box(rng_id, 2);
      if (s.p.squaredNorm() <= 1e-4) continue;
      ++used;
      for (int axis = 1; axis <= 2; ++axis) {
        const double res = identity8_residual(s, cfg.f, axis);
        if (res > worst) {
          worst = res;
          worst_state = report_state(s);
        }
      }
    }
    Json id8;
    id8["samples"] = cfg.samples;
    id8["max_abs_residual"] = worst;
    id8["worst_state"] = std::move(worst_state);
    id8["pass"] = worst <= cfg.identity8_tol;
    pass = pass && worst <= cfg.identity8_tol;
    out["identity8"] = std::move(id8);
  }

  Json indep = run_independence(cfg);
  pass = pass && indep["pass"].get<bool>();
  out["independence"] = std::move(indep);

  out["pass"] = pass;
  return out;
}

namespace {

ConstructReport finish_construct(TrigPoly integral, const TrigPoly& h) {
  ConstructReport rep;
  rep.bracket_zero = is_zero(poisson_bracket(integral, h));
  rep.degree = momentum_degree(integral);
  rep.json["schema_version"] = kSchemaVersion;
  rep.json["integral"] = trigpoly_to_json(integral);
  rep.json["pretty"] = pretty(integral);
  rep.json["bracket_exactly_zero"] = rep.bracket_zero;
  rep.json["momentum_degree"] = rep.degree;
  rep.integral = std::move(integral);
  return rep;
}

}  // namespace

ConstructReport run_construct_monomial(int N, const BigRational& gamma) {
  TrigPoly c = construct_for_monomial(N, gamma);
  std::vector<BigRational> gammas(size_t(N), BigRational(0));
  gammas.back() = gamma;
  ConstructReport rep = finish_construct(std::move(c), h_symbolic(FSpec::poly(gammas)));
  rep.json["N"] = N;
  rep.json["gamma"] = gamma.str();
  return rep;
}

ConstructReport run_construct_zernike(const BigRational& g1, const BigRational& g2) {
  TrigPoly c = construct_zernike(g1, g2);
  ConstructReport rep = finish_construct(std::move(c), h_symbolic(FSpec::poly({g1, g2})));
  rep.json["gamma1"] = g1.str();
  rep.json["gamma2"] = g2.str();
  return rep;
}

}  // namespace qpflow
