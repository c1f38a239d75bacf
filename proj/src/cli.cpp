#include "tflab/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <ostream>

#ifndef TFLAB_DEFAULT_BASELINES
#define TFLAB_DEFAULT_BASELINES "data/baselines.json"
#endif

namespace tflab::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr const char* kIndexNames[] = {"p", "p1", "p2", "q", "s", "u", "v", "w", "r"};

std::optional<Exponent>& index_slot(IndexTuple& idx, std::string_view name) {
  if (name == "p") return idx.p;
  if (name == "p1") return idx.p1;
  if (name == "p2") return idx.p2;
  if (name == "q") return idx.q;
  if (name == "s") return idx.s;
  if (name == "u") return idx.u;
  if (name == "v") return idx.v;
  if (name == "w") return idx.w;
  return idx.r;
}

Json optional_number(const std::optional<double>& x) { return x ? number_to_json(*x) : Json(nullptr); }

std::optional<double> optional_number_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return number_from_json(j.at(key));
}

/// String flags that stand in for config fields, so that a flag only
/// overrides the config when it is actually given.
struct FlagBuffer {
  std::string indices[std::size(kIndexNames)];
  std::string t;
  std::string epsilon;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty())
    out << text;
  else
    write_text_file(cfg.output, text);
}

std::string number_line(double x) {
  if (std::isnan(x)) return "nan\n";
  if (std::isinf(x)) return x > 0 ? "inf\n" : "-inf\n";
  return fmt::format("{:.17g}\n", x);
}

FiniteAbelianGroup require_group(const RunConfig& cfg) {
  if (cfg.group.empty()) throw UsageError("--group is required");
  return FiniteAbelianGroup::parse(cfg.group);
}

std::optional<FiniteAbelianGroup> optional_group(const RunConfig& cfg) {
  if (cfg.group.empty()) return std::nullopt;
  return FiniteAbelianGroup::parse(cfg.group);
}

Json load_json(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(fmt::format("{} is required", flag));
  return parse_json(read_text_file(path), path);
}

Exponent need(const std::optional<Exponent>& e, const char* name) {
  if (!e) throw UsageError(fmt::format("--{} is required", name));
  return *e;
}

std::optional<GroupEndomorphism::Matrix> tau_matrix(const std::string& spec, const FiniteAbelianGroup& g) {
  if (spec.empty()) return std::nullopt;
  if (spec.front() == '[') return matrix_from_json(parse_json(spec, "--tau"));
  std::int64_t c = 0;
  try {
    std::size_t used = 0;
    c = std::stoll(spec, &used);
    if (used != spec.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw FormatError(fmt::format("--tau must be an integer or a JSON matrix, got '{}'", spec));
  }
  GroupEndomorphism::Matrix m(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
  for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = c;
  return m;
}

GroupEndomorphism require_tau(const RunConfig& cfg, const FiniteAbelianGroup& g) {
  const auto m = tau_matrix(cfg.tau, g);
  if (!m) throw UsageError("--tau is required");
  return GroupEndomorphism(g, *m);
}

TheoremInstance make_instance(const RunConfig& cfg) {
  if (cfg.theorem.empty()) throw UsageError("--theorem is required");
  const auto group = require_group(cfg);
  TheoremInstance inst;
  inst.theorem = theorem_from_string(cfg.theorem);
  inst.group = group.spec();
  inst.indices = cfg.indices;
  inst.tau = tau_matrix(cfg.tau, group);
  if (!cfg.sampling.empty()) inst.sampling = sample_kind_from_string(cfg.sampling);
  inst.trials = cfg.trials;
  inst.seed = cfg.seed;
  inst.tolerance = cfg.tolerance;
  const auto adm = check_admissibility(inst);
  if (!adm.ok) throw VerifyError(fmt::format("inadmissible instance: {}", adm.explanation));
  return inst;
}

StepFunction rearranged_input(const Json& j, const std::optional<FiniteAbelianGroup>& group) {
  if (j.is_object() && j.contains("breaks")) return step_from_json(j);
  if (j.is_object() && j.contains("atoms")) return rearrangement(measured_from_json(j));
  return rearrangement(group_function_from_json(j, group).measured());
}

int cmd_group_info(const RunConfig& cfg, std::ostream& out) {
  const auto g = require_group(cfg);
  Json j;
  j["group"] = g.spec();
  j["order"] = g.order();
  j["rank"] = g.rank();
  j["orders"] = g.orders();
  j["haar"] = g.haar_weight();
  j["dual_haar"] = g.dual_haar_weight();
  j["exponent"] = g.phase_modulus();
  if (const auto m = tau_matrix(cfg.tau, g)) {
    const GroupEndomorphism tau(g, *m);
    const auto cert = certify_automorphism(tau);
    j["tau"] = matrix_to_json(tau.matrix());
    j["automorphism"] = cert.automorphism;
    j["inverse"] = cert.inverse ? matrix_to_json(cert.inverse->matrix()) : Json(nullptr);
    j["dual"] = matrix_to_json(tau.dual().matrix());
    j["modulus"] = cert.automorphism ? number_to_json(modulus(tau)) : Json(nullptr);
  }
  emit(cfg, dump(j), out);
  return kOk;
}

int cmd_norm(const RunConfig& cfg, std::ostream& out) {
  const double p = need(cfg.indices.p, "p").to_double();
  const double q = need(cfg.indices.q, "q").to_double();
  const Json j = load_json(cfg.input, "--input");
  double value = 0.0;
  if (j.is_object() && j.contains("breaks")) {
    value = lorentz_norm(step_from_json(j), p, q);
  } else {
    const MeasuredFunction f = j.is_object() && j.contains("atoms")
                                   ? measured_from_json(j)
                                   : group_function_from_json(j, optional_group(cfg)).measured();
    if (cfg.method == "auto" || cfg.method == "rearrangement")
      value = lorentz_norm(f, p, q);
    else if (cfg.method == "distribution")
      value = lorentz_norm_via_distribution(f, p, q);
    else if (cfg.method == "double-star")
      value = lorentz_norm_double_star(f, p, q);
    else
      throw UsageError(fmt::format("unknown norm method '{}'", cfg.method));
  }
  emit(cfg, number_line(value), out);
  return kOk;
}

int cmd_fourier(const RunConfig& cfg, std::ostream& out) {
  const auto f = group_function_from_json(load_json(cfg.input, "--input"), optional_group(cfg));
  emit(cfg, dump(group_function_to_json(fourier(f))), out);
  return kOk;
}

int cmd_stft(const RunConfig& cfg, std::ostream& out) {
  const auto group = optional_group(cfg);
  const auto f = group_function_from_json(load_json(cfg.input, "--input"), group);
  const auto g = group_function_from_json(load_json(cfg.window, "--window"), group);
  emit(cfg, dump(tf_array_to_json(stft(f, g))), out);
  return kOk;
}

int cmd_wigner(const RunConfig& cfg, std::ostream& out) {
  const auto group = optional_group(cfg);
  const auto f = group_function_from_json(load_json(cfg.input, "--input"), group);
  const auto g = group_function_from_json(load_json(cfg.window, "--window"), group);
  const auto tau = require_tau(cfg, f.group());
  emit(cfg, dump(tf_array_to_json(wigner_tau(f, g, tau))), out);
  return kOk;
}

int cmd_weyl(const RunConfig& cfg, std::ostream& out) {
  const auto phi = tf_array_from_json(load_json(cfg.symbol, "--symbol"), optional_group(cfg));
  const auto tau = require_tau(cfg, phi.group());
  const OperatorMatrix op = weyl_operator(phi, tau);
  if (cfg.input.empty()) {
    emit(cfg, dump(operator_to_json(op)), out);
  } else {
    const auto f = group_function_from_json(load_json(cfg.input, "--input"), phi.group());
    emit(cfg, dump(group_function_to_json(op.apply(f))), out);
  }
  return kOk;
}

int cmd_calderon(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.t) throw UsageError("--t is required");
  const auto group = optional_group(cfg);
  const StepFunction f = rearranged_input(load_json(cfg.input, "--input"), group);
  const StepFunction g = rearranged_input(load_json(cfg.window, "--window"), group);
  EtaSet eta = stft_endpoints();
  if (cfg.eta == "l21")
    eta = l21_endpoints();
  else if (cfg.eta != "stft")
    throw UsageError(fmt::format("unknown eta set '{}' (stft or l21)", cfg.eta));
  CalderonMethod method = CalderonMethod::automatic;
  if (cfg.method == "exact")
    method = CalderonMethod::exact;
  else if (cfg.method == "quadrature")
    method = CalderonMethod::quadrature;
  else if (cfg.method != "auto")
    throw UsageError(fmt::format("unknown method '{}' (auto, exact or quadrature)", cfg.method));
  emit(cfg, number_line(calderon_apply(eta, f, g, *cfg.t, method)), out);
  return kOk;
}

std::optional<BaselineSet> load_baselines(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return baselines_from_json(load_json(path, "--baselines"));
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const TheoremInstance inst = make_instance(cfg);
  VerificationReport rep = verify_theorem(inst, cfg.timing);
  if (const auto set = load_baselines(cfg.baseline_file)) rep.baseline = find_baseline(*set, inst);
  if (cfg.format == "csv")
    emit(cfg, report_to_csv(rep), out);
  else if (cfg.format == "json")
    emit(cfg, dump(report_to_json(rep)), out);
  else
    throw UsageError(fmt::format("unknown format '{}' (json or csv)", cfg.format));
  return rep.violations.empty() ? kOk : kViolation;
}

int cmd_extremize(const RunConfig& cfg, std::ostream& out) {
  const TheoremInstance inst = make_instance(cfg);
  const ExtremizerResult res = extremizer_search(inst, cfg.budget, cfg.restarts);
  Json j;
  j["instance"] = instance_to_json(inst);
  j["budget"] = cfg.budget;
  j["restarts"] = cfg.restarts;
  j["ratio"] = number_to_json(res.ratio);
  j["evaluations"] = res.evaluations;
  j["f"] = group_function_to_json(res.f);
  j["g"] = group_function_to_json(res.g);
  emit(cfg, dump(j), out);
  return std::isfinite(res.ratio) ? kOk : kViolation;
}

std::vector<bool> load_omega(const RunConfig& cfg, const FiniteAbelianGroup& g) {
  const std::size_t n = g.order();
  std::vector<bool> mask(n * n, false);
  if (cfg.omega.empty()) {
    Sampler rng(splitmix64(cfg.seed));
    for (std::size_t c = 0; c < mask.size(); ++c) mask[c] = rng.uniform() < 0.25;
    mask[rng.index(mask.size())] = true;
    return mask;
  }
  const Json j = load_json(cfg.omega, "--omega");
  if (j.is_object() && j.contains("cells")) {
    for (const auto& cell : j.at("cells")) {
      if (!cell.is_array() || cell.size() != 2) throw FormatError("cells must be [x, xi] pairs");
      const auto x = cell[0].get<std::size_t>();
      const auto xi = cell[1].get<std::size_t>();
      if (x >= n || xi >= n) throw FormatError(fmt::format("cell [{}, {}] lies outside the phase space", x, xi));
      mask[x * n + xi] = true;
    }
    return mask;
  }
  if (!j.is_array() || j.size() != mask.size())
    throw FormatError(fmt::format("omega must be a mask of {} entries or {{\"cells\": [...]}}", mask.size()));
  for (std::size_t c = 0; c < mask.size(); ++c) mask[c] = j[c].is_boolean() ? j[c].get<bool>() : j[c].get<int>() != 0;
  return mask;
}

int cmd_uncertainty(const RunConfig& cfg, std::ostream& out) {
  const auto group = optional_group(cfg);
  const auto f = group_function_from_json(load_json(cfg.input, "--input"), group);
  const auto g = group_function_from_json(load_json(cfg.window, "--window"), f.group());
  const auto omega = load_omega(cfg, f.group());
  const auto res = uncertainty_check(f, g, omega, need(cfg.indices.q, "q").to_double(),
                                     need(cfg.indices.p, "p").to_double(), need(cfg.indices.u, "u").to_double(),
                                     need(cfg.indices.v, "v").to_double(), cfg.epsilon, cfg.tolerance);
  Json j;
  j["epsilon"] = number_to_json(res.epsilon);
  j["chain_lhs"] = number_to_json(res.chain_lhs);
  j["chain_rhs"] = number_to_json(res.chain_rhs);
  j["final_bound"] = number_to_json(res.final_bound);
  j["measure"] = number_to_json(res.measure);
  j["ratio"] = number_to_json(res.ratio);
  j["s"] = number_to_json(res.s);
  j["w"] = number_to_json(res.w);
  j["r"] = number_to_json(res.r);
  j["holds"] = res.holds;
  emit(cfg, dump(j), out);
  return res.holds ? kOk : kViolation;
}

int cmd_baseline(const RunConfig& cfg, std::ostream& out) {
  const std::string path = cfg.baseline_file.empty() ? TFLAB_DEFAULT_BASELINES : cfg.baseline_file;
  const BaselineSet computed = compute_baselines(cfg.seed);
  if (cfg.write) {
    write_text_file(path, dump(baselines_to_json(computed)));
    out << fmt::format("wrote {} baselines to {}\n", computed.entries.size(), path);
    return kOk;
  }
  const BaselineSet stored = baselines_from_json(load_json(path, "--baselines"));
  const auto problems = compare_baselines(stored, computed, cfg.tolerance);
  for (const auto& p : problems) out << "MISMATCH " << p << "\n";
  if (problems.empty()) out << fmt::format("{} baselines match {}\n", computed.entries.size(), path);
  return problems.empty() ? kOk : kViolation;
}

std::optional<std::string> prescan_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

RunConfig initial_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  if (const char* env = std::getenv("TFLAB_SEED"); env && *env) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw FormatError(fmt::format("TFLAB_SEED must be a non-negative integer, got '{}'", env));
    }
  }
  if (const auto path = prescan_config(args)) {
    const Json j = parse_json(read_text_file(*path), *path);
    const std::uint64_t env_seed = cfg.seed;
    cfg = config_from_json(j);
    if (!j.contains("seed")) cfg.seed = env_seed;
  }
  return cfg;
}

}  // namespace

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["subcommand"] = cfg.subcommand;
  j["group"] = cfg.group;
  j["theorem"] = cfg.theorem;
  j["indices"] = indices_to_json(cfg.indices);
  j["tau"] = cfg.tau;
  j["sampling"] = cfg.sampling;
  j["input"] = cfg.input;
  j["window"] = cfg.window;
  j["symbol"] = cfg.symbol;
  j["omega"] = cfg.omega;
  j["output"] = cfg.output;
  j["format"] = cfg.format;
  j["eta"] = cfg.eta;
  j["method"] = cfg.method;
  j["baselines"] = cfg.baseline_file;
  j["t"] = optional_number(cfg.t);
  j["epsilon"] = optional_number(cfg.epsilon);
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["budget"] = cfg.budget;
  j["restarts"] = cfg.restarts;
  j["tolerance"] = number_to_json(cfg.tolerance);
  j["timing"] = cfg.timing;
  j["write"] = cfg.write;
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("config must be a JSON object");
  RunConfig cfg;
  auto str = [&](const char* key, std::string& dst) {
    if (j.contains(key)) dst = j.at(key).get<std::string>();
  };
  try {
    str("subcommand", cfg.subcommand);
    str("group", cfg.group);
    str("theorem", cfg.theorem);
    if (j.contains("indices")) cfg.indices = indices_from_json(j.at("indices"));
    str("tau", cfg.tau);
    str("sampling", cfg.sampling);
    str("input", cfg.input);
    str("window", cfg.window);
    str("symbol", cfg.symbol);
    str("omega", cfg.omega);
    str("output", cfg.output);
    str("format", cfg.format);
    str("eta", cfg.eta);
    str("method", cfg.method);
    str("baselines", cfg.baseline_file);
    cfg.t = optional_number_from(j, "t");
    cfg.epsilon = optional_number_from(j, "epsilon");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("budget")) cfg.budget = j.at("budget").get<std::uint64_t>();
    if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
    if (j.contains("tolerance")) cfg.tolerance = number_from_json(j.at("tolerance"));
    if (j.contains("timing")) cfg.timing = j.at("timing").get<bool>();
    if (j.contains("write")) cfg.write = j.at("write").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("malformed config: {}", e.what()));
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = initial_config(args);
  } catch (const IoError& e) {
    err << "error: unreadable config: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: malformed config: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Time-frequency analysis and Lorentz-space inequality checks on finite abelian groups", "tflab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  bool print_config = false;
  app.add_option("--config", config_path, "JSON run configuration; flags override it");
  app.add_option("--seed", cfg.seed, "random seed (default: TFLAB_SEED or 42)");
  app.add_option("--out", cfg.output, "output file (default: standard output)");
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  FlagBuffer buf;
  auto add_group = [&](CLI::App* sub) { sub->add_option("--group", cfg.group, "group, e.g. 12 or 4x6"); };
  auto add_indices = [&](CLI::App* sub, std::initializer_list<std::string_view> names) {
    for (std::size_t i = 0; i < std::size(kIndexNames); ++i)
      if (std::find(names.begin(), names.end(), kIndexNames[i]) != names.end())
        sub->add_option(fmt::format("--{}", kIndexNames[i]), buf.indices[i], "exponent: integer, a/b, decimal or inf");
  };
  auto add_tau = [&](CLI::App* sub) {
    sub->add_option("--tau", cfg.tau, "endomorphism: integer scalar or JSON matrix such as [[2,1],[0,2]]");
  };
  auto add_instance = [&](CLI::App* sub) {
    add_group(sub);
    sub->add_option("--theorem", cfg.theorem, "t1prime, t1, t2, t3i, t3ii, t3iii, t3iv, t4dual or t5");
    add_indices(sub, {"p", "p1", "p2", "q", "s", "u", "v", "w", "r"});
    add_tau(sub);
    sub->add_option("--sampling", cfg.sampling, "gaussian-random, indicator, spike-plus-flat or tf-atom");
    sub->add_option("--trials", cfg.trials, "number of trials");
    sub->add_option("--tolerance", cfg.tolerance, "relative tolerance");
  };

  auto* group_info = app.add_subcommand("group-info", "describe a group and optionally an endomorphism");
  add_group(group_info);
  add_tau(group_info);

  auto* norm = app.add_subcommand("norm", "Lorentz quasi-norm of a function");
  add_group(norm);
  add_indices(norm, {"p", "q"});
  norm->add_option("--input", cfg.input, "function JSON");
  norm->add_option("--method", cfg.method, "rearrangement, distribution or double-star");

  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform");
  add_group(fourier_cmd);
  fourier_cmd->add_option("--input", cfg.input, "function JSON");

  auto* stft_cmd = app.add_subcommand("stft", "short-time Fourier transform V_g f");
  add_group(stft_cmd);
  stft_cmd->add_option("--input", cfg.input, "function f");
  stft_cmd->add_option("--window", cfg.window, "window g");

  auto* wigner_cmd = app.add_subcommand("wigner", "tau-Wigner transform W_tau(f, g)");
  add_group(wigner_cmd);
  add_tau(wigner_cmd);
  wigner_cmd->add_option("--input", cfg.input, "function f");
  wigner_cmd->add_option("--window", cfg.window, "function g");

  auto* weyl_cmd = app.add_subcommand("weyl", "tau-Weyl operator of a symbol, or its action on --input");
  add_group(weyl_cmd);
  add_tau(weyl_cmd);
  weyl_cmd->add_option("--symbol", cfg.symbol, "symbol on G x G^");
  weyl_cmd->add_option("--input", cfg.input, "function to apply the operator to");

  auto* calderon_cmd = app.add_subcommand("calderon", "Calderon operator S_eta(f*, g*)(t)");
  add_group(calderon_cmd);
  calderon_cmd->add_option("--input", cfg.input, "f: step function or group function");
  calderon_cmd->add_option("--window", cfg.window, "g: step function or group function");
  calderon_cmd->add_option("--t", buf.t, "evaluation point t > 0");
  calderon_cmd->add_option("--eta", cfg.eta, "stft or l21");
  calderon_cmd->add_option("--method", cfg.method, "auto, exact or quadrature");

  auto* verify_cmd = app.add_subcommand("verify", "randomized theorem check");
  add_instance(verify_cmd);
  verify_cmd->add_option("--format", cfg.format, "json or csv");
  verify_cmd->add_option("--baselines", cfg.baseline_file, "baseline file used to fill the report's baseline");
  verify_cmd->add_flag("--timing", cfg.timing, "record wall time in runtime_ms");

  auto* extremize_cmd = app.add_subcommand("extremize", "hill-climbing search for large ratios");
  add_instance(extremize_cmd);
  extremize_cmd->add_option("--budget", cfg.budget, "number of ratio evaluations");
  extremize_cmd->add_option("--restarts", cfg.restarts, "number of restarts");

  auto* uncertainty_cmd = app.add_subcommand("uncertainty", "uncertainty chain for a set Omega");
  add_group(uncertainty_cmd);
  add_indices(uncertainty_cmd, {"p", "q", "u", "v"});
  uncertainty_cmd->add_option("--input", cfg.input, "function f");
  uncertainty_cmd->add_option("--window", cfg.window, "window g");
  uncertainty_cmd->add_option("--omega", cfg.omega, "mask over G x G^ (default: random, seeded)");
  uncertainty_cmd->add_option("--epsilon", buf.epsilon, "energy the set must capture");
  uncertainty_cmd->add_option("--tolerance", cfg.tolerance, "relative tolerance");

  auto* baseline_cmd = app.add_subcommand("baseline", "recompute the regression grid and compare or rewrite it");
  baseline_cmd->add_option("--baselines", cfg.baseline_file, "baseline file");
  baseline_cmd->add_flag("--write", cfg.write, "overwrite the baseline file");
  baseline_cmd->add_option("--tolerance", cfg.tolerance, "relative tolerance");

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" || a == "--seed" || a == "--out") {
      ++i;
      continue;
    }
    if (a.starts_with("-")) continue;
    if (!app.get_subcommand_no_throw(a)) {
      err << "error: unknown subcommand '" << a << "'\n";
      return kUsage;
    }
    break;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  try {
    for (std::size_t i = 0; i < std::size(kIndexNames); ++i)
      if (!buf.indices[i].empty()) index_slot(cfg.indices, kIndexNames[i]) = Exponent::parse(buf.indices[i]);
    if (!buf.t.empty()) cfg.t = Exponent::parse(buf.t).to_double();
    if (!buf.epsilon.empty()) cfg.epsilon = std::stod(buf.epsilon);
  } catch (const ExponentError& e) {
    err << "error: invalid exponent: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: invalid number: " << e.what() << "\n";
    return kUsage;
  }
  if (print_config) {
    out << dump(config_to_json(cfg));
    return kOk;
  }

  try {
    const std::string& name = cfg.subcommand;
    if (name == "group-info") return cmd_group_info(cfg, out);
    if (name == "norm") return cmd_norm(cfg, out);
    if (name == "fourier") return cmd_fourier(cfg, out);
    if (name == "stft") return cmd_stft(cfg, out);
    if (name == "wigner") return cmd_wigner(cfg, out);
    if (name == "weyl") return cmd_weyl(cfg, out);
    if (name == "calderon") return cmd_calderon(cfg, out);
    if (name == "verify") return cmd_verify(cfg, out);
    if (name == "extremize") return cmd_extremize(cfg, out);
    if (name == "uncertainty") return cmd_uncertainty(cfg, out);
    if (name == "baseline") return cmd_baseline(cfg, out);
    err << "error: unknown subcommand '" << name << "'\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << sub->help();
  } catch (const GroupError& e) {
    err << "error: malformed group spec: " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "error: unreadable file: " << e.what() << "\n";
  } catch (const FormatError& e) {
    err << "error: malformed input: " << e.what() << "\n";
  } catch (const ExponentError& e) {
    err << "error: invalid exponent: " << e.what() << "\n";
  } catch (const VerifyError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace tflab::cli
