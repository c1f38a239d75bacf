#include "tflab/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace tflab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(fmt::format("missing field '{}'", key));
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(fmt::format("field '{}' has the wrong type", what));
  }
}

double haar_of(const Json& j) { return j.contains("haar") ? number_from_json(j.at("haar")) : 1.0; }

std::vector<cplx> values_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("values must be an array");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

Json values_to_json(const std::vector<cplx>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(complex_to_json(v));
  return arr;
}

FiniteAbelianGroup group_from(const Json& j, const std::optional<FiniteAbelianGroup>& fallback) {
  if (j.is_object() && j.contains("group"))
    return FiniteAbelianGroup::parse(get<std::string>(j.at("group"), "group"), haar_of(j));
  if (fallback) return *fallback;
  throw FormatError("missing field 'group'");
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(fmt::format("{}: invalid JSON ({})", origin, e.what()));
  }
}

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw FormatError(fmt::format("expected a number, got {}", j.dump()));
}

Json complex_to_json(cplx z) { return Json::array({number_to_json(z.real()), number_to_json(z.imag())}); }

cplx complex_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) return {number_from_json(j[0]), number_from_json(j[1])};
  return {number_from_json(j), 0.0};
}

Json exponent_to_json(const Exponent& e) { return e.to_string(); }

Exponent exponent_from_json(const Json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  if (j.is_number_integer()) return Exponent(j.get<std::int64_t>());
  if (j.is_number()) return Exponent::parse(fmt::format("{}", j.get<double>()));
  throw FormatError(fmt::format("expected an exponent, got {}", j.dump()));
}

Json matrix_to_json(const GroupEndomorphism::Matrix& m) { return m; }

GroupEndomorphism::Matrix matrix_from_json(const Json& j) {
  if (j.is_number_integer()) return {{j.get<std::int64_t>()}};
  return get<GroupEndomorphism::Matrix>(j, "tau");
}

Json group_function_to_json(const GroupFunction& f) {
  Json j;
  j["group"] = f.group().spec();
  j["haar"] = f.group().haar_weight();
  j["values"] = values_to_json(f.values());
  return j;
}

GroupFunction group_function_from_json(const Json& j, const std::optional<FiniteAbelianGroup>& fallback) {
  if (j.is_array()) {
    if (!fallback) throw FormatError("a bare value array needs a group");
    return GroupFunction(*fallback, values_from_json(j));
  }
  return GroupFunction(group_from(j, fallback), values_from_json(field(j, "values")));
}

Json tf_array_to_json(const TFArray& a) {
  Json j;
  j["group"] = a.group().spec();
  j["haar"] = a.group().haar_weight();
  j["values"] = values_to_json(a.values());
  return j;
}

TFArray tf_array_from_json(const Json& j, const std::optional<FiniteAbelianGroup>& fallback) {
  if (j.is_array()) {
    if (!fallback) throw FormatError("a bare value array needs a group");
    return TFArray(*fallback, values_from_json(j));
  }
  return TFArray(group_from(j, fallback), values_from_json(field(j, "values")));
}

Json operator_to_json(const OperatorMatrix& op) {
  Json j;
  j["group"] = op.group().spec();
  j["haar"] = op.group().haar_weight();
  j["entries"] = values_to_json(op.entries());
  return j;
}

Json measured_to_json(const MeasuredFunction& f) {
  Json j;
  j["domain"] = to_string(f.domain());
  Json atoms = Json::array();
  for (const auto& a : f.atoms()) atoms.push_back(Json::array({a.id, number_to_json(a.weight), complex_to_json(a.value)}));
  j["atoms"] = atoms;
  return j;
}

MeasuredFunction measured_from_json(const Json& j, double weight) {
  const Domain domain =
      j.is_object() && j.contains("domain") ? domain_from_string(get<std::string>(j.at("domain"), "domain")) : Domain::group;
  if (j.is_array()) return MeasuredFunction::uniform(domain, values_from_json(j), weight);
  if (j.contains("atoms")) {
    std::vector<Atom> atoms;
    for (const auto& a : field(j, "atoms")) {
      if (!a.is_array() || a.size() != 3) throw FormatError("atoms must be [id, weight, value] triples");
      atoms.push_back({get<std::int64_t>(a[0], "atom id"), number_from_json(a[1]), complex_from_json(a[2])});
    }
    return MeasuredFunction(domain, std::move(atoms));
  }
  const double w = j.contains("weight") ? number_from_json(j.at("weight")) : weight;
  return MeasuredFunction::uniform(domain, values_from_json(field(j, "values")), w);
}

Json step_to_json(const StepFunction& h) {
  Json breaks = Json::array();
  for (double b : h.breaks()) breaks.push_back(number_to_json(b));
  Json values = Json::array();
  for (double v : h.values()) values.push_back(number_to_json(v));
  return Json{{"breaks", breaks}, {"values", values}};
}

StepFunction step_from_json(const Json& j) {
  std::vector<double> breaks;
  for (const auto& b : field(j, "breaks")) breaks.push_back(number_from_json(b));
  std::vector<double> values;
  for (const auto& v : field(j, "values")) values.push_back(number_from_json(v));
  return StepFunction(std::move(breaks), std::move(values));
}

Json indices_to_json(const IndexTuple& idx) {
  Json j = Json::object();
  auto put = [&](const char* name, const std::optional<Exponent>& e) {
    if (e) j[name] = exponent_to_json(*e);
  };
  put("p", idx.p);
  put("p1", idx.p1);
  put("p2", idx.p2);
  put("q", idx.q);
  put("s", idx.s);
  put("u", idx.u);
  put("v", idx.v);
  put("w", idx.w);
  put("r", idx.r);
  return j;
}

IndexTuple indices_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("indices must be an object");
  IndexTuple idx;
  auto take = [&](const char* name, std::optional<Exponent>& e) {
    if (j.contains(name)) e = exponent_from_json(j.at(name));
  };
  take("p", idx.p);
  take("p1", idx.p1);
  take("p2", idx.p2);
  take("q", idx.q);
  take("s", idx.s);
  take("u", idx.u);
  take("v", idx.v);
  take("w", idx.w);
  take("r", idx.r);
  return idx;
}

Json instance_to_json(const TheoremInstance& inst) {
  Json j;
  j["theorem"] = to_string(inst.theorem);
  j["group"] = inst.group;
  j["indices"] = indices_to_json(inst.indices);
  j["tau"] = inst.tau ? matrix_to_json(*inst.tau) : Json(nullptr);
  j["sampling"] = inst.sampling ? Json(to_string(*inst.sampling)) : Json(nullptr);
  j["trials"] = inst.trials;
  j["seed"] = inst.seed;
  j["tolerance"] = number_to_json(inst.tolerance);
  return j;
}

TheoremInstance instance_from_json(const Json& j) {
  TheoremInstance inst;
  inst.theorem = theorem_from_string(get<std::string>(field(j, "theorem"), "theorem"));
  inst.group = get<std::string>(field(j, "group"), "group");
  if (j.contains("indices")) inst.indices = indices_from_json(j.at("indices"));
  if (j.contains("tau") && !j.at("tau").is_null()) inst.tau = matrix_from_json(j.at("tau"));
  if (j.contains("sampling") && !j.at("sampling").is_null())
    inst.sampling = sample_kind_from_string(get<std::string>(j.at("sampling"), "sampling"));
  if (j.contains("trials")) inst.trials = get<std::uint64_t>(j.at("trials"), "trials");
  if (j.contains("seed")) inst.seed = get<std::uint64_t>(j.at("seed"), "seed");
  if (j.contains("tolerance")) inst.tolerance = number_from_json(j.at("tolerance"));
  return inst;
}

Json report_to_json(const VerificationReport& rep) {
  Json j;
  j["instance"] = instance_to_json(rep.instance);
  j["baseline"] = rep.baseline ? number_to_json(*rep.baseline) : Json(nullptr);
  j["max_ratio"] = number_to_json(rep.max_ratio);
  j["mean_ratio"] = number_to_json(rep.mean_ratio);
  j["violations"] = rep.violations;
  Json trials = Json::array();
  for (const auto& t : rep.trials)
    trials.push_back(Json{{"trial", t.trial}, {"ratio", number_to_json(t.ratio)}, {"f", t.f}, {"g", t.g}});
  j["trials"] = trials;
  j["trial_count"] = rep.trial_count;
  j["skipped"] = rep.skipped;
  j["seed"] = rep.instance.seed;
  j["runtime_ms"] = number_to_json(rep.runtime_ms);
  j["notes"] = rep.notes;
  return j;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport rep;
  rep.instance = instance_from_json(field(j, "instance"));
  if (j.contains("baseline") && !j.at("baseline").is_null()) rep.baseline = number_from_json(j.at("baseline"));
  rep.max_ratio = number_from_json(field(j, "max_ratio"));
  rep.mean_ratio = number_from_json(field(j, "mean_ratio"));
  rep.violations = get<std::vector<std::string>>(field(j, "violations"), "violations");
  for (const auto& t : field(j, "trials"))
    rep.trials.push_back({get<std::uint64_t>(field(t, "trial"), "trial"), number_from_json(field(t, "ratio")),
                          get<std::string>(field(t, "f"), "f"), get<std::string>(field(t, "g"), "g")});
  if (j.contains("trial_count")) rep.trial_count = get<std::uint64_t>(j.at("trial_count"), "trial_count");
  if (j.contains("skipped")) rep.skipped = get<std::uint64_t>(j.at("skipped"), "skipped");
  if (j.contains("runtime_ms")) rep.runtime_ms = number_from_json(j.at("runtime_ms"));
  if (j.contains("notes")) rep.notes = get<std::vector<std::string>>(j.at("notes"), "notes");
  return rep;
}

std::string report_to_csv(const VerificationReport& rep) {
  std::string out = "trial,ratio,f,g\n";
  for (const auto& t : rep.trials) out += fmt::format("{},{},{},{}\n", t.trial, csv_number(t.ratio), t.f, t.g);
  return out;
}

Json baselines_to_json(const BaselineSet& set) {
  Json entries = Json::array();
  for (const auto& e : set.entries)
    entries.push_back(Json{{"name", e.name}, {"description", e.description}, {"value", number_to_json(e.value)}});
  return Json{{"version", set.version}, {"seed", set.seed}, {"entries", entries}};
}

BaselineSet baselines_from_json(const Json& j) {
  BaselineSet set;
  set.version = get<int>(field(j, "version"), "version");
  set.seed = get<std::uint64_t>(field(j, "seed"), "seed");
  for (const auto& e : field(j, "entries"))
    set.entries.push_back({get<std::string>(field(e, "name"), "name"), get<std::string>(field(e, "description"), "description"),
                           number_from_json(field(e, "value"))});
  return set;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tflab
