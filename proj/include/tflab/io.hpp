#pragma once

#include "tflab/baseline.hpp"
#include "tflab/tfa.hpp"
#include "tflab/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace tflab {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document content, as opposed to an unreadable file.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
Json parse_json(const std::string& text, const std::string& origin);

/// Doubles are written as numbers, except inf / -inf / nan which become strings.
Json number_to_json(double x);
double number_from_json(const Json& j);

Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j);

Json exponent_to_json(const Exponent& e);
Exponent exponent_from_json(const Json& j);

Json matrix_to_json(const GroupEndomorphism::Matrix& m);
GroupEndomorphism::Matrix matrix_from_json(const Json& j);

/// {"group": "12", "haar": 1, "values": [[re, im], ...]}
Json group_function_to_json(const GroupFunction& f);
/// Accepts the object form above (group may be omitted when `fallback` is given)
/// or a bare array of values.
GroupFunction group_function_from_json(const Json& j, const std::optional<FiniteAbelianGroup>& fallback = {});

/// {"group": "6", "haar": 1, "values": [[re, im], ...]}, x-major.
Json tf_array_to_json(const TFArray& a);
TFArray tf_array_from_json(const Json& j, const std::optional<FiniteAbelianGroup>& fallback = {});

Json operator_to_json(const OperatorMatrix& op);

/// {"domain": "group", "atoms": [[id, weight, [re, im]], ...]}
Json measured_to_json(const MeasuredFunction& f);
/// Also accepts {"values": [...]} with uniform weight `weight`.
MeasuredFunction measured_from_json(const Json& j, double weight = 1.0);

/// {"breaks": [0, ...], "values": [...]}
Json step_to_json(const StepFunction& h);
StepFunction step_from_json(const Json& j);

Json indices_to_json(const IndexTuple& idx);
IndexTuple indices_from_json(const Json& j);

Json instance_to_json(const TheoremInstance& inst);
TheoremInstance instance_from_json(const Json& j);

/// {instance, baseline, max_ratio, mean_ratio, violations, trials, runtime_ms, ...}
Json report_to_json(const VerificationReport& rep);
VerificationReport report_from_json(const Json& j);

/// One row per recorded trial: trial,ratio,f,g.
std::string report_to_csv(const VerificationReport& rep);

Json baselines_to_json(const BaselineSet& set);
BaselineSet baselines_from_json(const Json& j);

/// Fixed-width serialization used for every emitted artifact.
std::string dump(const Json& j);

}  // namespace tflab
