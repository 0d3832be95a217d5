#include "unimap/serialization.hpp"

#include <stdexcept>

namespace unimap {

std::string to_bit_string(const GDecomposition& d) {
  std::string out;
  for (std::size_t i = 1; i < d.bits.size(); ++i) out.push_back(d.bits[i] ? '1' : '0');
  return out;
}

std::string to_bit_string(const DigitSequence& digits) {
  std::string out;
  for (auto b : digits.bits) out.push_back(b ? '1' : '0');
  return out;
}

std::string to_sign_string(const InvariantCoordinates& theta) {
  std::string out;
  for (auto t : theta.values) out.push_back(t > 0 ? '+' : (t < 0 ? '-' : '0'));
  return out;
}

DigitSequence parse_digit_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("digit string must be nonempty");
  DigitSequence digits;
  digits.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("digit string may contain only '0' and '1'");
    digits.bits.push_back(c == '1' ? 1 : 0);
  }
  return digits;
}

void to_json(nlohmann::json& j, const MapSpec& spec) {
  j = nlohmann::json{{"kind", spec.kind}};
  if (spec.v) j["v"] = *spec.v;
  if (!spec.breakpoints.empty()) j["breakpoints"] = spec.breakpoints;
}

void from_json(const nlohmann::json& j, MapSpec& spec) {
  spec = MapSpec{};
  j.at("kind").get_to(spec.kind);
  if (j.contains("v")) spec.v = j.at("v").get<double>();
  if (j.contains("breakpoints"))
    j.at("breakpoints").get_to(spec.breakpoints);
}

void to_json(nlohmann::json& j, const ValidationCheck& check) {
  j = nlohmann::json{{"name", check.name}, {"residual", check.residual}, {"pass", check.pass}};
}

void to_json(nlohmann::json& j, const ValidationReport& report) {
  j = nlohmann::json{{"pass", report.pass}, {"checks", report.checks}};
}

void to_json(nlohmann::json& j, const PreimageLevel& level) {
  j = nlohmann::json{{"level", level.level}, {"points", level.points}};
}

void to_json(nlohmann::json& j, const LocalizedInterval& interval) {
  j = nlohmann::json{{"depth", interval.depth},   {"index", interval.index},
                     {"left", interval.left},     {"right", interval.right},
                     {"midpoint", interval.midpoint}, {"length", interval.length},
                     {"delta", interval.delta},   {"next_bit", interval.next_bit}};
}

void to_json(nlohmann::json& j, const LocalizationPath& path) {
  j = nlohmann::json{{"target", path.target}, {"depth", path.depth}, {"levels", path.levels}};
  if (!path.diagnostic.empty()) j["diagnostic"] = path.diagnostic;
}

void to_json(nlohmann::json& j, const GDecomposition& d) {
  j = nlohmann::json{{"bits", to_bit_string(d)}, {"depth", d.depth()}};
}

void to_json(nlohmann::json& j, const DigitSequence& digits) {
  j = nlohmann::json{{"bits", to_bit_string(digits)}, {"depth", digits.depth()}};
}

void to_json(nlohmann::json& j, const InvariantCoordinates& theta) {
  j = nlohmann::json{{"values", to_sign_string(theta)},
                     {"tail_unconfirmed", theta.tail_unconfirmed}};
}

void to_json(nlohmann::json& j, const ConvergenceReport& report) {
  j = nlohmann::json{{"value", report.value},
                     {"final_length", report.final_length},
                     {"converged", report.converged},
                     {"depth", report.depth},
                     {"partial_sums", report.partial_sums}};
}

void to_json(nlohmann::json& j, const CheckFailure& failure) {
  j = nlohmann::json{{"level", failure.level},       {"input", failure.input},
                     {"expected", failure.expected}, {"got", failure.got},
                     {"what", failure.what}};
}

void to_json(nlohmann::json& j, const CheckReport& report) {
  j = nlohmann::json{{"name", report.name},
                     {"subject", report.subject},
                     {"samples", report.samples},
                     {"max_residual", report.max_residual},
                     {"tolerance", report.tolerance},
                     {"pass", report.pass},
                     {"seed", report.seed},
                     {"failures", report.failures}};
}

}  // namespace unimap
