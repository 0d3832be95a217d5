#pragma once

#include <string>

#include <json.hpp>

#include "unimap/codings.hpp"
#include "unimap/conjugacy.hpp"
#include "unimap/preimage_lattice.hpp"
#include "unimap/unimodal_map.hpp"
#include "unimap/verification.hpp"

namespace unimap {

// Compact console forms: decompositions and digit strings render as plain
// '0'/'1' text (most significant first, d_0 omitted), coordinates as '+',
// '-' and '0'.
std::string to_bit_string(const GDecomposition& d);
std::string to_bit_string(const DigitSequence& digits);
std::string to_sign_string(const InvariantCoordinates& theta);

/// Parses a plain '0'/'1' digit string (rho_1 first, no whitespace).
DigitSequence parse_digit_string(const std::string& text);

void to_json(nlohmann::json& j, const MapSpec& spec);
void from_json(const nlohmann::json& j, MapSpec& spec);

void to_json(nlohmann::json& j, const ValidationCheck& check);
void to_json(nlohmann::json& j, const ValidationReport& report);
void to_json(nlohmann::json& j, const PreimageLevel& level);
void to_json(nlohmann::json& j, const LocalizedInterval& interval);
void to_json(nlohmann::json& j, const LocalizationPath& path);
void to_json(nlohmann::json& j, const GDecomposition& d);
void to_json(nlohmann::json& j, const DigitSequence& digits);
void to_json(nlohmann::json& j, const InvariantCoordinates& theta);
void to_json(nlohmann::json& j, const ConvergenceReport& report);
void to_json(nlohmann::json& j, const CheckFailure& failure);
void to_json(nlohmann::json& j, const CheckReport& report);

}  // namespace unimap
