#pragma once

#include <string>

#include <json.hpp>

#include "niforge/analysis.hpp"
#include "niforge/synthesis.hpp"

namespace niforge {

nlohmann::json to_json(const NIVerdict& verdict);
nlohmann::json to_json(const RiccatiCheckResult& result);
nlohmann::json to_json(const SynthesisResult& result);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const std::vector<Complex>& values);

std::string format_bode_csv(const std::vector<BodeSample>& samples);
nlohmann::json bode_to_json(const std::vector<BodeSample>& samples);

}  // namespace niforge
