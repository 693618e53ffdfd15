#pragma once

// JSON mapping for generator configuration and oracle thresholds. Shared by
// the config file reader and the dataset header.

#include <json.hpp>

#include "uavsem/generator.hpp"
#include "uavsem/label_schema.hpp"
#include "uavsem/rule_oracle.hpp"
#include "uavsem/scenario.hpp"

namespace uavsem {

nlohmann::ordered_json thresholds_to_json(const BandThresholds& t);
// Missing keys keep their defaults; unknown keys or wrong types throw Errc::config.
BandThresholds thresholds_from_json(const nlohmann::json& j);

nlohmann::ordered_json gen_config_to_json(const GenConfig& c);
GenConfig gen_config_from_json(const nlohmann::json& j);

nlohmann::ordered_json scenario_to_json(const Scenario& s);
// Errc::parse on missing or mistyped fields, Errc::range on invalid values.
Scenario scenario_from_json(const nlohmann::json& j);

// Canonical label order and index ranges, for external classifiers.
nlohmann::ordered_json schema_to_json();

}  // namespace uavsem
