#pragma once

#include <string_view>

#include "twisted/units.hpp"

namespace twisted {

struct LabConfig {
  LabInputs lab;
  Spin spin = Spin::Up;
};

// Parses {"B_tesla": .., "kinetic_keV": .., "w0_nm": .., "spin": "+"|"-"}.
// Missing keys keep the values already in `defaults`; unknown keys, wrong
// types and physically invalid values raise ConfigError.
LabConfig parse_lab_config(std::string_view json_text, const LabConfig& defaults = {});

}  // namespace twisted
