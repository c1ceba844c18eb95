#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcp/config.hpp"

namespace qcp {

// Names accepted by preset(), in a stable order.
std::vector<std::string> preset_names();

// Fully resolved configuration for a named reference experiment. Throws
// ConfigError for unknown names.
ExperimentConfig preset(std::string_view name);

// Pump period 2 pi / omega of the reference schedules.
double reference_pump_period();

}  // namespace qcp
