#pragma once

#include <string>

namespace qcp {

// Shortest round-trip-safe text for a double: 17 significant digits,
// general notation. Locale independent.
std::string format_double(double value);

}  // namespace qcp
