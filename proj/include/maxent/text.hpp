#pragma once

#include <string>

namespace maxent {

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

}  // namespace maxent
