#pragma once

#include <string>
#include <string_view>

namespace gmid {

/// Shortest decimal that parses back to the same double (may use an exponent).
std::string format_number(double value);

/// Shortest round-trip decimal without an exponent.
std::string format_fixed(double value);

/// Parses a full token as a double; returns false on trailing garbage.
bool parse_number(std::string_view text, double& out);

} // namespace gmid
