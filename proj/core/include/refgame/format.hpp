#pragma once

#include <string>

namespace refgame {

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// Fixed number of significant digits, for messages and aligned tables.
std::string format_double(double value, int significant_digits);

// Parses a complete decimal token; throws DomainError naming `what` otherwise.
double parse_double(const std::string& token, const std::string& what);

}  // namespace refgame
