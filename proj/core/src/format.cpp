#include "refgame/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "refgame/error.hpp"

namespace refgame {

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), end);
}

std::string format_double(double value, int significant_digits) {
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                 std::chars_format::general, significant_digits);
  return std::string(buffer.data(), end);
}

double parse_double(const std::string& token, const std::string& what) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty()) {
    throw DomainError(what + ": '" + token + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw DomainError(what + ": '" + token + "' is not finite");
  }
  return value;
}

}  // namespace refgame
