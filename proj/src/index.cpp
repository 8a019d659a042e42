#include "condense/index.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace condense {

Index parse_index(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty index");
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto e = text.find_first_of("eE");
  if (e == std::string_view::npos) {
    if (!all_digits(text)) throw std::invalid_argument("malformed index '" + std::string(text) + "'");
    return Index(std::string(text));
  }
  const auto mantissa = text.substr(0, e);
  const auto exponent = text.substr(e + 1);
  if (!all_digits(mantissa) || !all_digits(exponent) || exponent.size() > 4)
    throw std::invalid_argument("malformed index '" + std::string(text) + "'");
  Index value(std::string{mantissa});
  const int power = std::stoi(std::string(exponent));
  for (int i = 0; i < power; ++i) value *= 10;
  return value;
}

std::string to_string(const Index& n) { return n.str(); }

double to_double(const Index& n) { return n.convert_to<double>(); }

Index ceil_to_index(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("ceil_to_index: non-finite value");
  const double c = std::ceil(x);
  if (c <= 0.0) return Index(0);
  int exponent = 0;
  const double mantissa = std::frexp(c, &exponent);  // c = mantissa * 2^exponent
  // 53 significant bits are enough to carry the integer exactly.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Index value(scaled);
  if (exponent >= 53)
    value <<= (exponent - 53);
  else
    value >>= (53 - exponent);
  return value;
}

Index cantor_pair(const Index& n, const Index& m) {
  if (n < 1 || m < 1) throw std::invalid_argument("cantor_pair: indices start at 1");
  const Index s = n + m;
  return (s - 2) * (s - 1) / 2 + n;
}

}  // namespace condense
