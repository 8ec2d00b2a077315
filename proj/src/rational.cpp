#include "opal/rational.hpp"

#include <cctype>

namespace opal {

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw error("empty rational literal");
  // Validate shape before handing to GMP: optional sign, digits, optional
  // "/digits".  GMP itself accepts whitespace and other bases; we keep the
  // accepted grammar narrow so inputs round-trip byte-identically.
  std::size_t pos = 0;
  auto digits = [&](std::size_t start) {
    std::size_t k = start;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
    return k;
  };
  if (text[pos] == '+' || text[pos] == '-') ++pos;
  std::size_t after_num = digits(pos);
  if (after_num == pos) throw error("bad rational literal '" + text + "'");
  if (after_num != text.size()) {
    if (text[after_num] != '/') throw error("bad rational literal '" + text + "'");
    std::size_t den_start = after_num + 1;
    std::size_t den_end = digits(den_start);
    if (den_end == den_start || den_end != text.size())
      throw error("bad rational literal '" + text + "'");
  }
  Rational value;
  if (value.set_str(text, 10) != 0) throw error("bad rational literal '" + text + "'");
  if (value.get_den() == 0) throw error("zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace opal
