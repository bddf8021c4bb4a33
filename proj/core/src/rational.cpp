#include "movstab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace movstab {

namespace {

bool scan_integer(const std::string& s, size_t& i) {
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  const size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i > start;
}

// The GMP-backed constructor rejects an explicit leading '+'.
Integer to_integer(const std::string& s) {
  return Integer(s.empty() || s[0] != '+' ? s : s.substr(1));
}

}  // namespace

Rational parse_rational(const std::string& text) {
  size_t i = 0;
  if (!scan_integer(text, i)) throw std::invalid_argument("malformed rational '" + text + "'");
  if (i == text.size()) return Rational(to_integer(text));
  if (text[i] != '/') throw std::invalid_argument("malformed rational '" + text + "'");
  const std::string num = text.substr(0, i);
  size_t j = ++i;
  if (!scan_integer(text, i) || i != text.size())
    throw std::invalid_argument("malformed rational '" + text + "'");
  const Integer den(to_integer(text.substr(j)));
  if (den == 0) throw std::invalid_argument("zero denominator in rational '" + text + "'");
  return Rational(to_integer(num), den);
}

std::string format_rational(const Rational& value) {
  const Integer num(numerator(value));
  const Integer den(denominator(value));
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace movstab
