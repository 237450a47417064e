#include "fpp/rational.hpp"

#include <cctype>
#include <sstream>

namespace fpp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw input_error("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw input_error("sign without digits in rational literal");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw input_error("invalid character in rational literal: '" + std::string(s) + "'");
  }
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rat parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw input_error("empty rational literal");
  const auto slash = text.find('/');
  mpz_class num, den;
  if (slash == std::string_view::npos) {
    num = parse_integer(text);
    den = 1;
  } else {
    num = parse_integer(text.substr(0, slash));
    den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in rational literal: '" + std::string(text) + "'");
  }
  Rat value(num, den);
  value.canonicalize();
  return value;
}

std::string rat_str(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

QVec parse_rational_vector(std::string_view csv) {
  QVec out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = csv.find(',', pos);
    const auto piece = comma == std::string_view::npos ? csv.substr(pos) : csv.substr(pos, comma - pos);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string qvec_str(const QVec& coords) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << rat_str(coords[i]);
  }
  os << ']';
  return os.str();
}

}  // namespace fpp
