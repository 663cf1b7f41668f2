#include "prodmod/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace prodmod {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  auto digits_ok = [](std::string_view d, bool allow_sign) {
    if (allow_sign && !d.empty() && d.front() == '-') d.remove_prefix(1);
    if (d.empty()) return false;
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view num = std::string_view(s).substr(0, slash);
  std::string_view den = slash == std::string::npos ? std::string_view("1") : std::string_view(s).substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  Rational q(std::string(num) + "/" + std::string(den));
  if (q.get_den() == 0) throw bad();
  q.canonicalize();
  return q;
}

std::string to_fraction(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

}  // namespace prodmod
