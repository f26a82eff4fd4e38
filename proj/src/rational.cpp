#include "soergel/rational.hpp"

#include <stdexcept>

namespace soergel {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace soergel
