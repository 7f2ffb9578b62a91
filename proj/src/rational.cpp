#include "convexchain/rational.hpp"

#include <stdexcept>

namespace convexchain {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) {
  // mpq_get_d truncates; going through mpf keeps full double precision for
  // tiny values with huge numerators and denominators.
  mpf_class num(q.get_num(), 128);
  mpf_class den(q.get_den(), 128);
  mpf_class ratio(0, 128);
  ratio = num / den;
  return ratio.get_d();
}

}  // namespace convexchain
