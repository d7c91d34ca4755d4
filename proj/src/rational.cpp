#include "wcdsc/rational.hpp"

namespace wcdsc {

std::string Rational::str() const {
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  const int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = num_ < 0;
  const std::int64_t magnitude = (negative ? -num_ : num_) * (scale / den_);
  std::string out = std::to_string(magnitude / scale);
  if (digits > 0) {
    std::string frac = std::to_string(magnitude % scale);
    out += "." + std::string(digits - frac.size(), '0') + frac;
  }
  return negative ? "-" + out : out;
}

}  // namespace wcdsc
