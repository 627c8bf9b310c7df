#ifndef FEPA_FRACTION_HPP_
#define FEPA_FRACTION_HPP_

#include <cstdint>

namespace fepa {

// A count ratio kept as numerator/denominator so that reports can show the
// exact counts next to the percentage. A zero denominator means "undefined".
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 0;

  bool defined() const { return den != 0; }
  double value() const {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  }
  double percent() const { return 100.0 * value(); }

  Fraction& operator+=(const Fraction& other) {
    num += other.num;
    den += other.den;
    return *this;
  }
  friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Harmonic mean of precision and recall; 0 when both are 0.
inline double f_score(double precision, double recall) {
  return precision + recall == 0.0
             ? 0.0
             : 2.0 * precision * recall / (precision + recall);
}

}  // namespace fepa

#endif  // FEPA_FRACTION_HPP_
