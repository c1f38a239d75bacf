#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tflab {

class ExponentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent in [0, inf], kept as an exact rational or infinity.
class Exponent {
 public:
  using Rational = boost::rational<std::int64_t>;

  Exponent() = default;
  Exponent(std::int64_t n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Exponent(Rational r);
  static Exponent infinity();
  /// Accepts "3", "3/2", "2.5", "inf".
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  Rational rational() const;
  double to_double() const;
  /// 1/x with 1/inf = 0; throws for x = 0.
  Rational reciprocal() const;
  static Exponent from_reciprocal(Rational r);
  /// x' with 1/x + 1/x' = 1; requires x >= 1.
  Exponent conjugate() const;
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const Exponent& a, const Exponent& b);
  friend bool operator<=(const Exponent& a, const Exponent& b) { return a < b || a == b; }
  friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return b <= a; }

 private:
  bool infinite_ = false;
  Rational value_{0};
};

}  // namespace tflab
