#include "tflab/exponent.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <limits>

namespace tflab {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ExponentError(fmt::format("malformed exponent '{}'", whole));
  return v;
}

}  // namespace

Exponent::Exponent(Rational r) : value_(r) {
  if (r < Rational(0)) throw ExponentError("exponents must be non-negative");
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  std::string lowered;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) lowered.push_back(static_cast<char>(std::tolower(c)));
  if (lowered == "inf" || lowered == "infinity" || lowered == "+inf") return infinity();
  const std::string_view s(lowered);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(s.substr(0, slash), text);
    const auto den = parse_int(s.substr(slash + 1), text);
    if (den == 0) throw ExponentError(fmt::format("zero denominator in '{}'", text));
    return Exponent(Rational(num, den));
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto frac = s.substr(dot + 1);
    if (frac.size() > 15) throw ExponentError(fmt::format("too many decimals in '{}'", text));
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::string_view int_part = s.substr(0, dot);
    const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac, text);
    if (f < 0) throw ExponentError(fmt::format("malformed exponent '{}'", text));
    return Exponent(Rational(whole * scale + f, scale));
  }
  return Exponent(Rational(parse_int(s, text)));
}

Exponent::Rational Exponent::rational() const {
  if (infinite_) throw ExponentError("infinite exponent has no rational value");
  return value_;
}

double Exponent::to_double() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return boost::rational_cast<double>(value_);
}

Exponent::Rational Exponent::reciprocal() const {
  if (infinite_) return Rational(0);
  if (value_ == Rational(0)) throw ExponentError("reciprocal of a zero exponent");
  return Rational(1) / value_;
}

Exponent Exponent::from_reciprocal(Rational r) {
  if (r < Rational(0)) throw ExponentError("negative reciprocal exponent");
  if (r == Rational(0)) return infinity();
  return Exponent(Rational(1) / r);
}

Exponent Exponent::conjugate() const {
  if (!infinite_ && value_ < Rational(1)) throw ExponentError(fmt::format("conjugate of {} < 1", to_string()));
  return from_reciprocal(Rational(1) - reciprocal());
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  if (value_.denominator() == 1) return fmt::format("{}", value_.numerator());
  return fmt::format("{}/{}", value_.numerator(), value_.denominator());
}

bool operator<(const Exponent& a, const Exponent& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

}  // namespace tflab
