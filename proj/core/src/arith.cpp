#include "wavrep/arith.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wavrep/errors.hpp"

namespace wavrep {

namespace {

using HighFloat = boost::multiprecision::cpp_bin_float_100;

HighFloat to_high(const Rational& q) {
  return HighFloat(boost::multiprecision::numerator(q)) / HighFloat(boost::multiprecision::denominator(q));
}

// Decimal only; Boost would read a leading 0 as octal.
Integer parse_decimal_integer(std::string digits, const std::string& context) {
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  if (digits.empty()) throw Error(ErrorKind::InvalidInput, "malformed number '" + context + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw Error(ErrorKind::InvalidInput, "malformed number '" + context + "'");
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Integer value(digits);
  return negative ? Integer(-value) : value;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotExpansive: return "NotExpansive";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonDiagonalDilation: return "NonDiagonalDilation";
    case ErrorKind::UnboundedSet: return "UnboundedSet";
    case ErrorKind::BadAnnulus: return "BadAnnulus";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::InconsistentTarget: return "InconsistentTarget";
    case ErrorKind::LevelExceeded: return "LevelExceeded";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Rational exact_rational(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::InvalidInput, "non-finite value");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Integer num(scaled);
  if (exponent >= 0) return Rational(num << exponent);
  return Rational(num, Integer(1) << -exponent);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::vector<double> to_double(const RatVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_double(q));
  return out;
}

Integer floor_div(const Rational& q) {
  const Integer& num = boost::multiprecision::numerator(q);
  const Integer& den = boost::multiprecision::denominator(q);
  Integer quot = num / den;
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty rational");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      const Integer num = parse_decimal_integer(s.substr(0, slash), s);
      const Integer den = parse_decimal_integer(s.substr(slash + 1), s);
      if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
      return Rational(num) / Rational(den);
    }
    Rational scale(1);
    std::string mantissa = s;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      const long exp10 = std::stol(s.substr(e + 1));
      mantissa = s.substr(0, e);
      Integer p = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exp10)));
      scale = exp10 >= 0 ? Rational(p) : Rational(Integer(1), p);
    }
    Integer den(1);
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
      const std::size_t frac_digits = mantissa.size() - dot - 1;
      mantissa.erase(dot, 1);
      den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_digits));
    }
    return Rational(parse_decimal_integer(mantissa, s), den) * scale;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + s + "'");
  }
}

std::string format_rational(const Rational& q) {
  const Integer& den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

Complex cis_pi(const Rational& q) {
  Rational r = q - 2 * Rational(floor_div(q / 2));
  if (r == 0) return {1.0, 0.0};
  if (r == Rational(1, 2)) return {0.0, 1.0};
  if (r == 1) return {-1.0, 0.0};
  if (r == Rational(3, 2)) return {0.0, -1.0};
  if (r > 1) r -= 2;
  const double angle = M_PI * to_double(r);
  return {std::cos(angle), std::sin(angle)};
}

double sinc(double u) {
  if (std::fabs(u) < 1e-4) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

double reduce_two_pi(const Rational& theta) {
  static const HighFloat two_pi = 2 * boost::math::constants::pi<HighFloat>();
  const HighFloat t = to_high(theta);
  const HighFloat turns = boost::multiprecision::floor(t / two_pi);
  return static_cast<double>(t - turns * two_pi);
}

Complex cis(const Rational& theta) {
  if (theta == 0) return {1.0, 0.0};
  return std::polar(1.0, reduce_two_pi(theta));
}

}  // namespace wavrep
