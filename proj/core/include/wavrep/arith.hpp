#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wavrep {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact_rational(double value);

double to_double(const Rational& q);
std::vector<double> to_double(const RatVec& v);

Integer floor_div(const Rational& q);

/// Parses "p", "p/q", or a finite decimal such as "-0.125" into an exact rational.
Rational parse_rational(std::string_view text);

/// Formats as "p" or "p/q" in lowest terms.
std::string format_rational(const Rational& q);

/// e^{iπq}, with q reduced modulo 2 exactly; multiples of 1/2 give exact 0/±1 components.
Complex cis_pi(const Rational& q);

/// sin(u)/u, with the removable singularity filled in.
double sinc(double u);

/// e^{iθ} for an exact rational θ in radians, reduced modulo 2π in 100-digit precision.
Complex cis(const Rational& theta);

/// θ mod 2π into [0, 2π) for exact rational θ, as a double.
double reduce_two_pi(const Rational& theta);

/// Exact complex rational, used where norms must be compared without rounding.
struct ComplexRational {
  Rational re;
  Rational im;

  static ComplexRational from(Complex c) { return {exact_rational(c.real()), exact_rational(c.imag())}; }
  Rational norm() const { return re * re + im * im; }
  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
};

}  // namespace wavrep
