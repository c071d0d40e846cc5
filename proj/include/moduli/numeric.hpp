#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace moduli {

namespace bmp = boost::multiprecision;

/// Working real type: MPFR with a fixed 168-bit mantissa. Requested
/// precisions (in bits) control truncation and error targets; the working
/// precision leaves guard bits above the largest supported request.
using Real = bmp::number<bmp::mpfr_float_backend<50, bmp::allocate_stack>, bmp::et_off>;

inline constexpr int kWorkingBits = 168;
inline constexpr int kDefaultPrecisionBits = 128;
inline constexpr int kMaxPrecisionBits = 150;

const Real& pi();
const Real& log2_const();
Real pow2(int exponent);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i = 0.0) : re(r), im(i) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
  Complex& operator/=(const Complex& o) {
    Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  Complex operator-() const { return {-re, -im}; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
inline Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im, z.re); }

Complex exp(const Complex& z);
Complex log(const Complex& z);   // principal branch
Complex sqrt(const Complex& z);  // principal branch
Complex polar(const Real& r, const Real& theta);
/// e^{2 pi i t}
Complex exp_2pi_i(const Complex& t);

/// Smallest double that is >= x (outward rounding for reported upper bounds).
double round_up(const Real& x);
double round_down(const Real& x);
inline double to_double(const Real& x) { return x.convert_to<double>(); }

/// Exact conversion of a binary float to a rational number.
mpq_class to_rational(const Real& x);
Real from_rational(const mpq_class& q);
Real from_integer(const mpz_class& z);

/// Parses decimal text ("0.25", "-1e-4", "3/4") into an exact rational.
mpq_class parse_rational(std::string_view text);

std::string to_decimal(const Real& x, int significant_digits = 40);

}  // namespace moduli
