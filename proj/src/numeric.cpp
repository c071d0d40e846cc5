#include "moduli/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "moduli/error.hpp"

namespace moduli {

const Real& pi() {
  static const Real value = boost::math::constants::pi<Real>();
  return value;
}

const Real& log2_const() {
  static const Real value = boost::multiprecision::log(Real(2));
  return value;
}

Real pow2(int exponent) { return boost::multiprecision::ldexp(Real(1), exponent); }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Complex log(const Complex& z) { return {boost::multiprecision::log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
  if (z.re == 0 && z.im == 0) return {};
  Real r = abs(z);
  Real u = boost::multiprecision::sqrt((r + boost::multiprecision::abs(z.re)) / 2);
  if (z.re >= 0) return {u, z.im / (2 * u)};
  Real v = z.im >= 0 ? u : Real(-u);
  return {boost::multiprecision::abs(z.im) / (2 * u), v};
}

Complex polar(const Real& r, const Real& theta) {
  return {r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta)};
}

Complex exp_2pi_i(const Complex& t) {
  Real two_pi = 2 * pi();
  return polar(boost::multiprecision::exp(-two_pi * t.im), two_pi * t.re);
}

double round_up(const Real& x) {
  double d = x.convert_to<double>();
  if (!std::isfinite(d)) return d;
  if (Real(d) < x) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

double round_down(const Real& x) {
  double d = x.convert_to<double>();
  if (!std::isfinite(d)) return d;
  if (Real(d) > x) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

mpq_class to_rational(const Real& x) {
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x.backend().data());
  mpq_class q(mant);
  if (e > 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else if (e < 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

Real from_rational(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real from_integer(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&] { throw Error(ErrorKind::InvalidInput, "not a decimal number: '" + s + "'"); };
  if (s.empty()) fail();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) fail();
    q.canonicalize();
    return q;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (ch >= '0' && ch <= '9') {
      digits += ch;
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch == 'e' || ch == 'E') {
      break;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();
  if (pos < s.size()) {
    std::string tail = s.substr(pos + 1);
    if (tail.empty()) fail();
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(tail, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != tail.size() || e > 4000 || e < -4000) fail();
    exponent += e;
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

std::string to_decimal(const Real& x, int significant_digits) {
  std::ostringstream os;
  os << std::setprecision(significant_digits) << x;
  return os.str();
}

}  // namespace moduli
