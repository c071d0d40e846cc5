#include "moduli/arith.hpp"
#include "moduli/reference.hpp"

namespace moduli::reference {

std::uint64_t cm_count(std::int64_t delta, const mpq_class& xi_re, const mpq_class& xi_im, const mpq_class& eps) {
  const std::uint64_t abs_delta = static_cast<std::uint64_t>(-delta);
  const std::uint64_t s = arith::isqrt(abs_delta);
  const bool square = s * s == abs_delta;
  const Real x = from_rational(xi_re);
  const Real y = from_rational(xi_im);
  const Real e = from_rational(eps);
  const Real root = boost::multiprecision::sqrt(from_integer(mpz_class(std::to_string(abs_delta))));

  std::uint64_t count = 0;
  for (const QuadraticForm& f : enumerate_reduced_forms(delta)) {
    bool inside;
    if (square) {
      const mpq_class re = mpq_class(-f.b, 2 * f.a) - xi_re;
      const mpq_class im = mpq_class(static_cast<long>(s), 2 * f.a) - xi_im;
      inside = re * re + im * im < eps * eps;
    } else {
      const Real re = Real(-f.b) / (2 * f.a) - x;
      const Real im = root / (2 * f.a) - y;
      inside = re * re + im * im < e * e;
    }
    if (inside) ++count;
  }
  return count;
}

}  // namespace moduli::reference
