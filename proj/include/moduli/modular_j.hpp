#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "moduli/forms.hpp"
#include "moduli/numeric.hpp"

namespace moduli {

/// j(tau) = q^-1 + sum_{n>=0} coefficients[n] q^n, truncated at q^N.
struct JSeries {
  std::vector<mpz_class> coefficients;
  int N = 0;
};

/// Exact coefficients c_0..c_N from E4^3 / Delta.
JSeries j_coefficients(int N);

/// Number of cached coefficients used by the evaluators.
inline constexpr int kCachedTerms = 256;

struct EvalResult {
  Complex value;
  Real error_bound;
  int terms = 0;
};

/// j, j', j'' by the q-expansion with a rigorous truncation bound
/// (c_n <= e^{4 pi sqrt n}) plus a rounding-error estimate. Requires Im tau >= 1/2.
EvalResult j_eval(const UHPoint& tau, int prec = kDefaultPrecisionBits);
EvalResult j_prime(const UHPoint& tau, int prec = kDefaultPrecisionBits);
EvalResult j_double_prime(const UHPoint& tau, int prec = kDefaultPrecisionBits);
EvalResult j_derivative(const UHPoint& tau, int order, int prec = kDefaultPrecisionBits);

/// Truncation bound for sum_{n>N} n^order e^{4 pi sqrt n} r^n, r = |q| <= e^{-pi}.
double j_tail_bound(double r, int N, int order);

struct SL2Z {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  Complex apply(const Complex& tau) const;
  SL2Z operator*(const SL2Z& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  friend bool operator==(const SL2Z&, const SL2Z&) = default;
};

struct Reduction {
  UHPoint point;
  SL2Z matrix;  // point = matrix * tau
};

/// Translation into |Re| <= 1/2 alternated with tau -> -1/tau until |tau| >= 1.
Reduction reduce_to_F(const UHPoint& tau);

/// tau in the closed fundamental domain with |j(tau) - z| < 2^-prec max(1, |z|).
UHPoint j_inverse(const Complex& z, int prec = kDefaultPrecisionBits);

/// | |j(tau)| - e^{2 pi Im tau} |
Real growth_gap(const UHPoint& tau, int prec = kDefaultPrecisionBits);

enum class ImSign { negative, zero, positive };
const char* to_string(ImSign s);

/// Sign of Im j(tau) for tau in the closed fundamental domain. Points within
/// 2^{-prec/2} of Re = 0, Re = +-1/2 or |tau| = 1 are reported as zero.
ImSign sign_of_im_j(const UHPoint& tau, int prec = kDefaultPrecisionBits);

/// zeta = e^{2 pi i / 6}, the corner 1/2 + i sqrt(3)/2.
UHPoint rho_point();
UHPoint i_point();

}  // namespace moduli
