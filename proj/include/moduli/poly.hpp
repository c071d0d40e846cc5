#pragma once

#include <gmpxx.h>

#include <string_view>
#include <vector>

#include "moduli/numeric.hpp"

namespace moduli {

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<mpz_class>;

/// "1,0,-2" -> x^2 - 2 (leading coefficient first, as written by hand).
IntPoly parse_poly(std::string_view text);
std::string format_poly(const IntPoly& p);

int degree(const IntPoly& p);
mpz_class content(const IntPoly& p);
/// Divides out the content and makes the leading coefficient positive.
IntPoly primitive_part(const IntPoly& p);

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);

/// Minimal polynomial of (a x + b) / (c x + d) given that of x:
/// (-c t + a)^n P((d t - b) / (-c t + a)), up to content.
IntPoly mobius_transform(const IntPoly& p, long a, long b, long c, long d);

Complex poly_eval(const IntPoly& p, const Complex& z);

/// All complex roots by Aberth-Ehrlich iteration at working precision.
std::vector<Complex> poly_roots(const IntPoly& p);

/// |lead| * prod max(1, |root|)
Real mahler_measure(const IntPoly& p);

/// log M(P) / deg P for the primitive part; equals the Weil height of any
/// root when P is irreducible over Q.
Real height_from_min_poly(const IntPoly& p);

}  // namespace moduli
