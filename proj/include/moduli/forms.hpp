#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "moduli/discriminant.hpp"
#include "moduli/numeric.hpp"

namespace moduli {

/// Primitive positive-definite binary quadratic form a x^2 + b x y + c y^2.
struct QuadraticForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  auto operator<=>(const QuadraticForm&) const = default;
};

/// Point of the upper half-plane carried at working precision. precision_bits
/// records the accuracy the producer vouches for.
struct UHPoint {
  Real re;
  Real im;
  int precision_bits = kDefaultPrecisionBits;

  Complex value() const { return {re, im}; }
  /// |re| <= 1/2 and |tau| >= 1, both up to 2^-precision_bits slack.
  bool in_closed_fundamental_domain() const;
};

/// Inclusive range of leading coefficients a.
struct AInterval {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;
};

FactoredDiscriminant validate_discriminant(std::int64_t n);

bool is_reduced(const QuadraticForm& q);
bool is_primitive(const QuadraticForm& q);

/// floor(sqrt(|delta| / 3)), the largest a of any reduced form.
std::uint64_t max_reduced_a(const FactoredDiscriminant& d);
AInterval full_a_range(const FactoredDiscriminant& d);

/// Reduced primitive forms sorted by (a, b). The range overload restricts to
/// a in `range`; concatenating the results over a partition of the full
/// range reproduces the full list.
std::vector<QuadraticForm> enumerate_reduced_forms(const FactoredDiscriminant& d);
std::vector<QuadraticForm> enumerate_reduced_forms(const FactoredDiscriminant& d, AInterval range);

std::uint64_t class_number(const FactoredDiscriminant& d);

/// (-b + i |delta|^{1/2}) / (2a)
UHPoint form_root(const QuadraticForm& q);

/// Weil height of the root of a x^2 + b x + c through its Mahler measure.
Real quadratic_height(const QuadraticForm& q);

}  // namespace moduli
