#pragma once

#include <cstdint>
#include <vector>

#include "moduli/forms.hpp"
#include "moduli/modular_j.hpp"

namespace moduli {

struct HeightEstimate {
  Real value;
  Real error_bound;
  std::size_t terms = 0;
};

/// j at the root of every reduced form: the full Galois orbit of j_delta,
/// in form order.
std::vector<EvalResult> singular_moduli(const FactoredDiscriminant& d, int prec = kDefaultPrecisionBits);

/// h(j_delta) = (1/C) sum log max(1, |j(root)|); singular moduli are algebraic
/// integers so only archimedean places contribute.
HeightEstimate singular_modulus_height(const FactoredDiscriminant& d, int prec = kDefaultPrecisionBits);

/// h(j_delta - alpha) for a rational integer alpha; j - alpha is again an
/// algebraic integer with the shifted orbit as conjugates.
HeightEstimate shifted_height(const FactoredDiscriminant& d, std::int64_t alpha, int prec = kDefaultPrecisionBits);

/// Height of an orbit of algebraic integers from its conjugates.
HeightEstimate orbit_height(const std::vector<EvalResult>& conjugates);

/// -(1/n) sum_{|v| < 1} log |v|, checked against (1/n) sum log max(1, |v|).
/// Throws NotUnitConsistent when the two differ by more than `tolerance`.
Real unit_height_via_small_conjugates(const std::vector<Complex>& values, const Real& tolerance = Real(1e-20));

/// (pi |delta|^{1/2} - 0.01) / C(delta) - h_alpha - log 2; needs |delta| >= 16.
Real lower_bound_trivial(const FactoredDiscriminant& d, const Real& h_alpha);
/// (3 / sqrt 5) log |delta| - 9.79 - h_alpha - log 2.
Real lower_bound_colmez(const FactoredDiscriminant& d, const Real& h_alpha);

}  // namespace moduli
