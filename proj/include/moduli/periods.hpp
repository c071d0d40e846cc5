#pragma once

#include "moduli/forms.hpp"
#include "moduli/modular_j.hpp"

namespace moduli {

/// E4 and E6 normalised to constant term 1. Requires Im tau >= 1/2.
Complex eisenstein_E4(const UHPoint& tau);
Complex eisenstein_E6(const UHPoint& tau);

struct LatticeInvariants {
  Complex g2;
  Complex g3;
};
/// g2, g3 of the lattice omega1 Z + omega1 tau Z.
LatticeInvariants lattice_invariants(const Complex& omega1, const UHPoint& tau);

/// 1728 g2^3 / (g2^3 - 27 g3^2); throws SingularCurve on a zero discriminant.
Complex curve_j(const Complex& g2, const Complex& g3);

struct PeriodLattice {
  Complex omega1;
  Complex omega2;
  UHPoint ratio;  // omega2 / omega1, in the closed fundamental domain
  bool from_agm = true;
};

/// Period basis of y^2 = 4x^3 - g2 x - g3 from the AGM over the root pairs,
/// reduced so that omega2 / omega1 lies in the closed fundamental domain.
/// Every candidate is accepted only if its Eisenstein invariants reproduce
/// (g2, g3); if no AGM branch passes, the basis is rebuilt from
/// j^{-1}(j(E)) and E6 / E4 and from_agm is false.
PeriodLattice compute_periods(const Complex& g2, const Complex& g3, int prec = kDefaultPrecisionBits);

/// Moves the basis by an element of {1, T, T^-1, S} so the ratio equals `xi`
/// (both in the closed fundamental domain). Throws InvalidInput if none does.
PeriodLattice match_ratio(const PeriodLattice& lattice, const UHPoint& xi, const Real& tolerance);

}  // namespace moduli
