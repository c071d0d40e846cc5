#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>

#include "moduli/forms.hpp"

namespace moduli {

/// Disc around xi of radius eps. Center and radius are exact rationals so
/// that boundary ties are decided exactly.
struct NeighborhoodQuery {
  FactoredDiscriminant delta;
  mpq_class xi_re;
  mpq_class xi_im;
  mpq_class eps;

  static NeighborhoodQuery make(const FactoredDiscriminant& d, const UHPoint& xi, const Real& eps);
  UHPoint xi() const;
  /// eps < 1/4; results for eps in [1/4, 1/2) are computed but not certified.
  bool certified() const { return eps < mpq_class(1, 4); }
};

/// Throws DomainError unless Im xi >= sqrt(3)/2 and 0 < eps < 1/2.
void validate(const NeighborhoodQuery& q);

/// Exact test |root(form) - xi| < eps.
bool root_in_disc(const QuadraticForm& form, const NeighborhoodQuery& q);

/// Candidate leading coefficients: the open interval
/// (|delta|^{1/2} / (2y + 2 eps), |delta|^{1/2} / (2y - 2 eps)) rounded outward.
AInterval candidate_a_range(const NeighborhoodQuery& q);

/// Exact count of reduced forms with root in the open disc, scanning only
/// the candidate a-range.
std::uint64_t cm_count(const NeighborhoodQuery& q);
/// Same count over every reduced form; used to cross-check the restriction.
std::uint64_t cm_count_full(const NeighborhoodQuery& q);

/// F (32 sigma1(f~)/f~ |delta|^{1/2} eps^2 / (4y^2 - 1) + 8 sigma0(f~) |delta/3|^{1/4} eps
///    + 8 |delta|^{1/2} eps / (4y^2 - 1) + 2), rounded up.
double lemma_bound(const NeighborhoodQuery& q);

struct CorollaryBound {
  double value = 0;
  /// false when |delta| < 10^14 or eps >= 1/4.
  bool certified = false;
};
/// F (32 |delta|^{1/2} eps^2 loglog(|delta|^{1/2}) + 11 |delta|^{1/2} eps + 2), rounded up.
CorollaryBound corollary_bound(const FactoredDiscriminant& d, const mpq_class& eps);

struct CountReport {
  std::uint64_t exact_count = 0;
  double lemma_bound = 0;
  std::optional<CorollaryBound> corollary_bound;
  double a_interval_lo = 0;
  double a_interval_hi = 0;
  bool certified = true;
};
/// The corollary bound is attached when |delta| >= 10^14 or `always_corollary` is set.
CountReport count_report(const NeighborhoodQuery& q, bool always_corollary = false);

}  // namespace moduli
