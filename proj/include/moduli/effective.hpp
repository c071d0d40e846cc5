#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moduli/counting.hpp"
#include "moduli/forms.hpp"
#include "moduli/modular_j.hpp"
#include "moduli/periods.hpp"
#include "moduli/poly.hpp"

namespace moduli {

enum class SeparationCase { boundary_nonI, point_i, interior };
const char* to_string(SeparationCase c);

struct SeparationData {
  Real A;          // |j''(i)| at xi = i, |j'(xi)| otherwise
  Real B;          // 4e5 max(1, |j(xi)|)
  Real delta_sep;  // min(A / (12A + 108B), half distance to the other geodesics)
  Real c_xi;
  SeparationCase case_tag = SeparationCase::interior;
  Real analytic_radius;  // A / (12A + 108B)
  Real geodesic_half_distance;
  bool mirrored = false;  // xi had Re < 0 and was replaced by -conj(xi)
};

/// Constants of the local separation estimates for j around xi in the closed
/// fundamental domain. Throws CornerPoint at zeta and zeta^2.
SeparationData separation_constants(const UHPoint& xi, const Complex& j_xi, int prec = kDefaultPrecisionBits);

/// M xi for M in {1, T, T^-1, S} that stay in the closed fundamental domain.
std::vector<UHPoint> t_orbit(const UHPoint& xi);

struct C2Constant {
  mpz_class integer_part;  // 2^50 3^43 5^18 D^6
  Real h;
  Real value;  // integer_part * h^2
  Real log_value;
};
C2Constant c2_constant(int degree, const Real& h_model);

struct Embedding {
  Complex alpha;
  UHPoint xi;
  Complex j_residual;  // j(xi) - alpha
  Complex omega1;
  Complex omega2;
  std::string period_source;  // "agm", "eisenstein" or "user"
  SeparationData separation;
};

struct AlphaProfile {
  IntPoly min_poly;
  int degree = 0;
  Real h_alpha;
  std::vector<Embedding> embeddings;
  Real h_curve;  // h(1, g2, g3) of the model
  Real h_model;  // max(1, h_curve, h(alpha))
  std::string model;
  bool algebraic_integer = false;
  std::int64_t singular_scan_bound = 0;
};

struct ProfileOptions {
  int prec = kDefaultPrecisionBits;
  /// Per-embedding (omega1, omega2); replaces the AGM periods of the default model.
  std::optional<std::vector<std::pair<Complex, Complex>>> periods;
  /// Rational (g2, g3) of a model over Q; only for degree 1.
  std::optional<std::pair<mpq_class, mpq_class>> curve;
  /// Preimage of alpha for a degree-1 alpha; checked against j.
  std::optional<UHPoint> xi;
  std::int64_t singular_scan_bound = 10000;
};

/// Embeddings, preimages, periods and separation data for alpha given by its
/// minimal polynomial. Throws DomainError when alpha matches a singular
/// modulus of discriminant |delta| <= singular_scan_bound.
AlphaProfile build_profile(const IntPoly& min_poly, const ProfileOptions& options = {});

/// Discriminant of a singular modulus equal to alpha (first embedding), if any with |delta| <= bound.
std::optional<std::int64_t> singular_modulus_match(const IntPoly& min_poly, std::int64_t bound);

/// Pen = log max(1, 1/c) and M = log max(1, |omega1|, |omega2|) over embeddings.
Real penalty_from_c(const std::vector<Real>& c_values);
Real period_term(const std::vector<std::pair<Complex, Complex>>& periods);
struct PenAndM {
  Real pen;
  Real M;
  /// Pen >= log 12 does not hold in general (c can exceed 1/12 when Im xi is large).
  bool pen_at_least_log12 = false;
};
PenAndM pen_and_M(const AlphaProfile& profile);

struct HeightUpperBound {
  Real value;
  Real log_value;
  Real count_term;
  bool hypotheses_met = false;  // |delta| >= max(2D, e^{12 pi h}) and eps < 1/4
};
/// c2 (sum counts) / (16 C(delta)) (log|delta|)^4 + 5 Pen + 4 M + |log eps|.
HeightUpperBound height_upper_bound(const FactoredDiscriminant& d, std::uint64_t class_no, int degree,
                                    const C2Constant& c2, const PenAndM& pm, const mpq_class& eps,
                                    const std::vector<std::uint64_t>& counts, const Real& h_model);
/// Same with exact counts around every t_orbit center of every embedding.
HeightUpperBound height_upper_bound(const FactoredDiscriminant& d, const AlphaProfile& profile, const mpq_class& eps);

struct ChainStep {
  std::string label;
  Real value;
};
/// Each over-estimate on the way from the count-based height bound to its closed form, re-evaluated at d with
/// eps = C(d) / (E(d) |d|^{1/2}); the values must be nondecreasing.
std::vector<ChainStep> corollary_chain(const FactoredDiscriminant& d, std::uint64_t class_no, int degree,
                                       const C2Constant& c2, const PenAndM& pm);

/// Default c1 in u1: the constant in omega(n) <= log n / loglog n (1 + c1 / loglog n).
inline constexpr double kDefaultC1 = 1.1714;

struct Section4Report {
  Real x;
  double u0 = 0, u1 = 0, u2 = 0;
  std::optional<double> u3;
  double c1 = kDefaultC1;
  double L_lower = 0;  // (3 / sqrt 5) log x - 10
  /// log(E(x) x^{-1/2}) / log x with F evaluated at x itself.
  double log_E_ratio = 0;
};
/// Throws DomainError for x < 10^10; u3 is filled for x >= 10^15.
Section4Report section4_functions(const Real& x, double c1 = kDefaultC1);
/// log E(x) - 0.5 log x < -0.1 log x, in log space.
bool e_delta_gate(const mpz_class& abs_delta);

struct BoundReport {
  C2Constant c2;
  PenAndM pm;
  int degree = 0;
  Real h_alpha;
  Real C_prime;   // 4 D c2 + 5 Pen + 4 M
  Real C_route1;  // C' + h(alpha) + log 2 + 0.01
  Real C_route2;  // 2 D c2 + 6 Pen + 4 M + h(alpha) + log 2 + 0.01
  Real C_final;   // max of the two
  Real log_bound_e15C;
  Real log_term_1e50;
  Real log_term_C;        // 10 sqrt5 / 3 (C + 1)
  Real log_term_c2_2pi;   // 10 log(10 D c2 / (2 pi))
  Real log_term_c2_4pi;   // 10 log(10 D c2 / (4 pi))
  Real log_bound_max;
  bool e15C_dominates = false;
};
BoundReport final_delta_bound(const AlphaProfile& profile);
BoundReport final_delta_bound(int degree, const Real& h_model, const Real& h_alpha, const PenAndM& pm);

struct LinLogReport {
  std::size_t samples = 0;
  std::size_t quadratic_violations = 0;
  std::size_t linear_violations = 0;
  double min_quadratic_ratio = 0;  // min |j(tau) - j(xi)| / ((A/4)|tau - xi|^2)
  double min_linear_ratio = 0;     // min |j(tau) - j(xi)| / ((A/2)|tau - xi|)
  SeparationData separation;
};
/// Random tau in the discs of the local estimates; deterministic in `seed`.
LinLogReport verify_lin_log(const UHPoint& xi, std::size_t samples, std::uint64_t seed = 1,
                            int prec = kDefaultPrecisionBits);
/// tau on the circle |tau - xi| = radius.
LinLogReport verify_lin_log_circle(const UHPoint& xi, const Real& radius, std::size_t samples,
                                   int prec = kDefaultPrecisionBits);

}  // namespace moduli
