#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moduli/error.hpp"
#include "moduli/modular_j.hpp"
#include "moduli/periods.hpp"
#include "moduli/poly.hpp"

using namespace moduli;
namespace bmp = boost::multiprecision;

namespace {

UHPoint point(const Real& re, const Real& im) {
  UHPoint t;
  t.re = re;
  t.im = im;
  return t;
}

}  // namespace

TEST_CASE("parse and format") {
  const IntPoly p = parse_poly("1,0,-2");
  REQUIRE(p.size() == 3);
  CHECK(p[0] == -2);
  CHECK(p[2] == 1);
  CHECK(degree(p) == 2);
  CHECK(parse_poly(format_poly(p)) == p);
  CHECK_THROWS_AS(parse_poly("5"), Error);
  CHECK_THROWS_AS(parse_poly("1,x"), Error);
  CHECK_THROWS_AS(parse_poly(""), Error);
}

TEST_CASE("content and arithmetic") {
  CHECK(content(parse_poly("6,-4,2")) == 2);
  CHECK(primitive_part(parse_poly("-6,4,-2")) == parse_poly("3,-2,1"));
  CHECK(poly_mul(parse_poly("1,-1"), parse_poly("1,1")) == parse_poly("1,0,-1"));
}

TEST_CASE("moebius transform of a root") {
  // x = sqrt 2, (x + 1) / (x - 1) = 3 + 2 sqrt 2 with minimal polynomial t^2 - 6 t + 1.
  CHECK(mobius_transform(parse_poly("1,0,-2"), 1, 1, 1, -1) == parse_poly("1,-6,1"));
  // 27 x / (x - 1728) at x = 2: -54 / 1726 = -27 / 863.
  CHECK(mobius_transform(parse_poly("1,-2"), 27, 0, 1, -1728) == parse_poly("863,27"));
}

TEST_CASE("roots, Mahler measure and height") {
  const auto roots = poly_roots(parse_poly("1,0,0,-8"));
  REQUIRE(roots.size() == 3);
  for (const auto& r : roots) CHECK(bmp::abs(abs(r) - 2) < Real("1e-40"));
  CHECK(bmp::abs(mahler_measure(parse_poly("2,0,-1")) - 2) < Real("1e-40"));
  CHECK(bmp::abs(height_from_min_poly(parse_poly("1,-1,-1")) - bmp::log((1 + bmp::sqrt(Real(5))) / 2) / 2) < Real("1e-40"));
  CHECK(bmp::abs(height_from_min_poly(parse_poly("3,-2")) - bmp::log(Real(3))) < Real("1e-40"));
  CHECK(abs(poly_eval(parse_poly("1,0,1"), Complex(0, 1))) < Real("1e-45"));
}

TEST_CASE("Eisenstein series values") {
  // E4(i)^3 / E6 at rho vanish at the right places; E4(i) = 3 Gamma(1/4)^8 / (2 pi)^6.
  CHECK(abs(eisenstein_E6(i_point())) < Real("1e-35"));
  CHECK(abs(eisenstein_E4(rho_point())) < Real("1e-35"));
  const double g = std::tgamma(0.25);
  const double e4 = 3 * std::pow(g, 8) / std::pow(2 * M_PI, 6);
  CHECK(to_double(eisenstein_E4(i_point()).re) == doctest::Approx(e4).epsilon(1e-12));
}

TEST_CASE("lattice invariants reproduce j") {
  const UHPoint tau = point(Real("0.2"), Real("1.4"));
  const auto inv = lattice_invariants(Complex(Real("1.3"), Real("-0.4")), tau);
  CHECK(abs(curve_j(inv.g2, inv.g3) - j_eval(tau).value) < Real("1e-25") * abs(j_eval(tau).value));
  CHECK_THROWS_AS(curve_j(Complex(3), Complex(1)), Error);  // 27 - 27 = 0
}

TEST_CASE("periods of classical curves") {
  const PeriodLattice sq = compute_periods(Complex(4), Complex(0));
  CHECK(abs(sq.ratio.value() - Complex(0, 1)) < Real("1e-30"));
  const PeriodLattice hex = compute_periods(Complex(0), Complex(4));
  CHECK(abs(hex.ratio.value() - Complex(Real(-1) / 2, bmp::sqrt(Real(3)) / 2)) < Real("1e-30"));
  // Round trip: periods of a lattice built from a known tau.
  const UHPoint tau = point(Real("-0.31"), Real("1.12"));
  const auto inv = lattice_invariants(Complex(Real("0.7"), Real("0.2")), tau);
  const PeriodLattice back = compute_periods(inv.g2, inv.g3);
  CHECK(abs(j_eval(back.ratio).value - curve_j(inv.g2, inv.g3)) < Real("1e-20") * abs(curve_j(inv.g2, inv.g3)));
  const auto check = lattice_invariants(back.omega1, back.ratio);
  CHECK(abs(check.g2 - inv.g2) < Real("1e-25") * abs(inv.g2));
  CHECK(abs(check.g3 - inv.g3) < Real("1e-25") * abs(inv.g3));
}

TEST_CASE("matching the ratio to a chosen preimage") {
  const PeriodLattice sq = compute_periods(Complex(4), Complex(0));
  const PeriodLattice m = match_ratio(sq, i_point(), Real("1e-20"));
  CHECK(abs(m.ratio.value() - Complex(0, 1)) < Real("1e-30"));
  CHECK_THROWS_AS(match_ratio(sq, point(Real("0.3"), Real(2)), Real("1e-20")), Error);
}
