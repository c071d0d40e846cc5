#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include "moduli/effective.hpp"
#include "moduli/error.hpp"

using namespace moduli;
namespace bmp = boost::multiprecision;

namespace {

UHPoint point(const Real& re, const Real& im) {
  UHPoint t;
  t.re = re;
  t.im = im;
  return t;
}

PenAndM pm_of(const Real& pen, const Real& m) { return {pen, m, pen >= bmp::log(Real(12))}; }

}  // namespace

TEST_CASE("separation constants: case table") {
  const SeparationData si = separation_constants(i_point(), Complex(1728));
  CHECK(si.case_tag == SeparationCase::point_i);
  const double g = boost::math::tgamma(0.25);
  CHECK(to_double(si.A) == doctest::Approx(162 * std::pow(g, 8) / std::pow(M_PI, 4)).epsilon(1e-12));
  CHECK(si.B == 400000 * Real(1728));
  CHECK(bmp::abs(si.c_xi - si.A * si.delta_sep * si.delta_sep / 4) < Real("1e-50"));

  const UHPoint two_i = point(0, 2);
  const SeparationData s2 = separation_constants(two_i, j_eval(two_i).value);
  CHECK(s2.case_tag == SeparationCase::boundary_nonI);
  CHECK(bmp::abs(s2.A - abs(j_prime(two_i).value)) < Real("1e-30") * s2.A);
  CHECK(s2.c_xi == s2.A * s2.delta_sep / 2);
  CHECK(s2.geodesic_half_distance == Real(1) / 4);  // Re = 1/2 is the nearest other geodesic

  const UHPoint in = point(Real("0.3"), Real("1.5"));
  const Complex j_in = j_eval(in).value;
  CHECK(j_in.im < 0);
  const SeparationData s3 = separation_constants(in, j_in);
  CHECK(s3.case_tag == SeparationCase::interior);
  CHECK(s3.c_xi == std::min<Real>(bmp::abs(j_in.im), s3.A * s3.delta_sep / 2));

  CHECK_THROWS_AS(separation_constants(rho_point(), Complex(0)), Error);
  CHECK_THROWS_AS(separation_constants(point(Real("0.7"), 2), Complex(1)), Error);

  const UHPoint neg = point(Real("-0.3"), Real("1.5"));
  const SeparationData s4 = separation_constants(neg, j_eval(neg).value);
  CHECK(s4.mirrored);
  CHECK(bmp::abs(s4.A - s3.A) < Real("1e-30") * s3.A);
}

TEST_CASE("c stays below A delta / 2") {
  for (const UHPoint& xi : {i_point(), point(0, 2), point(Real("0.5"), 3), point(Real("0.2"), Real("1.1")),
                            point(bmp::cos(pi() * 2 / 5), bmp::sin(pi() * 2 / 5))}) {
    const SeparationData s = separation_constants(xi, j_eval(xi).value);
    CHECK(s.c_xi <= s.A / 2 * s.delta_sep);
    CHECK(s.delta_sep <= s.analytic_radius);
  }
}

TEST_CASE("t orbit") {
  CHECK(t_orbit(point(Real("0.2"), Real("1.5"))).size() == 1);
  const auto edge = t_orbit(point(Real("-0.5"), Real("1.5")));
  REQUIRE(edge.size() == 2);
  CHECK(bmp::abs(edge[1].re - Real("0.5")) < Real("1e-40"));
  const Real th = pi() * 2 / 5;
  const auto arc = t_orbit(point(bmp::cos(th), bmp::sin(th)));
  REQUIRE(arc.size() == 2);
  CHECK(bmp::abs(arc[1].re + bmp::cos(th)) < Real("1e-40"));
  CHECK(t_orbit(i_point()).size() == 1);
}

TEST_CASE("c2 is an exact product") {
  mpz_class expected;
  mpz_class a, b, c;
  mpz_ui_pow_ui(a.get_mpz_t(), 2, 50);
  mpz_ui_pow_ui(b.get_mpz_t(), 3, 43);
  mpz_ui_pow_ui(c.get_mpz_t(), 5, 18);
  expected = a * b * c;
  const C2Constant one = c2_constant(1, 1);
  CHECK(one.integer_part == expected);
  CHECK(to_double(one.value) == doctest::Approx(1.40985e48).epsilon(1e-5));
  CHECK(c2_constant(2, 1).integer_part == 64 * expected);
  CHECK(bmp::abs(c2_constant(1, 2).value - 4 * one.value) < one.value * Real("1e-45"));
  CHECK(bmp::abs(one.log_value - bmp::log(one.value)) < Real("1e-40"));
  CHECK_THROWS_AS(c2_constant(0, 1), Error);
  CHECK_THROWS_AS(c2_constant(1, Real("0.5")), Error);
}

TEST_CASE("penalty and period term") {
  CHECK(bmp::abs(penalty_from_c({Real(1) / 20}) - bmp::log(Real(20))) < Real("1e-45"));
  CHECK(bmp::abs(penalty_from_c({Real(1) / 20, Real(1) / 50}) - bmp::log(Real(50))) < Real("1e-45"));
  CHECK(penalty_from_c({Real(3)}) == 0);
  CHECK(period_term({{Complex(1), Complex(0, 1)}}) == 0);
  CHECK(bmp::abs(period_term({{Complex(3, 4), Complex(1)}}) - bmp::log(Real(5))) < Real("1e-45"));
  CHECK_THROWS_AS(penalty_from_c({}), Error);
}

TEST_CASE("height upper bound assembly") {
  const auto d = validate_discriminant(-1000003);
  const auto c2 = c2_constant(1, 1);
  const auto pm = pm_of(bmp::log(Real(20)), 0);
  const mpq_class eps(1, 1000);
  const auto zero = height_upper_bound(d, 105, 1, c2, pm, eps, {0, 0}, 1);
  CHECK(bmp::abs(zero.value - (5 * bmp::log(Real(20)) + bmp::log(Real(1000)))) < Real("1e-40"));
  const auto full = height_upper_bound(d, 105, 1, c2, pm, eps, {16 * 105}, 1);
  const Real L = bmp::log(Real(1000003));
  CHECK(bmp::abs(full.count_term / (c2.value * bmp::pow(L, 4)) - 1) < Real("1e-40"));
  CHECK_FALSE(full.hypotheses_met);  // |delta| < e^{12 pi}
}

TEST_CASE("the corollary chain only ever over-estimates") {
  const auto d = validate_discriminant(-100000000000000LL);
  const auto steps = corollary_chain(d, 1000000, 1, c2_constant(1, 1), pm_of(bmp::log(Real(20)), 0));
  REQUIRE(steps.size() == 8);
  for (std::size_t i = 1; i < steps.size(); ++i) CHECK_MESSAGE(steps[i].value >= steps[i - 1].value, steps[i].label);
}

TEST_CASE("numeric gates") {
  const auto r50 = section4_functions(Real("1e50"));
  CHECK(r50.u0 < -0.1);
  CHECK(r50.u1 * r50.u2 <= 0.4896);
  CHECK(r50.u3.has_value());
  const auto r15 = section4_functions(Real("1e15"));
  REQUIRE(r15.u3.has_value());
  CHECK(*r15.u3 < 0.0674);
  CHECK_FALSE(section4_functions(Real("1e12")).u3.has_value());
  CHECK_THROWS_AS(section4_functions(Real("1e9")), Error);
  CHECK(e_delta_gate(mpz_class("100000000000000000000000000000000000000000000000000")));
  CHECK(r50.log_E_ratio < -0.1);
  // u1 u2 depends on c1; a c1 far past Robin's constant breaks the gate.
  CHECK(section4_functions(Real("1e50"), 2.6).u1 * section4_functions(Real("1e50"), 2.6).u2 > 0.4896);
}

TEST_CASE("final bound assembly") {
  const auto pm = pm_of(bmp::log(Real(20)), 0);
  const BoundReport b = final_delta_bound(1, 1, 0, pm);
  const Real c2 = c2_constant(1, 1).value;
  const Real route1 = 4 * c2 + 5 * bmp::log(Real(20)) + bmp::log(Real(2)) + Real("0.01");
  CHECK(bmp::abs(b.C_route1 - route1) < route1 * Real("1e-45"));
  CHECK(b.C_final == b.C_route1);
  CHECK(b.log_bound_e15C == 15 * b.C_final);
  CHECK(b.e15C_dominates);
  CHECK(b.log_bound_e15C >= b.log_term_1e50);
  CHECK(b.log_bound_e15C >= b.log_term_C);
  CHECK(b.log_bound_e15C >= b.log_term_c2_2pi);
  const BoundReport b2 = final_delta_bound(1, 2, 0, pm);
  CHECK(bmp::abs((b2.C_prime - 5 * pm.pen) / (b.C_prime - 5 * pm.pen) - 4) < Real("1e-40"));
}

TEST_CASE("profile for alpha = 2") {
  const AlphaProfile p = build_profile(parse_poly("1,-2"));
  REQUIRE(p.embeddings.size() == 1);
  const Embedding& e = p.embeddings[0];
  CHECK(abs(e.j_residual) < Real("1e-20"));
  CHECK(abs(e.xi.value() - Complex(Real("0.46886648169197228344"), Real("0.88326905433496956604"))) < Real("1e-18"));
  CHECK(e.separation.case_tag == SeparationCase::boundary_nonI);
  CHECK(p.algebraic_integer);
  CHECK(bmp::abs(p.h_alpha - bmp::log(Real(2))) < Real("1e-40"));
  CHECK(bmp::abs(p.h_curve - bmp::log(Real(863))) < Real("1e-40"));
  // The periods span a lattice whose invariants give j = 2.
  const UHPoint ratio = point((e.omega2 / e.omega1).re, (e.omega2 / e.omega1).im);
  CHECK(abs(j_eval(ratio).value - Complex(2)) < Real("1e-20"));
  const BoundReport b = final_delta_bound(p);
  CHECK(b.e15C_dominates);
  CHECK(b.log_bound_e15C >= 50 * bmp::log(Real(10)));
}

TEST_CASE("profile rejects singular moduli and honours user data") {
  CHECK_THROWS_AS(build_profile(parse_poly("1,-1728")), Error);
  CHECK_THROWS_AS(build_profile(parse_poly("1,3375")), Error);
  // omega1 = 1, omega2 = xi: |xi| = 1 on the arc, so M vanishes.
  const UHPoint xi = j_inverse(Complex(2));
  ProfileOptions o;
  o.periods = std::vector<std::pair<Complex, Complex>>{{Complex(1), xi.value()}};
  const AlphaProfile p = build_profile(parse_poly("1,-2"), o);
  CHECK(p.embeddings[0].period_source == "user");
  CHECK(pen_and_M(p).M == 0);
  ProfileOptions bad;
  bad.periods = std::vector<std::pair<Complex, Complex>>{};
  CHECK_THROWS_AS(build_profile(parse_poly("1,-2"), bad), Error);
  const AlphaProfile q = build_profile(parse_poly("1,0,-2"));
  CHECK(q.embeddings.size() == 2);
  CHECK(q.degree == 2);
}

TEST_CASE("local estimates hold on samples") {
  const LinLogReport r = verify_lin_log(point(0, 2), 200);
  CHECK(r.samples > 0);
  CHECK(r.quadratic_violations == 0);
  CHECK(r.linear_violations == 0);
  const LinLogReport c = verify_lin_log_circle(i_point(), Real("1e-3"), 64);
  CHECK(c.quadratic_violations == 0);
  CHECK(c.min_quadratic_ratio * to_double(c.separation.A) / 4 >= 12413);
}
