#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moduli/error.hpp"
#include "moduli/heights.hpp"
#include "moduli/poly.hpp"

using namespace moduli;
namespace bmp = boost::multiprecision;

namespace {

Real h_of(std::int64_t delta, int prec = kDefaultPrecisionBits) {
  return singular_modulus_height(validate_discriminant(delta), prec).value;
}

}  // namespace

TEST_CASE("class number one heights are logs of integers") {
  CHECK(h_of(-3) == 0);
  CHECK(bmp::abs(h_of(-4) - bmp::log(Real(1728))) < Real("1e-35"));
  CHECK(bmp::abs(h_of(-7) - bmp::log(Real(3375))) < Real("1e-35"));
  CHECK(bmp::abs(h_of(-163) - 3 * bmp::log(Real(640320))) < Real("1e-35"));
  CHECK(bmp::abs(h_of(-16) - bmp::log(Real(287496))) < Real("1e-35"));
}

TEST_CASE("heights agree with the Mahler measure of the class polynomial") {
  struct Case {
    std::int64_t delta;
    const char* poly;
  };
  const std::vector<Case> cases{
      {-15, "1,191025,-121287375"},
      {-20, "1,-1264000,-681472000"},
      {-24, "1,-4834944,14670139392"},
  };
  for (const auto& c : cases) {
    CHECK(bmp::abs(h_of(c.delta) - height_from_min_poly(parse_poly(c.poly))) < Real("1e-30"));
  }
}

TEST_CASE("shifted height and the orbit") {
  const auto d = validate_discriminant(-15);
  const auto conj = singular_moduli(d);
  REQUIRE(conj.size() == 2);
  const Real s5 = bmp::sqrt(Real(5));
  const Real j1 = (Real(-191025) - 85995 * s5) / 2;
  const Real j2 = (Real(-191025) + 85995 * s5) / 2;
  Real a = conj[0].value.re, b = conj[1].value.re;
  if (a > b) std::swap(a, b);
  CHECK(bmp::abs(a - j1) < Real("1e-30"));
  CHECK(bmp::abs(b - j2) < Real("1e-30"));
  const Real expected = (bmp::log(bmp::abs(j1 - 2)) + bmp::log(bmp::abs(j2 - 2))) / 2;
  const HeightEstimate h = shifted_height(d, 2);
  CHECK(bmp::abs(h.value - expected) < Real("1e-30"));
  CHECK(h.error_bound < Real("1e-30"));
  CHECK(h.terms == 2);
}

TEST_CASE("unit consistency") {
  const Real phi = (1 + bmp::sqrt(Real(5))) / 2;
  CHECK(bmp::abs(unit_height_via_small_conjugates({Complex(phi), Complex(-1 / phi)}) - bmp::log(phi) / 2) < Real("1e-40"));
  CHECK_THROWS_AS(unit_height_via_small_conjugates({Complex(2), Complex(3)}), Error);
  // j(zeta) - 1 = -1 is a unit of height 0.
  const auto orbit = singular_moduli(validate_discriminant(-3));
  CHECK(unit_height_via_small_conjugates({orbit[0].value - Complex(1)}) == 0);
}

TEST_CASE("lower bounds hold with the expected tight witnesses") {
  for (std::int64_t m = 16; m <= 3000; ++m) {
    if (m % 4 == 1 || m % 4 == 2) continue;
    const auto d = validate_discriminant(-m);
    const Real h = singular_modulus_height(d).value;
    REQUIRE(h >= lower_bound_trivial(d, 0) + log2_const());
    REQUIRE(h >= lower_bound_colmez(d, 0) + log2_const());
  }
  const auto d16 = validate_discriminant(-16);
  const Real margin16 = h_of(-16) - (lower_bound_trivial(d16, 0) + log2_const());
  CHECK(margin16 > 0);
  CHECK(margin16 < Real("0.02"));
  const auto d163 = validate_discriminant(-163);
  const Real margin163 = h_of(-163) - (lower_bound_trivial(d163, 0) + log2_const());
  CHECK(bmp::abs(margin163 - Real("0.0100")) < Real("1e-4"));
  CHECK_THROWS_AS(lower_bound_trivial(validate_discriminant(-15), 0), Error);
}

TEST_CASE("precision stability") {
  for (std::int64_t m : {-23LL, -71LL, -1000LL, -9999LL}) {
    const auto d = validate_discriminant(m);
    const HeightEstimate lo = singular_modulus_height(d, 64);
    const HeightEstimate hi = singular_modulus_height(d, 128);
    CHECK(bmp::abs(lo.value - hi.value) <= lo.error_bound + hi.error_bound + pow2(-60));
  }
}
