#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "moduli/error.hpp"
#include "moduli/forms.hpp"
#include "moduli/forms_kernel.hpp"
#include "moduli/reference.hpp"

using namespace moduli;

TEST_CASE("discriminant validation") {
  CHECK_THROWS_AS(validate_discriminant(5), Error);
  CHECK_THROWS_AS(validate_discriminant(0), Error);
  CHECK_THROWS_AS(validate_discriminant(-1), Error);
  CHECK_THROWS_AS(validate_discriminant(-5), Error);
  CHECK_THROWS_AS(validate_discriminant(-6), Error);
  try {
    validate_discriminant(-2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonDiscriminant);
  }
  const auto d = validate_discriminant(-3);
  CHECK(d.fundamental == -3);
  CHECK(d.conductor == 1);
  const auto e = validate_discriminant(-4 * 25 * 163);
  CHECK(e.fundamental == -163);
  CHECK(e.conductor == 10);
  const auto f = validate_discriminant(-16);
  CHECK(f.fundamental == -4);
  CHECK(f.conductor == 2);
}

TEST_CASE("decomposition agrees with brute force") {
  for (std::int64_t m = 3; m <= 20000; ++m) {
    if (m % 4 == 1 || m % 4 == 2) continue;
    const auto d = validate_discriminant(-m);
    const auto r = reference::decompose_bruteforce(-m);
    REQUIRE(d.fundamental == r.fundamental);
    REQUIRE(d.conductor == r.conductor);
  }
}

TEST_CASE("known class numbers") {
  // Heegner discriminants and a few tabulated values.
  for (std::int64_t m : {3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163}) CHECK(class_number(validate_discriminant(-m)) == 1);
  const std::map<std::int64_t, std::uint64_t> table{{23, 3}, {47, 5}, {71, 7}, {56, 4}, {84, 4}, {100, 2}, {199, 9}, {479, 25}};
  for (const auto& [m, h] : table) CHECK_MESSAGE(class_number(validate_discriminant(-m)) == h, m);
}

TEST_CASE("forms for -23") {
  const auto forms = enumerate_reduced_forms(validate_discriminant(-23));
  REQUIRE(forms.size() == 3);
  CHECK(forms[0] == QuadraticForm{1, 1, 6});
  CHECK(forms[1] == QuadraticForm{2, -1, 3});
  CHECK(forms[2] == QuadraticForm{2, 1, 3});
}

TEST_CASE("enumerated forms satisfy the reduction invariants") {
  for (std::int64_t m = 3; m <= 4000; ++m) {
    if (m % 4 == 1 || m % 4 == 2) continue;
    const auto d = validate_discriminant(-m);
    for (const auto& q : enumerate_reduced_forms(d)) {
      REQUIRE(q.discriminant() == -m);
      REQUIRE(is_reduced(q));
      REQUIRE(is_primitive(q));
      REQUIRE(q.a > 0);
      REQUIRE(q.a <= static_cast<std::int64_t>(max_reduced_a(d)));
    }
  }
}

TEST_CASE("kernel matches the serial reference") {
  for (std::int64_t m = 3; m <= 5000; ++m) {
    if (m % 4 == 1 || m % 4 == 2) continue;
    REQUIRE(enumerate_reduced_forms(validate_discriminant(-m)) == reference::enumerate_reduced_forms(-m));
  }
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> dist(5000, 2000000);
  for (int i = 0; i < 40; ++i) {
    std::int64_t m = dist(rng);
    m -= (m % 4 == 1 || m % 4 == 2) ? m % 4 : 0;
    REQUIRE(class_number(validate_discriminant(-m)) == reference::class_number(-m));
  }
}

TEST_CASE("split enumeration over a partition equals a single range") {
  std::mt19937_64 rng(11);
  for (std::int64_t m : {1000003LL, 4000000LL * 4 + 3, 99999995LL}) {
    const auto d = validate_discriminant(-m);
    const auto whole = enumerate_reduced_forms(d);
    const auto amax = max_reduced_a(d);
    std::vector<std::uint64_t> cuts{0, amax};
    std::uniform_int_distribution<std::uint64_t> dist(1, amax);
    for (int i = 0; i < 6; ++i) cuts.push_back(dist(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<QuadraticForm> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const auto part = enumerate_reduced_forms(d, AInterval{cuts[i] + 1, cuts[i + 1]});
      pieces.insert(pieces.end(), part.begin(), part.end());
    }
    CHECK(pieces == whole);
    CHECK(kernel::enumerate_parallel(d, full_a_range(d)) == whole);
  }
}

TEST_CASE("class number upper bound") {
  for (std::int64_t m = 5; m <= 100000; ++m) {
    if (m % 4 == 1 || m % 4 == 2) continue;
    const double h = static_cast<double>(class_number(validate_discriminant(-m)));
    REQUIRE(h <= std::sqrt(double(m)) * (2 + std::log(double(m))) / M_PI);
  }
}

TEST_CASE("roots and quadratic heights") {
  const UHPoint r = form_root(QuadraticForm{1, 0, 1});
  CHECK(r.re == 0);
  CHECK(boost::multiprecision::abs(r.im - 1) < Real("1e-45"));
  CHECK(r.in_closed_fundamental_domain());
  const UHPoint z = form_root(QuadraticForm{1, 1, 1});
  CHECK(boost::multiprecision::abs(z.re + Real(1) / 2) < Real("1e-45"));
  // Reduced roots have |tau| >= 1, so the Mahler measure is c.
  CHECK(boost::multiprecision::abs(quadratic_height(QuadraticForm{2, 1, 3}) - boost::multiprecision::log(Real(3)) / 2) < Real("1e-40"));
  for (std::int64_t m = 3; m <= 10000; ++m) {
    if (m % 4 == 1 || m % 4 == 2) continue;
    const Real bound = boost::multiprecision::log(boost::multiprecision::sqrt(Real(m)));
    for (const auto& q : enumerate_reduced_forms(validate_discriminant(-m))) REQUIRE(quadratic_height(q) <= bound + Real("1e-40"));
  }
}

TEST_CASE("sub-range queries clamp to the admissible a") {
  const auto d = validate_discriminant(-1000003);
  CHECK(enumerate_reduced_forms(d, AInterval{max_reduced_a(d) + 1, max_reduced_a(d) + 50}).empty());
  CHECK(enumerate_reduced_forms(d, AInterval{10, 5}).empty());
}
