#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "moduli/counting.hpp"
#include "moduli/error.hpp"
#include "moduli/reference.hpp"

using namespace moduli;

namespace {

NeighborhoodQuery query(std::int64_t delta, mpq_class re, mpq_class im, mpq_class eps) {
  return {validate_discriminant(delta), std::move(re), std::move(im), std::move(eps)};
}

std::int64_t random_disc(std::mt19937_64& rng, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(3, hi);
  std::int64_t m = dist(rng);
  if (m % 4 == 1 || m % 4 == 2) m -= m % 4;
  return -std::max<std::int64_t>(m, 3);
}

}  // namespace

TEST_CASE("worked examples") {
  CHECK(cm_count(query(-4, 0, 1, mpq_class(1, 10))) == 1);
  CHECK(cm_count(query(-3, 0, 1, mpq_class(1, 10))) == 0);
  // root of (2,1,3) is (-1 + i sqrt 23) / 4; use a rational point 1e-4 away.
  CHECK(cm_count(query(-23, mpq_class(-1, 4), mpq_class(11990, 10000), mpq_class(1, 100))) == 1);
  const auto q = query(-4, 0, 1, mpq_class(1, 1000));
  const double lb = lemma_bound(q);
  CHECK(lb == doctest::Approx(4.045).epsilon(1e-3));
  CHECK(lb >= 2 * (32 * 1.5 * (2.0 / 3) * 1e-6 + 16 * std::pow(4.0 / 3, 0.25) * 1e-3 + 8 * (2.0 / 3) * 1e-3 + 2));
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(validate(query(-4, 0, mpq_class(1, 2), mpq_class(1, 10))), Error);
  CHECK_THROWS_AS(validate(query(-4, 0, 1, 0)), Error);
  CHECK_THROWS_AS(validate(query(-4, 0, 1, mpq_class(1, 2))), Error);
  // Im xi = sqrt(3)/2 is irrational; a rational just above must pass, just below must not.
  CHECK_NOTHROW(validate(query(-4, 0, mpq_class(866026, 1000000), mpq_class(1, 10))));
  CHECK_THROWS_AS(validate(query(-4, 0, mpq_class(866025, 1000000), mpq_class(1, 10))), Error);
  CHECK_FALSE(query(-4, 0, 1, mpq_class(3, 10)).certified());
  CHECK(query(-4, 0, 1, mpq_class(1, 10)).certified());
}

TEST_CASE("boundary ties are excluded exactly") {
  // root i of (1,0,1); the disc around 1.1 i of radius exactly 1/10 does not contain it.
  CHECK(cm_count(query(-4, 0, mpq_class(11, 10), mpq_class(1, 10))) == 0);
  CHECK(cm_count(query(-4, 0, mpq_class(11, 10), mpq_class(101, 1000))) == 1);
  // (1,0,4) at delta -16: root 2i.
  CHECK(cm_count(query(-16, mpq_class(3, 10), mpq_class(2), mpq_class(3, 10))) == 0);
  CHECK(reference::cm_count(-16, mpq_class(3, 10), 2, mpq_class(3, 10)) == 0);
}

TEST_CASE("corollary bound closed form") {
  const auto d = validate_discriminant(-100000000000000LL);
  const auto c = corollary_bound(d, mpq_class(1, 10000));
  const double ll = std::log(7 * std::log(10.0));
  const double expected = 256 * (3.2 * ll + 11000 + 2);
  CHECK(c.value >= expected);
  CHECK(c.value <= expected * (1 + 1e-12));
  CHECK(c.certified);
  CHECK_FALSE(corollary_bound(validate_discriminant(-1000003), mpq_class(1, 10000)).certified);
  CHECK_FALSE(corollary_bound(d, mpq_class(3, 10)).certified);
}

TEST_CASE("soundness, oracle and restriction agree on random queries") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(0, 1000);
  for (int i = 0; i < 150; ++i) {
    const std::int64_t delta = random_disc(rng, i < 100 ? 200000 : 100000000);
    const mpq_class re(num(rng) - 500, 1000);
    const mpq_class im = mpq_class(866026, 1000000) + mpq_class(num(rng), 500);
    const mpq_class eps(1 + num(rng) % 249, 1000);
    const auto q = query(delta, re, im, eps);
    const auto n = cm_count(q);
    REQUIRE(static_cast<double>(n) <= lemma_bound(q));
    REQUIRE(n == cm_count_full(q));
    if (i < 100) REQUIRE(n == reference::cm_count(delta, re, im, eps));
  }
}

TEST_CASE("near-root queries hit forms") {
  // Center each disc on a rational approximation of a form root.
  const auto d = validate_discriminant(-99995);
  for (const auto& f : enumerate_reduced_forms(d)) {
    const UHPoint r = form_root(f);
    if (r.im < Real("0.8661")) continue;
    const auto q = NeighborhoodQuery::make(d, r, Real("0.001"));
    REQUIRE(cm_count(q) >= 1);
    REQUIRE(cm_count(q) == reference::cm_count(d.delta, q.xi_re, q.xi_im, q.eps));
  }
}

TEST_CASE("monotone in eps") {
  const auto d = validate_discriminant(-4000003);
  std::uint64_t prev = 0;
  double prev_lemma = 0;
  for (int k = 1; k < 25; ++k) {
    const auto q = NeighborhoodQuery{d, mpq_class(1, 7), mpq_class(3, 2), mpq_class(k, 100)};
    const auto n = cm_count(q);
    CHECK(n >= prev);
    CHECK(lemma_bound(q) >= prev_lemma);
    prev = n;
    prev_lemma = lemma_bound(q);
  }
}

TEST_CASE("candidate interval contains every hit") {
  const auto q = query(-99999995, mpq_class(1, 3), mpq_class(5, 4), mpq_class(1, 5));
  const auto range = candidate_a_range(q);
  std::uint64_t inside = 0;
  for (const auto& f : enumerate_reduced_forms(q.delta)) {
    if (!root_in_disc(f, q)) continue;
    ++inside;
    REQUIRE(static_cast<std::uint64_t>(f.a) >= range.lo);
    REQUIRE(static_cast<std::uint64_t>(f.a) <= range.hi);
  }
  CHECK(inside == cm_count(q));
  CHECK(inside > 0);
}

TEST_CASE("lemma below corollary above 1e14") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::int64_t> dist(100000000000000LL, 1000000000000000000LL);
  std::uniform_int_distribution<int> num(1, 999);
  for (int i = 0; i < 30; ++i) {
    std::int64_t m = dist(rng);
    if (m % 4 == 1 || m % 4 == 2) m -= m % 4;
    const auto q = query(-m, mpq_class(num(rng) - 500, 1000), mpq_class(866026, 1000000) + mpq_class(num(rng), 300), mpq_class(num(rng) % 249 + 1, 1000));
    const auto c = corollary_bound(q.delta, q.eps);
    REQUIRE(c.certified);
    REQUIRE(lemma_bound(q) <= c.value);
  }
}

TEST_CASE("count report flags") {
  const auto r = count_report(query(-4, 0, 1, mpq_class(1, 10)), true);
  CHECK(r.exact_count == 1);
  REQUIRE(r.corollary_bound.has_value());
  CHECK_FALSE(r.corollary_bound->certified);
  CHECK(r.certified);
  const auto s = count_report(query(-4, 0, 1, mpq_class(3, 10)));
  CHECK_FALSE(s.certified);
  CHECK_FALSE(s.corollary_bound.has_value());
}
