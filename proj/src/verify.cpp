#include "moduli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "moduli/arith.hpp"
#include "moduli/counting.hpp"
#include "moduli/effective.hpp"
#include "moduli/error.hpp"
#include "moduli/heights.hpp"
#include "moduli/modular_j.hpp"
#include "moduli/reference.hpp"

namespace moduli::verify {

namespace {

namespace mp = boost::multiprecision;

std::vector<std::int64_t> discriminants_up_to(std::int64_t bound, std::int64_t from = 3) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = from; m <= bound; ++m) {
    if (m % 4 == 0 || m % 4 == 3) out.push_back(-m);
  }
  return out;
}

std::string count_detail(std::size_t violations, std::size_t total) {
  return std::to_string(violations) + " violations in " + std::to_string(total) + " cases";
}

Check counted(const std::string& name, std::size_t violations, std::size_t total) {
  return {name, violations == 0, count_detail(violations, total)};
}

UHPoint point(double re, double im) {
  UHPoint p;
  p.re = re;
  p.im = im;
  return p;
}

SuiteResult forms_suite() {
  SuiteResult r{"forms", {}};
  std::size_t bad_list = 0, bad_invariant = 0, bad_split = 0, bad_cbound = 0, total = 0;
  for (std::int64_t delta : discriminants_up_to(3000)) {
    const FactoredDiscriminant d = validate_discriminant(delta);
    const auto forms = enumerate_reduced_forms(d);
    ++total;
    if (forms != reference::enumerate_reduced_forms(delta)) ++bad_list;
    for (const auto& f : forms) {
      if (f.discriminant() != delta || !is_reduced(f) || !is_primitive(f)) ++bad_invariant;
    }
    const std::uint64_t amax = max_reduced_a(d);
    std::vector<QuadraticForm> split;
    for (std::uint64_t lo = 1; lo <= amax; lo += 7) {
      auto part = enumerate_reduced_forms(d, {lo, std::min(amax, lo + 6)});
      split.insert(split.end(), part.begin(), part.end());
    }
    if (split != forms) ++bad_split;
    if (delta != -3 && delta != -4) {
      const double m = static_cast<double>(-delta);
      if (static_cast<double>(forms.size()) > std::sqrt(m) * (2 + std::log(m)) / M_PI) ++bad_cbound;
    }
  }
  r.checks.push_back(counted("enumeration matches naive scan", bad_list, total));
  r.checks.push_back(counted("form invariants", bad_invariant, total));
  r.checks.push_back(counted("range-split enumeration", bad_split, total));
  r.checks.push_back(counted("class number bound", bad_cbound, total));

  std::size_t bad_height = 0, forms_seen = 0;
  for (std::int64_t delta : discriminants_up_to(2000)) {
    const Real bound = mp::log(mp::sqrt(Real(static_cast<double>(-delta))));
    for (const auto& f : enumerate_reduced_forms(validate_discriminant(delta))) {
      ++forms_seen;
      if (quadratic_height(f) > bound) ++bad_height;
    }
  }
  r.checks.push_back(counted("h(tau) <= log sqrt|delta|", bad_height, forms_seen));

  std::size_t bad_F = 0;
  for (std::uint64_t n = 3; n <= 200000; n += 37) {
    if (arith::big_F(mpz_class(std::to_string(n))) != reference::big_F_bruteforce(n)) ++bad_F;
  }
  r.checks.push_back(counted("F(delta) primorial vs brute force", bad_F, 200000 / 37));
  return r;
}

SuiteResult counting_suite() {
  SuiteResult r{"counting", {}};
  std::mt19937_64 rng(7);
  std::size_t unsound = 0, oracle = 0, mono = 0;
  const std::size_t queries = 200;
  for (std::size_t k = 0; k < queries; ++k) {
    std::int64_t m = std::uniform_int_distribution<std::int64_t>(3, 20000)(rng);
    while (m % 4 == 1 || m % 4 == 2) ++m;
    const FactoredDiscriminant d = validate_discriminant(-m);
    const auto forms = enumerate_reduced_forms(d);
    const auto& f = forms[std::uniform_int_distribution<std::size_t>(0, forms.size() - 1)(rng)];
    const UHPoint root = form_root(f);
    const double dx = std::uniform_real_distribution<double>(-0.05, 0.05)(rng);
    const double dy = std::uniform_real_distribution<double>(0.0, 0.05)(rng);
    UHPoint xi = root;
    xi.re += dx;
    xi.im += dy;
    const double e = std::uniform_real_distribution<double>(0.001, 0.249)(rng);
    NeighborhoodQuery q = NeighborhoodQuery::make(d, xi, Real(e));
    const std::uint64_t c = cm_count(q);
    if (static_cast<double>(c) > lemma_bound(q)) ++unsound;
    if (c != reference::cm_count(-m, q.xi_re, q.xi_im, q.eps)) ++oracle;
    NeighborhoodQuery wider = q;
    wider.eps = q.eps * mpq_class(11, 10);
    if (wider.eps < mpq_class(1, 4) && (cm_count(wider) < c || lemma_bound(wider) < lemma_bound(q))) ++mono;
  }
  r.checks.push_back(counted("cm_count <= lemma bound", unsound, queries));
  r.checks.push_back(counted("restricted count equals naive count", oracle, queries));
  r.checks.push_back(counted("monotone in eps", mono, queries));

  std::size_t order = 0, big = 0;
  for (int k = 0; k < 50; ++k) {
    std::int64_t m = 100000000000000LL + std::uniform_int_distribution<std::int64_t>(0, 1000000000000LL)(rng);
    while (m % 4 == 1 || m % 4 == 2) ++m;
    const FactoredDiscriminant d = validate_discriminant(-m);
    const double y = std::uniform_real_distribution<double>(0.87, 3.0)(rng);
    const double e = std::uniform_real_distribution<double>(1e-6, 0.249)(rng);
    NeighborhoodQuery q = NeighborhoodQuery::make(d, point(0.1, y), Real(e));
    ++big;
    if (lemma_bound(q) > corollary_bound(d, q.eps).value) ++order;
  }
  r.checks.push_back(counted("lemma bound <= corollary bound at |delta| >= 1e14", order, big));
  return r;
}

SuiteResult modular_suite() {
  SuiteResult r{"modular", {}};
  UHPoint sqrt7 = point(0.5, 0), sqrt2 = point(0, 0);
  sqrt7.im = mp::sqrt(Real(7)) / 2;
  sqrt2.im = mp::sqrt(Real(2));
  const std::vector<std::pair<UHPoint, double>> known{
      {point(0, 1), 1728}, {point(0, 2), 287496}, {sqrt7, -3375}, {sqrt2, 8000}};
  std::size_t bad = 0;
  for (const auto& [tau, value] : known) {
    const EvalResult j = j_eval(tau);
    if (abs(j.value - Complex(value)) > Real("1e-20") * std::abs(value)) ++bad;
  }
  r.checks.push_back(counted("known values of j", bad, known.size()));

  const Real g = boost::math::tgamma(Real(1) / 4);
  const Real closed = 2 * 81 * mp::pow(g, 8) / mp::pow(pi(), 4);
  const Real jpp = abs(j_double_prime(i_point()).value);
  const Real rel = mp::abs(jpp - closed) / closed;
  r.checks.push_back({"|j''(i)| = 2 3^4 Gamma(1/4)^8 / pi^4", rel < Real("1e-10") && jpp / 4 >= 12413,
                      "relative difference " + to_decimal(rel, 3)});

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.0, 5.5);
  std::size_t growth = 0, sym = 0, inv = 0, sl2 = 0;
  const std::size_t n = 300;
  for (std::size_t k = 0; k < n; ++k) {
    UHPoint t = point(ux(rng), 0);
    t.im = mp::sqrt(std::max<Real>(Real(0.75), 1 - t.re * t.re)) + Real(uy(rng));
    if (growth_gap(t) > 2079) ++growth;
    const EvalResult a = j_eval(t);
    UHPoint mirror = t;
    mirror.re = -t.re;
    const EvalResult b = j_eval(mirror);
    if (abs(a.value - conj(b.value)) > a.error_bound + b.error_bound) ++sym;
    if (t.im < 4) {
      const UHPoint back = j_inverse(a.value);
      const EvalResult c = j_eval(back);
      if (abs(c.value - a.value) > pow2(-100) * std::max<Real>(1, abs(a.value))) ++inv;
    }
    UHPoint moved = t;
    moved.re += 3;
    const Complex w = Complex(-1) / moved.value();
    UHPoint image = point(0, 0);
    image.re = w.re;
    image.im = w.im;
    const Reduction red = reduce_to_F(image);
    const EvalResult d = j_eval(red.point);
    if (abs(d.value - a.value) > pow2(-90) * std::max<Real>(1, abs(a.value))) ++sl2;
  }
  r.checks.push_back(counted("||j| - e^{2 pi y}| <= 2079 on F", growth, n));
  r.checks.push_back(counted("j(-conj tau) = conj j(tau)", sym, n));
  r.checks.push_back(counted("j_inverse round trip", inv, n));
  r.checks.push_back(counted("SL2(Z) invariance through reduce_to_F", sl2, n));

  std::size_t mono = 0;
  Real prev_imag = -1e300, prev_arc = -1e300, prev_half = 1e300;
  for (int k = 0; k <= 60; ++k) {
    const Real s = Real(k) / 60;
    const Real yi = 1 + 3 * s;
    const Real th = pi() / 3 + s * pi() / 6;
    const Real yh = mp::sqrt(Real(3)) / 2 + s * (4 - mp::sqrt(Real(3)) / 2);
    UHPoint pi_ = point(0, 0), pa = point(0, 0), ph = point(0.5, 0);
    pi_.im = yi;
    pa.re = mp::cos(th);
    pa.im = mp::sin(th);
    ph.im = yh;
    const Real vi = j_eval(pi_).value.re, va = j_eval(pa).value.re, vh = j_eval(ph).value.re;
    if (k > 0 && (vi <= prev_imag || va <= prev_arc || vh >= prev_half)) ++mono;
    prev_imag = vi;
    prev_arc = va;
    prev_half = vh;
  }
  r.checks.push_back(counted("monotone along the three geodesics", mono, 61));

  const bool signs = sign_of_im_j(point(0.25, 1.25)) == ImSign::negative &&
                     sign_of_im_j(point(-0.25, 1.25)) == ImSign::positive && sign_of_im_j(point(0, 1.7)) == ImSign::zero;
  r.checks.push_back({"sign of Im j on F", signs, "(1+5i)/4, (-1+5i)/4, 1.7i"});

  const LinLogReport ll = verify_lin_log(point(0, 2), 300);
  r.checks.push_back({"local separation estimates at 2i", ll.quadratic_violations + ll.linear_violations == 0,
                      count_detail(ll.quadratic_violations + ll.linear_violations, ll.samples)});
  const LinLogReport lc = verify_lin_log_circle(i_point(), Real("1e-3"), 64);
  r.checks.push_back({"|j(tau) - 1728| >= 12413 |tau - i|^2 at radius 1e-3", lc.quadratic_violations == 0,
                      "min ratio " + std::to_string(lc.min_quadratic_ratio)});
  return r;
}

SuiteResult heights_suite() {
  SuiteResult r{"heights", {}};
  std::size_t trivial = 0, colmez = 0, prec = 0, total = 0;
  for (std::int64_t delta : discriminants_up_to(2000, 16)) {
    const FactoredDiscriminant d = validate_discriminant(delta);
    const HeightEstimate h = singular_modulus_height(d);
    ++total;
    const Real lo = h.value - h.error_bound;
    if (lo < lower_bound_trivial(d, 0) + log2_const()) ++trivial;
    if (lo < lower_bound_colmez(d, 0) + log2_const()) ++colmez;
    if (total % 20 == 0) {
      const HeightEstimate h64 = singular_modulus_height(d, 64);
      if (mp::abs(h64.value - h.value) > h64.error_bound + h.error_bound) ++prec;
    }
  }
  r.checks.push_back(counted("h(j) >= (pi |delta|^{1/2} - 0.01) / C(delta)", trivial, total));
  r.checks.push_back(counted("h(j) >= (3 / sqrt 5) log|delta| - 9.79", colmez, total));
  r.checks.push_back(counted("height stable from 64 to 128 bits", prec, total / 20));

  bool unit_ok = false;
  try {
    const Real phi = (1 + mp::sqrt(Real(5))) / 2;
    const Real h = unit_height_via_small_conjugates({Complex(phi), Complex(1 - phi)});
    unit_ok = mp::abs(h - mp::log(phi) / 2) < Real("1e-30");
    unit_height_via_small_conjugates({Complex(2.0), Complex(3.0)});
    unit_ok = false;
  } catch (const Error& e) {
    unit_ok = unit_ok && e.kind() == ErrorKind::NotUnitConsistent;
  }
  r.checks.push_back({"unit height consistency", unit_ok, "golden ratio accepted, {2, 3} rejected"});
  return r;
}

SuiteResult section4_suite() {
  SuiteResult r{"section4", {}};
  const Section4Report s50 = section4_functions(Real("1e50"));
  const Section4Report s15 = section4_functions(Real("1e15"));
  r.checks.push_back({"u0(1e50) < -1/10", s50.u0 < -0.1, std::to_string(s50.u0)});
  r.checks.push_back({"u1(1e50) u2(1e50) <= 0.4896", s50.u1 * s50.u2 <= 0.4896,
                      std::to_string(s50.u1 * s50.u2) + " with c1 = " + std::to_string(s50.c1)});
  r.checks.push_back({"u3(1e15) < 0.0674", s15.u3 && *s15.u3 < 0.0674, std::to_string(s15.u3.value_or(0))});
  mpz_class p50;
  mpz_ui_pow_ui(p50.get_mpz_t(), 10, 50);
  r.checks.push_back({"E |delta|^{-1/2} < |delta|^{-0.1} at 1e50", e_delta_gate(p50), "log space"});

  std::size_t rising = 0;
  std::optional<Section4Report> prev;
  for (int k = 0; k < 20; ++k) {
    const Real x = mp::pow(Real(10), Real(15) + Real(k) * 45 / 19);
    const Section4Report cur = section4_functions(x);
    if (prev && (cur.u0 >= prev->u0 || cur.u1 >= prev->u1 || cur.u2 >= prev->u2 || *cur.u3 >= *prev->u3)) ++rising;
    prev = cur;
  }
  r.checks.push_back(counted("u0..u3 decreasing on a log grid", rising, 19));

  PenAndM pm{mp::log(Real(20)), 0, true};
  const BoundReport b = final_delta_bound(1, 1, 0, pm);
  r.checks.push_back({"e^{15C} >= 1e50 and the three-term max", b.e15C_dominates && b.log_bound_e15C >= b.log_term_1e50,
                      "log e^{15C} = " + to_decimal(b.log_bound_e15C, 8)});
  return r;
}

const std::map<std::string, std::function<SuiteResult()>>& registry() {
  static const std::map<std::string, std::function<SuiteResult()>> r{
      {"forms", forms_suite},     {"counting", counting_suite}, {"modular", modular_suite},
      {"heights", heights_suite}, {"section4", section4_suite},
  };
  return r;
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"forms", "counting", "modular", "heights", "section4", "all"};
  return names;
}

std::vector<SuiteResult> run_suite(const std::string& name) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& n : {"forms", "counting", "modular", "heights", "section4"}) out.push_back(registry().at(n)());
    return out;
  }
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorKind::InvalidInput, "unknown suite '" + name + "'");
  out.push_back(it->second());
  return out;
}

}  // namespace moduli::verify
