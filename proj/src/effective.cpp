#include "moduli/effective.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <limits>
#include <random>

#include "moduli/arith.hpp"
#include "moduli/error.hpp"
#include "moduli/heights.hpp"

namespace moduli {

namespace {

namespace mp = boost::multiprecision;

Real hypot2(const Real& a, const Real& b) { return mp::sqrt(a * a + b * b); }

Real log_abs_delta(const FactoredDiscriminant& d) {
  return mp::log(from_integer(mpz_class(std::to_string(d.abs_delta()))));
}

UHPoint make_point(const Real& re, const Real& im, int prec) {
  UHPoint p;
  p.re = re;
  p.im = im;
  p.precision_bits = prec;
  return p;
}

// Projective height of (1 : g2 : g3) for rational g2, g3.
Real rational_projective_height(const mpq_class& g2, const mpq_class& g3) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), g2.get_den_mpz_t(), g3.get_den_mpz_t());
  const mpz_class a = l;
  const mpz_class b = g2.get_num() * (l / g2.get_den());
  const mpz_class c = g3.get_num() * (l / g3.get_den());
  const mpz_class g = gcd(gcd(a, b), c);
  mpz_class m = abs(a);
  m = std::max(m, mpz_class(abs(b)));
  m = std::max(m, mpz_class(abs(c)));
  return mp::log(from_integer(m / g));
}

}  // namespace

const char* to_string(SeparationCase c) {
  switch (c) {
    case SeparationCase::boundary_nonI: return "boundary_nonI";
    case SeparationCase::point_i: return "point_i";
    case SeparationCase::interior: return "interior";
  }
  return "?";
}

SeparationData separation_constants(const UHPoint& xi, const Complex& j_xi, int prec) {
  if (!make_point(xi.re, xi.im, prec / 2).in_closed_fundamental_domain()) {
    throw Error(ErrorKind::DomainError, "xi must lie in the closed fundamental domain");
  }
  const Real slack = pow2(-prec / 2);
  SeparationData s;
  s.mirrored = xi.re < -slack;
  const Real x = mp::abs(xi.re);
  const Real& y = xi.im;
  const UHPoint p = make_point(x, y, prec);

  const Real half = Real(0.5);
  const Real sqrt3_2 = mp::sqrt(Real(3)) / 2;
  const bool on_imag = x < slack && y >= 1 - slack;
  const bool on_half = mp::abs(x - half) < slack;
  const bool on_arc = mp::abs(x * x + y * y - 1) < slack;
  if (on_half && on_arc) throw Error(ErrorKind::CornerPoint, "xi is zeta or zeta^2");
  const bool is_i = on_imag && on_arc;

  s.A = is_i ? abs(j_double_prime(p, prec).value) : abs(j_prime(p, prec).value);
  s.B = 400000 * std::max<Real>(1, abs(j_xi));
  s.analytic_radius = s.A / (12 * s.A + 108 * s.B);

  const Real d_imag = y >= 1 ? x : hypot2(x, 1 - y);
  const Real d_half = y >= sqrt3_2 ? mp::abs(x - half) : hypot2(x - half, y - sqrt3_2);
  const Real theta = mp::atan2(y, x);
  Real d_arc;
  if (theta >= pi() / 3 && theta <= pi() / 2) {
    d_arc = mp::abs(hypot2(x, y) - 1);
  } else {
    d_arc = std::min(hypot2(x, y - 1), hypot2(x - half, y - sqrt3_2));
  }
  Real nearest = std::numeric_limits<double>::infinity();
  if (!on_imag) nearest = std::min(nearest, d_imag);
  if (!on_half) nearest = std::min(nearest, d_half);
  if (!on_arc) nearest = std::min(nearest, d_arc);
  s.geodesic_half_distance = nearest / 2;
  s.delta_sep = std::min(s.analytic_radius, s.geodesic_half_distance);

  if (is_i) {
    s.case_tag = SeparationCase::point_i;
    s.c_xi = s.A * s.delta_sep * s.delta_sep / 4;
  } else if (on_imag || on_half || on_arc) {
    s.case_tag = SeparationCase::boundary_nonI;
    s.c_xi = s.A * s.delta_sep / 2;
  } else {
    s.case_tag = SeparationCase::interior;
    s.c_xi = std::min<Real>(mp::abs(j_xi.im), s.A * s.delta_sep / 2);
  }
  return s;
}

std::vector<UHPoint> t_orbit(const UHPoint& xi) {
  const int check_bits = std::max(8, xi.precision_bits / 2);
  const Real same = pow2(-check_bits);
  const Complex z = xi.value();
  const std::array<Complex, 4> images{z, z + Complex(1), z - Complex(1), Complex(-1) / z};
  std::vector<UHPoint> out;
  for (const Complex& w : images) {
    UHPoint p = make_point(w.re, w.im, check_bits);
    if (!p.in_closed_fundamental_domain()) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const UHPoint& q) { return abs(q.value() - w) < same; });
    if (duplicate) continue;
    p.precision_bits = xi.precision_bits;
    out.push_back(p);
  }
  return out;
}

C2Constant c2_constant(int degree, const Real& h_model) {
  if (degree < 1) throw Error(ErrorKind::DomainError, "degree must be >= 1");
  if (h_model < 1) throw Error(ErrorKind::DomainError, "h must be >= 1");
  mpz_class p2, p3, p5, pd;
  mpz_ui_pow_ui(p2.get_mpz_t(), 2, 50);
  mpz_ui_pow_ui(p3.get_mpz_t(), 3, 43);
  mpz_ui_pow_ui(p5.get_mpz_t(), 5, 18);
  mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(degree), 6);
  C2Constant c;
  c.integer_part = p2 * p3 * p5 * pd;
  c.h = h_model;
  const Real base = from_integer(c.integer_part);
  c.value = base * h_model * h_model;
  c.log_value = mp::log(base) + 2 * mp::log(h_model);
  return c;
}

std::optional<std::int64_t> singular_modulus_match(const IntPoly& min_poly, std::int64_t bound) {
  const IntPoly p = primitive_part(min_poly);
  const int n = degree(p);
  if (p[static_cast<std::size_t>(n)] != 1) return std::nullopt;  // not an algebraic integer
  const Complex alpha = poly_roots(p).front();
  const Real tol = Real("1e-20") * std::max<Real>(1, abs(alpha));
  for (std::int64_t m = 3; m <= bound; ++m) {
    if (m % 4 != 0 && m % 4 != 3) continue;
    const FactoredDiscriminant d = validate_discriminant(-m);
    if (class_number(d) != static_cast<std::uint64_t>(n)) continue;
    for (const EvalResult& j : singular_moduli(d, 64)) {
      if (abs(j.value - alpha) <= tol + j.error_bound) return -m;
    }
  }
  return std::nullopt;
}

AlphaProfile build_profile(const IntPoly& min_poly, const ProfileOptions& options) {
  const int prec = options.prec;
  AlphaProfile prof;
  prof.min_poly = primitive_part(min_poly);
  prof.degree = degree(prof.min_poly);
  const auto n = static_cast<std::size_t>(prof.degree);
  prof.h_alpha = height_from_min_poly(prof.min_poly);
  prof.algebraic_integer = prof.min_poly[n] == 1;
  prof.singular_scan_bound = options.singular_scan_bound;
  if (auto hit = singular_modulus_match(prof.min_poly, options.singular_scan_bound)) {
    throw Error(ErrorKind::DomainError, "alpha is the singular modulus of discriminant " + std::to_string(*hit));
  }
  if (options.periods && options.periods->size() != n) {
    throw Error(ErrorKind::MissingEmbeddingData, "expected one period pair per embedding");
  }
  if ((options.curve || options.xi) && n != 1) {
    throw Error(ErrorKind::InvalidInput, "--curve and --xi are only supported for rational alpha");
  }

  std::vector<Complex> roots = poly_roots(prof.min_poly);
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });

  if (options.curve) {
    prof.model = "user curve";
    prof.h_curve = rational_projective_height(options.curve->first, options.curve->second);
  } else {
    prof.model = "y^2 = 4x^3 - t x - t with t = 27 alpha / (alpha - 1728)";
    prof.h_curve = height_from_min_poly(mobius_transform(prof.min_poly, 27, 0, 1, -1728));
  }
  prof.h_model = std::max<Real>(1, std::max(prof.h_curve, prof.h_alpha));

  prof.embeddings.resize(n);
  std::vector<std::exception_ptr> failures(n);
  const Real match_tol = pow2(-std::min(prec / 2, 60));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      Embedding& e = prof.embeddings[k];
      e.alpha = roots[k];
      if (options.xi) {
        e.xi = reduce_to_F(*options.xi).point;
        e.xi.precision_bits = prec;
      } else {
        e.xi = j_inverse(e.alpha, prec);
      }
      const EvalResult jx = j_eval(e.xi, prec);
      e.j_residual = jx.value - e.alpha;
      if (options.xi && abs(e.j_residual) > match_tol * std::max<Real>(1, abs(e.alpha))) {
        throw Error(ErrorKind::InvalidInput, "j(xi) does not match alpha");
      }
      if (options.periods) {
        const auto& [w1, w2] = (*options.periods)[k];
        PeriodLattice l{w1, w2, e.xi, false};
        l = match_ratio(l, e.xi, Real("1e-10"));
        e.omega1 = l.omega1;
        e.omega2 = l.omega2;
        e.period_source = "user";
      } else {
        Complex g2, g3;
        if (options.curve) {
          g2 = Complex(from_rational(options.curve->first));
          g3 = Complex(from_rational(options.curve->second));
          if (abs(curve_j(g2, g3) - e.alpha) > match_tol * std::max<Real>(1, abs(e.alpha))) {
            throw Error(ErrorKind::InvalidInput, "the curve's j-invariant is not alpha");
          }
        } else {
          g2 = Complex(27) * e.alpha / (e.alpha - Complex(1728));
          g3 = g2;
        }
        const PeriodLattice l = match_ratio(compute_periods(g2, g3, prec), e.xi, match_tol);
        e.omega1 = l.omega1;
        e.omega2 = l.omega2;
        e.period_source = l.from_agm ? "agm" : "eisenstein";
      }
      e.separation = separation_constants(e.xi, jx.value, prec);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return prof;
}

Real penalty_from_c(const std::vector<Real>& c_values) {
  if (c_values.empty()) throw Error(ErrorKind::MissingEmbeddingData, "no embeddings");
  Real m = 1;
  for (const Real& c : c_values) {
    if (c <= 0) throw Error(ErrorKind::DomainError, "c(xi) must be positive");
    m = std::max<Real>(m, 1 / c);
  }
  return mp::log(m);
}

Real period_term(const std::vector<std::pair<Complex, Complex>>& periods) {
  if (periods.empty()) throw Error(ErrorKind::MissingEmbeddingData, "no embeddings");
  Real m = 1;
  for (const auto& [w1, w2] : periods) m = std::max(m, std::max(abs(w1), abs(w2)));
  return mp::log(m);
}

PenAndM pen_and_M(const AlphaProfile& profile) {
  if (profile.embeddings.empty() || profile.embeddings.size() != static_cast<std::size_t>(profile.degree)) {
    throw Error(ErrorKind::MissingEmbeddingData, "profile lacks embedding data");
  }
  std::vector<Real> cs;
  std::vector<std::pair<Complex, Complex>> ws;
  for (const Embedding& e : profile.embeddings) {
    cs.push_back(e.separation.c_xi);
    ws.emplace_back(e.omega1, e.omega2);
  }
  PenAndM out;
  out.pen = penalty_from_c(cs);
  out.M = period_term(ws);
  out.pen_at_least_log12 = out.pen >= mp::log(Real(12));
  return out;
}

HeightUpperBound height_upper_bound(const FactoredDiscriminant& d, std::uint64_t class_no, int degree,
                                    const C2Constant& c2, const PenAndM& pm, const mpq_class& eps,
                                    const std::vector<std::uint64_t>& counts, const Real& h_model) {
  if (eps <= 0) throw Error(ErrorKind::DomainError, "eps must be positive");
  if (class_no == 0) throw Error(ErrorKind::DomainError, "class number must be positive");
  Real sum = 0;
  for (std::uint64_t c : counts) sum += Real(static_cast<double>(c));
  const Real L = log_abs_delta(d);
  HeightUpperBound out;
  out.count_term = c2.value * sum / (16 * Real(static_cast<double>(class_no))) * mp::pow(L, 4);
  out.value = out.count_term + 5 * pm.pen + 4 * pm.M + mp::abs(mp::log(from_rational(eps)));
  out.log_value = mp::log(out.value);
  out.hypotheses_met = eps < mpq_class(1, 4) && L >= mp::log(Real(2 * degree)) && L >= 12 * pi() * h_model;
  return out;
}

HeightUpperBound height_upper_bound(const FactoredDiscriminant& d, const AlphaProfile& profile, const mpq_class& eps) {
  std::vector<std::uint64_t> counts;
  for (const Embedding& e : profile.embeddings) {
    for (const UHPoint& center : t_orbit(e.xi)) {
      counts.push_back(cm_count(NeighborhoodQuery::make(d, center, from_rational(eps))));
    }
  }
  return height_upper_bound(d, class_number(d), profile.degree, c2_constant(profile.degree, profile.h_model),
                            pen_and_M(profile), eps, counts, profile.h_model);
}

std::vector<ChainStep> corollary_chain(const FactoredDiscriminant& d, std::uint64_t class_no, int degree,
                                       const C2Constant& c2, const PenAndM& pm) {
  const Real abs_delta = from_integer(mpz_class(std::to_string(d.abs_delta())));
  const Real s = mp::sqrt(abs_delta);
  const Real L = mp::log(abs_delta);
  const Real L4 = mp::pow(L, 4);
  const Real ll = mp::log(mp::log(s));
  const Real F(static_cast<double>(arith::big_F(d)));
  const Real E = F * L4;
  const Real C(static_cast<double>(class_no));
  const Real eps = C / (E * s);
  const Real Dc2 = Real(degree) * c2.value;
  const Real tail = 5 * pm.pen + 4 * pm.M;
  const Real logs = mp::log(E * s / C);
  const Real main = Dc2 * E / (2 * C);

  std::vector<ChainStep> steps;
  steps.push_back({"proposition_with_corollary_counts",
                   Dc2 * 4 * F * (32 * s * eps * eps * ll + 11 * s * eps + 2) / (16 * C) * L4 + tail + mp::abs(mp::log(eps))});
  steps.push_back({"expanded", Dc2 * E * 128 * s * ll / (16 * C) * eps * eps + Dc2 * E * 44 * s / (16 * C) * eps + main +
                                   tail + logs});
  steps.push_back({"simplified", Dc2 * 8 * ll / F * C / (L4 * s) + 3 * Dc2 + main + tail + logs});
  steps.push_back({"fbound", Dc2 / 2 * C / (L4 * s) + 3 * Dc2 + main + tail + logs});
  steps.push_back({"cbound", Dc2 / (2 * pi()) * s * (2 + L) / (L4 * s) + 3 * Dc2 + main + tail + logs});
  steps.push_back({"cbound_simplified", Dc2 / (2 * pi()) * (2 + L) / L4 + 3 * Dc2 + main + tail + logs});
  steps.push_back({"at_1e14", Dc2 / (2 * pi()) * 35 / mp::pow(Real(32), 4) + 3 * Dc2 + main + tail + logs});
  steps.push_back({"corollary", main + logs + 4 * Dc2 + tail});
  return steps;
}

Section4Report section4_functions(const Real& x, double c1) {
  if (x < Real("1e10")) throw Error(ErrorKind::DomainError, "the auxiliary functions need x >= 10^10");
  Section4Report r;
  r.x = x;
  r.c1 = c1;
  const Real lx = mp::log(x);
  const Real llx = mp::log(lx);
  const Real k = 3 / mp::sqrt(Real(5));
  r.u0 = round_up(1 / llx + 4 * llx / lx - Real(0.5));
  r.u1 = round_up(log2_const() / (llx - Real(c1) - log2_const()) + 4 * llx / lx);
  r.u2 = round_up(1 / (k - 10 / lx));
  const Real L = k * lx - 10;
  r.L_lower = round_down(L);
  if (x >= Real("1e15")) r.u3 = round_up(mp::log(L / pi()) / L);
  const mpz_class n = to_rational(mp::floor(x)).get_num();
  r.log_E_ratio = round_up((arith::log_big_E(n) - lx / 2) / lx);
  return r;
}

bool e_delta_gate(const mpz_class& abs_delta) {
  const Real lx = mp::log(from_integer(abs_delta));
  return arith::log_big_E(abs_delta) - lx / 2 < -lx / 10;
}

BoundReport final_delta_bound(int degree, const Real& h_model, const Real& h_alpha, const PenAndM& pm) {
  BoundReport r;
  r.c2 = c2_constant(degree, h_model);
  r.pm = pm;
  r.degree = degree;
  r.h_alpha = h_alpha;
  const Real Dc2 = Real(degree) * r.c2.value;
  const Real extra = h_alpha + log2_const() + Real("0.01");
  r.C_prime = 4 * Dc2 + 5 * pm.pen + 4 * pm.M;
  r.C_route1 = r.C_prime + extra;
  r.C_route2 = 2 * Dc2 + 6 * pm.pen + 4 * pm.M + extra;
  r.C_final = std::max(r.C_route1, r.C_route2);
  r.log_bound_e15C = 15 * r.C_final;
  r.log_term_1e50 = 50 * mp::log(Real(10));
  r.log_term_C = 10 * mp::sqrt(Real(5)) / 3 * (r.C_final + 1);
  r.log_term_c2_2pi = 10 * mp::log(10 * Dc2 / (2 * pi()));
  r.log_term_c2_4pi = 10 * mp::log(10 * Dc2 / (4 * pi()));
  r.log_bound_max = std::max({r.log_term_1e50, r.log_term_C, r.log_term_c2_2pi, r.log_term_c2_4pi});
  r.e15C_dominates = r.log_bound_e15C >= r.log_bound_max;
  return r;
}

BoundReport final_delta_bound(const AlphaProfile& profile) {
  return final_delta_bound(profile.degree, profile.h_model, profile.h_alpha, pen_and_M(profile));
}

namespace {

struct LinLogCheck {
  const UHPoint& xi;
  Complex j_xi;
  SeparationData sep;
  int prec;
  LinLogReport report;

  void check(const Real& rho, const Real& theta, bool quadratic, bool linear) {
    if (rho == 0) return;
    const Complex tau = xi.value() + polar(rho, theta);
    const Real diff = abs(j_eval(make_point(tau.re, tau.im, prec), prec).value - j_xi);
    ++report.samples;
    if (quadratic) {
      const Real ratio = diff / (sep.A / 4 * rho * rho);
      if (ratio < 1) ++report.quadratic_violations;
      report.min_quadratic_ratio = std::min(report.min_quadratic_ratio, to_double(ratio));
    }
    if (linear) {
      const Real ratio = diff / (sep.A / 2 * rho);
      if (ratio < 1) ++report.linear_violations;
      report.min_linear_ratio = std::min(report.min_linear_ratio, to_double(ratio));
    }
  }
};

LinLogCheck make_check(const UHPoint& xi, int prec) {
  const Complex j_xi = j_eval(xi, prec).value;
  LinLogCheck c{xi, j_xi, separation_constants(xi, j_xi, prec), prec, {}};
  c.report.min_quadratic_ratio = std::numeric_limits<double>::infinity();
  c.report.min_linear_ratio = std::numeric_limits<double>::infinity();
  c.report.separation = c.sep;
  return c;
}

}  // namespace

LinLogReport verify_lin_log(const UHPoint& xi, std::size_t samples, std::uint64_t seed, int prec) {
  LinLogCheck c = make_check(xi, prec);
  const bool at_i = c.sep.case_tag == SeparationCase::point_i;
  const Real r_quad = c.sep.analytic_radius;
  const Real r_lin = c.sep.A / (6 * c.sep.A + 18 * c.sep.B);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const Real theta = 2 * pi() * Real(unit(rng));
    const Real u(unit(rng));
    c.check(r_quad * mp::sqrt(u), theta, true, false);
    if (!at_i) c.check(r_lin * mp::sqrt(u), theta, false, true);
  }
  return c.report;
}

LinLogReport verify_lin_log_circle(const UHPoint& xi, const Real& radius, std::size_t samples, int prec) {
  LinLogCheck c = make_check(xi, prec);
  const bool linear = c.sep.case_tag != SeparationCase::point_i && radius <= c.sep.A / (6 * c.sep.A + 18 * c.sep.B);
  for (std::size_t k = 0; k < samples; ++k) {
    c.check(radius, 2 * pi() * Real(static_cast<double>(k)) / Real(static_cast<double>(samples)), true, linear);
  }
  return c.report;
}

}  // namespace moduli
