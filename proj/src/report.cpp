#include "moduli/report.hpp"

#include <cmath>

namespace moduli::report {

namespace {

namespace mp = boost::multiprecision;

const Real& two53() {
  static const Real v = pow2(53);
  return v;
}

// Error of a value computed at working precision with no further analysis.
Real working_error(const Real& v) { return mp::abs(v) * pow2(-(kWorkingBits - 8)); }

}  // namespace

json real_field(const Real& value, const Real& error_bound) {
  json j;
  if (mp::abs(value) >= two53()) {
    j["value"] = to_decimal(value, 40);
  } else {
    j["value"] = to_double(value);
  }
  j["decimal"] = to_decimal(value, 40);
  j["error_bound"] = round_up(error_bound);
  return j;
}

json bound_field(double upper) {
  return {{"value", upper}, {"error_bound", 0.0}, {"rounding", "up"}};
}

json exact_field(std::uint64_t n) {
  json j{{"exact", true}};
  if (n >= (std::uint64_t{1} << 53)) {
    j["value"] = std::to_string(n);
  } else {
    j["value"] = n;
  }
  return j;
}

json exact_field(std::int64_t n) {
  json j{{"exact", true}};
  if (n >= (std::int64_t{1} << 53) || n <= -(std::int64_t{1} << 53)) {
    j["value"] = std::to_string(n);
  } else {
    j["value"] = n;
  }
  return j;
}

json exact_field(const mpz_class& n) {
  if (n.fits_slong_p()) return exact_field(static_cast<std::int64_t>(n.get_si()));
  return {{"value", n.get_str()}, {"exact", true}};
}

json exact_field(const mpq_class& q) {
  if (q.get_den() == 1) return exact_field(q.get_num());
  return {{"value", q.get_str()}, {"decimal", to_decimal(from_rational(q), 40)}, {"exact", true}};
}

json log_field(const Real& log_value, const Real& error_bound) {
  return {{"log_value", to_double(log_value)},
          {"decimal", to_decimal(log_value, 40)},
          {"error_bound", round_up(error_bound)}};
}

json complex_field(const Complex& z, const Real& error_bound) {
  return {{"re", real_field(z.re, error_bound)}, {"im", real_field(z.im, error_bound)}};
}

json point_field(const UHPoint& p) {
  const Real err = pow2(-p.precision_bits);
  return {{"re", real_field(p.re, err)}, {"im", real_field(p.im, err)}, {"precision_bits", p.precision_bits}};
}

json to_json(const FactoredDiscriminant& d) {
  return {{"delta", exact_field(d.delta)},
          {"fundamental", exact_field(d.fundamental)},
          {"conductor", exact_field(d.conductor)},
          {"modified_conductor", exact_field(d.modified_conductor)}};
}

json to_json(const QuadraticForm& q) { return {{"a", q.a}, {"b", q.b}, {"c", q.c}, {"exact", true}}; }

json to_json(const NeighborhoodQuery& q, const CountReport& r) {
  json j;
  j["discriminant"] = to_json(q.delta);
  j["xi"] = {{"re", exact_field(q.xi_re)}, {"im", exact_field(q.xi_im)}};
  j["eps"] = exact_field(q.eps);
  j["exact_count"] = exact_field(r.exact_count);
  j["lemma_bound"] = bound_field(r.lemma_bound);
  if (r.corollary_bound) {
    j["corollary_bound"] = bound_field(r.corollary_bound->value);
    j["corollary_certified"] = r.corollary_bound->certified;
  } else {
    j["corollary_bound"] = nullptr;
  }
  j["a_interval"] = {real_field(Real(r.a_interval_lo), Real(std::abs(r.a_interval_lo)) * pow2(-50)),
                     real_field(Real(r.a_interval_hi), Real(std::abs(r.a_interval_hi)) * pow2(-50))};
  j["certified"] = r.certified;
  if (!r.certified) j["non_certified_reason"] = "eps >= 1/4";
  return j;
}

json to_json(const HeightEstimate& h) {
  return {{"height", real_field(h.value, h.error_bound)}, {"terms", h.terms}};
}

json to_json(const SeparationData& s) {
  return {{"A", real_field(s.A, working_error(s.A) + s.A * pow2(-100))},
          {"B", real_field(s.B, working_error(s.B) + s.B * pow2(-100))},
          {"delta", real_field(s.delta_sep, working_error(s.delta_sep) + s.delta_sep * pow2(-100))},
          {"analytic_radius", real_field(s.analytic_radius, working_error(s.analytic_radius) + s.analytic_radius * pow2(-100))},
          {"geodesic_half_distance",
           real_field(s.geodesic_half_distance, working_error(s.geodesic_half_distance))},
          {"c_xi", real_field(s.c_xi, working_error(s.c_xi) + s.c_xi * pow2(-100))},
          {"case", to_string(s.case_tag)},
          {"mirrored", s.mirrored}};
}

json to_json(const AlphaProfile& p) {
  json j;
  j["min_poly"] = format_poly(p.min_poly);
  j["degree"] = exact_field(static_cast<std::int64_t>(p.degree));
  j["h_alpha"] = real_field(p.h_alpha, working_error(p.h_alpha));
  j["h_curve"] = real_field(p.h_curve, working_error(p.h_curve));
  j["h_model"] = real_field(p.h_model, working_error(p.h_model));
  j["model"] = p.model;
  j["algebraic_integer"] = p.algebraic_integer;
  j["singular_modulus_scan_bound"] = exact_field(p.singular_scan_bound);
  json embs = json::array();
  for (const Embedding& e : p.embeddings) {
    json je;
    je["alpha"] = complex_field(e.alpha, abs(e.alpha) * pow2(-(kWorkingBits - 16)));
    je["xi"] = point_field(e.xi);
    je["j_residual"] = real_field(abs(e.j_residual), pow2(-e.xi.precision_bits));
    je["omega1"] = complex_field(e.omega1, abs(e.omega1) * pow2(-100));
    je["omega2"] = complex_field(e.omega2, abs(e.omega2) * pow2(-100));
    je["period_source"] = e.period_source;
    je["separation"] = to_json(e.separation);
    embs.push_back(je);
  }
  j["embeddings"] = embs;
  return j;
}

json to_json(const BoundReport& b) {
  const Real rel = pow2(-100);
  json j;
  j["c2"] = {{"integer_part", exact_field(b.c2.integer_part)},
             {"h", real_field(b.c2.h, b.c2.h * rel)},
             {"value", real_field(b.c2.value, b.c2.value * rel)},
             {"log", log_field(b.c2.log_value, rel)}};
  j["pen"] = real_field(b.pm.pen, b.pm.pen * rel);
  j["M"] = real_field(b.pm.M, b.pm.M * rel);
  j["pen_at_least_log12"] = b.pm.pen_at_least_log12;
  j["h_alpha"] = real_field(b.h_alpha, b.h_alpha * rel);
  j["C_prime"] = real_field(b.C_prime, b.C_prime * rel);
  j["C_route1"] = {{"formula", "4 D c2 + 5 Pen + 4 M + h(alpha) + log 2 + 0.01"},
                   {"value", real_field(b.C_route1, b.C_route1 * rel)}};
  j["C_route2"] = {{"formula", "2 D c2 + 6 Pen + 4 M + h(alpha) + log 2 + 0.01"},
                   {"value", real_field(b.C_route2, b.C_route2 * rel)}};
  j["C_final"] = real_field(b.C_final, b.C_final * rel);
  j["bound_e15C"] = log_field(b.log_bound_e15C, b.log_bound_e15C * rel);
  j["bound_max_form"] = {
      {"log_10pow50", log_field(b.log_term_1e50, b.log_term_1e50 * rel)},
      {"log_exp_C_term", log_field(b.log_term_C, b.log_term_C * rel)},
      {"log_c2_term_2pi", log_field(b.log_term_c2_2pi, b.log_term_c2_2pi * rel)},
      {"log_c2_term_4pi", log_field(b.log_term_c2_4pi, b.log_term_c2_4pi * rel)},
      {"log_max", log_field(b.log_bound_max, b.log_bound_max * rel)}};
  j["e15C_dominates_max_form"] = b.e15C_dominates;
  return j;
}

json to_json(const Section4Report& s) {
  json j;
  j["x"] = real_field(s.x, 0);
  j["c1"] = {{"value", s.c1}, {"exact", true}};
  j["u0"] = bound_field(s.u0);
  j["u1"] = bound_field(s.u1);
  j["u2"] = bound_field(s.u2);
  if (s.u3) {
    j["u3"] = bound_field(*s.u3);
  } else {
    j["u3"] = nullptr;
  }
  j["L_lower"] = {{"value", s.L_lower}, {"error_bound", 0.0}, {"rounding", "down"}};
  j["log_E_over_sqrt_ratio"] = bound_field(s.log_E_ratio);
  return j;
}

}  // namespace moduli::report
