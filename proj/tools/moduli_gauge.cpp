// moduli-gauge: command-line front end for the moduli library.
#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "moduli/arith.hpp"
#include "moduli/counting.hpp"
#include "moduli/effective.hpp"
#include "moduli/error.hpp"
#include "moduli/heights.hpp"
#include "moduli/modular_j.hpp"
#include "moduli/poly.hpp"
#include "moduli/report.hpp"
#include "moduli/verify.hpp"

namespace {

using namespace moduli;
using report::json;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::pair<mpq_class, mpq_class> parse_pair(const std::string& text, const char* what) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be given as re,im");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

Complex to_complex(const std::pair<mpq_class, mpq_class>& p) {
  return {from_rational(p.first), from_rational(p.second)};
}

UHPoint to_point(const std::pair<mpq_class, mpq_class>& p, int prec) {
  UHPoint t;
  t.re = from_rational(p.first);
  t.im = from_rational(p.second);
  t.precision_bits = prec;
  return t;
}

std::int64_t parse_disc(const std::string& text) {
  const mpq_class q = parse_rational(text);
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
    throw Error(ErrorKind::InvalidInput, "discriminant must be an integer of at most 63 bits");
  }
  return q.get_num().get_si();
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Options {
  int precision = kDefaultPrecisionBits;
  int threads = 0;

  std::string disc;
  std::string format = "json";
  std::string range;
  std::string table;
  std::string xi;
  std::string eps;
  std::string tau;
  int derivative = 0;
  bool inverse = false;
  std::string value;
  std::int64_t alpha = 0;
  bool alpha_set = false;
  std::string alpha_poly;
  std::string periods;
  std::string curve;
  std::int64_t scan_bound = 10000;
  std::string suite = "all";
};

int run_forms(const Options& o) {
  const FactoredDiscriminant d = validate_discriminant(parse_disc(o.disc));
  const auto forms = enumerate_reduced_forms(d);
  if (o.format == "text") {
    std::cout << "discriminant " << d.delta << " class number " << forms.size() << '\n';
    for (const auto& f : forms) std::cout << f.a << ' ' << f.b << ' ' << f.c << '\n';
    return 0;
  }
  if (o.format == "csv") {
    std::cout << "a,b,c\n";
    for (const auto& f : forms) std::cout << f.a << ',' << f.b << ',' << f.c << '\n';
    return 0;
  }
  json j;
  j["discriminant"] = report::to_json(d);
  j["class_number"] = report::exact_field(static_cast<std::uint64_t>(forms.size()));
  j["forms"] = json::array();
  for (const auto& f : forms) j["forms"].push_back(report::to_json(f));
  emit(j);
  return 0;
}

int run_classno(const Options& o) {
  const auto parts = split(o.range, ':');
  if (parts.size() != 2) throw Error(ErrorKind::InvalidInput, "--range must be lo:hi");
  std::int64_t lo = std::llabs(parse_disc(parts[0]));
  std::int64_t hi = std::llabs(parse_disc(parts[1]));
  if (lo > hi) std::swap(lo, hi);
  if (hi - lo > 10000000) throw Error(ErrorKind::InvalidInput, "--range spans more than 10^7 values");
  std::ofstream file;
  if (!o.table.empty()) {
    file.open(o.table);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot open " + o.table);
  }
  std::ostream& out = o.table.empty() ? std::cout : file;
  out << "delta,fundamental,conductor,class_number\n";
  for (std::int64_t m = std::max<std::int64_t>(lo, 3); m <= hi; ++m) {
    if (m % 4 != 0 && m % 4 != 3) continue;
    const FactoredDiscriminant d = validate_discriminant(-m);
    out << d.delta << ',' << d.fundamental << ',' << d.conductor << ',' << class_number(d) << '\n';
  }
  return 0;
}

int run_count(const Options& o) {
  const FactoredDiscriminant d = validate_discriminant(parse_disc(o.disc));
  const auto [re, im] = parse_pair(o.xi, "--xi");
  NeighborhoodQuery q{d, re, im, parse_rational(o.eps)};
  validate(q);
  emit(report::to_json(q, count_report(q, true)));
  return 0;
}

int run_j(const Options& o) {
  json j;
  if (o.inverse) {
    const Complex z = to_complex(parse_pair(o.value, "--value"));
    const UHPoint tau = j_inverse(z, o.precision);
    const EvalResult check = j_eval(tau, o.precision);
    j["value"] = report::complex_field(z, 0);
    j["tau"] = report::point_field(tau);
    j["residual"] = report::real_field(abs(check.value - z), check.error_bound);
  } else {
    const UHPoint tau = to_point(parse_pair(o.tau, "--tau"), o.precision);
    const EvalResult r = j_derivative(tau, o.derivative, o.precision);
    j["tau"] = report::point_field(tau);
    j["derivative"] = o.derivative;
    j["value"] = report::complex_field(r.value, r.error_bound);
    j["terms"] = r.terms;
    j["precision_bits"] = o.precision;
  }
  emit(j);
  return 0;
}

int run_height(const Options& o) {
  const FactoredDiscriminant d = validate_discriminant(parse_disc(o.disc));
  const HeightEstimate h = singular_modulus_height(d, o.precision);
  json j;
  j["discriminant"] = report::to_json(d);
  j["class_number"] = report::exact_field(static_cast<std::uint64_t>(h.terms));
  j["singular_modulus_height"] = report::to_json(h);
  const Real h_alpha = o.alpha_set ? boost::multiprecision::log(std::max<Real>(1, Real(std::llabs(o.alpha)))) : Real(0);
  j["alpha"] = o.alpha_set ? report::exact_field(o.alpha) : json(nullptr);
  j["h_alpha"] = report::real_field(h_alpha, h_alpha * pow2(-150));
  const Real rounding = pow2(-140);
  if (d.abs_delta() >= 16) {
    j["lower_bound_trivial"] = report::real_field(lower_bound_trivial(d, h_alpha), rounding);
  } else {
    j["lower_bound_trivial"] = nullptr;
    j["lower_bound_trivial_note"] = "needs |delta| >= 16";
  }
  j["lower_bound_colmez"] = report::real_field(lower_bound_colmez(d, h_alpha), rounding);
  if (o.alpha_set) j["shifted_height"] = report::to_json(shifted_height(d, o.alpha, o.precision));
  emit(j);
  return 0;
}

int run_effective(const Options& o) {
  ProfileOptions po;
  po.prec = o.precision;
  po.singular_scan_bound = o.scan_bound;
  if (!o.periods.empty()) {
    std::vector<std::pair<Complex, Complex>> list;
    for (const auto& item : split(o.periods, ';')) {
      const auto v = split(item, ',');
      if (v.size() != 4) throw Error(ErrorKind::InvalidInput, "--periods entries are w1re,w1im,w2re,w2im");
      list.emplace_back(Complex(from_rational(parse_rational(v[0])), from_rational(parse_rational(v[1]))),
                        Complex(from_rational(parse_rational(v[2])), from_rational(parse_rational(v[3]))));
    }
    po.periods = list;
  }
  if (!o.curve.empty()) po.curve = parse_pair(o.curve, "--curve");
  if (!o.xi.empty()) po.xi = to_point(parse_pair(o.xi, "--xi"), o.precision);

  const AlphaProfile profile = build_profile(parse_poly(o.alpha_poly), po);
  const BoundReport bound = final_delta_bound(profile);
  json j;
  j["profile"] = report::to_json(profile);
  j["bound"] = report::to_json(bound);
  j["certified"] = bound.pm.pen_at_least_log12 && bound.e15C_dominates;
  if (!bound.pm.pen_at_least_log12) j["non_certified_reason"] = "Pen < log 12";
  if (!o.disc.empty()) {
    const FactoredDiscriminant d = validate_discriminant(parse_disc(o.disc));
    const mpq_class eps = o.eps.empty() ? mpq_class(1, 1000) : parse_rational(o.eps);
    const HeightUpperBound hub = height_upper_bound(d, profile, eps);
    j["height_upper_bound"] = {{"discriminant", report::to_json(d)},
                               {"eps", report::exact_field(eps)},
                               {"bound", report::real_field(hub.value, hub.value * pow2(-100))},
                               {"count_term", report::real_field(hub.count_term, hub.count_term * pow2(-100))},
                               {"hypotheses_met", hub.hypotheses_met}};
  }
  emit(j);
  return 0;
}

int run_verify(const Options& o) {
  const auto results = verify::run_suite(o.suite);
  json j = json::array();
  bool ok = true;
  for (const auto& r : results) {
    json s{{"suite", r.suite}, {"passed", r.passed()}, {"checks", json::array()}};
    for (const auto& c : r.checks) s["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    ok = ok && r.passed();
    j.push_back(s);
  }
  emit(j);
  return ok ? 0 : kExitViolation;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonDiscriminant:
    case ErrorKind::DomainError:
    case ErrorKind::InvalidInput:
    case ErrorKind::CornerPoint:
    case ErrorKind::PrecisionUnreachable:
    case ErrorKind::MissingEmbeddingData:
    case ErrorKind::SingularCurve:
      return kExitUsage;
    default:
      return kExitViolation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("MODULI_GAUGE_PRECISION")) {
    try {
      o.precision = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "MODULI_GAUGE_PRECISION must be an integer\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Effective-finiteness toolkit for singular moduli"};
  app.require_subcommand(1);
  app.add_option("--precision", o.precision, "target precision in bits")->check(CLI::Range(8, kMaxPrecisionBits));
  app.add_option("--threads", o.threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

  auto* forms = app.add_subcommand("forms", "reduced forms and class number");
  forms->add_option("--disc", o.disc)->required();
  forms->add_option("--format", o.format)->check(CLI::IsMember({"json", "text", "csv"}));

  auto* classno = app.add_subcommand("classno", "class-number table (CSV)");
  classno->add_option("--range", o.range, "lo:hi in |delta|")->required();
  classno->add_option("--table", o.table, "write the CSV here instead of stdout");

  auto* count = app.add_subcommand("count", "exact neighbourhood count and its bounds");
  count->add_option("--disc", o.disc)->required();
  count->add_option("--xi", o.xi, "re,im")->required();
  count->add_option("--eps", o.eps)->required();

  auto* jcmd = app.add_subcommand("j", "evaluate or invert j");
  jcmd->add_option("--tau", o.tau, "re,im");
  jcmd->add_option("--derivative", o.derivative)->check(CLI::IsMember({0, 1, 2}));
  jcmd->add_flag("--inverse", o.inverse);
  jcmd->add_option("--value", o.value, "re,im");

  auto* height = app.add_subcommand("height", "height of a singular modulus and the lower bounds");
  height->add_option("--disc", o.disc)->required();
  height->add_option("--alpha", o.alpha, "rational integer alpha for h(j - alpha)");

  auto* effective = app.add_subcommand("effective", "effective constants and the final bound");
  effective->add_option("--alpha-poly", o.alpha_poly, "minimal polynomial, leading coefficient first")->required();
  auto* periods_opt = effective->add_option("--periods", o.periods, "w1re,w1im,w2re,w2im per embedding, ';'-separated");
  effective->add_option("--curve", o.curve, "g2,g3 (rational alpha only)")->excludes(periods_opt);
  effective->add_option("--xi", o.xi, "re,im");
  effective->add_option("--scan-bound", o.scan_bound, "singular-modulus scan bound on |delta|");
  effective->add_option("--disc", o.disc, "also assemble the height upper bound at this discriminant");
  effective->add_option("--eps", o.eps, "radius for the height upper bound (default 1/1000)");

  auto* verify_cmd = app.add_subcommand("verify", "property suites");
  verify_cmd->add_option("--suite", o.suite)->check(CLI::IsMember(moduli::verify::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  o.alpha_set = height->count("--alpha") > 0;
  if (o.precision < 8 || o.precision > kMaxPrecisionBits) {
    std::cerr << "precision must lie in [8, " << kMaxPrecisionBits << "]\n";
    return kExitUsage;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    if (*forms) return run_forms(o);
    if (*classno) return run_classno(o);
    if (*count) return run_count(o);
    if (*jcmd) {
      if (o.inverse == o.value.empty() || o.inverse == !o.tau.empty()) {
        std::cerr << "use either --tau or --inverse --value\n";
        return kExitUsage;
      }
      return run_j(o);
    }
    if (*height) return run_height(o);
    if (*effective) return run_effective(o);
    if (*verify_cmd) return run_verify(o);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}
