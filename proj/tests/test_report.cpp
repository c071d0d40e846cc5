#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <set>

#include "moduli/report.hpp"

using namespace moduli;
using report::json;

namespace {

// Numbers may appear bare only under these keys; anything else must sit in
// an object that carries "error_bound" or "exact".
const std::set<std::string> kBareKeys{"error_bound", "precision_bits", "derivative", "terms"};

void collect_unmarked(const json& j, const std::string& path, std::vector<std::string>& out) {
  if (j.is_object()) {
    const bool marked = j.contains("error_bound") || j.contains("exact");
    for (const auto& [k, v] : j.items()) {
      if (v.is_number() && !marked && !kBareKeys.count(k)) out.push_back(path + "/" + k);
      collect_unmarked(v, path + "/" + k, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_number()) out.push_back(path + "/" + std::to_string(i));
      collect_unmarked(j[i], path + "/" + std::to_string(i), out);
    }
  }
}

void check_marked(const json& j) {
  std::vector<std::string> bad;
  collect_unmarked(j, "", bad);
  for (const auto& p : bad) INFO(p);
  CHECK_MESSAGE(bad.empty(), (bad.empty() ? std::string() : bad.front()));
}

}  // namespace

TEST_CASE("field shapes") {
  const json r = report::real_field(Real("1.5"), Real("1e-30"));
  CHECK(r["value"] == 1.5);
  CHECK(r["decimal"] == "1.5");
  CHECK(r["error_bound"].get<double>() >= 1e-30);
  const json big = report::real_field(Real("1e60"), 0);
  CHECK(big["value"].is_string());
  CHECK(report::exact_field(std::uint64_t{1} << 60)["value"] == "1152921504606846976");
  CHECK(report::exact_field(mpq_class(1, 3))["value"] == "1/3");
  CHECK(report::exact_field(mpz_class("123456789012345678901234567890"))["value"] == "123456789012345678901234567890");
  CHECK(report::bound_field(4.5)["rounding"] == "up");
}

TEST_CASE("every numeric field is marked") {
  const auto d = validate_discriminant(-23);
  check_marked(report::to_json(d));
  for (const auto& f : enumerate_reduced_forms(d)) check_marked(report::to_json(f));
  const NeighborhoodQuery q{d, mpq_class(-1, 4), mpq_class(6, 5), mpq_class(1, 100)};
  check_marked(report::to_json(q, count_report(q, true)));
  check_marked(report::to_json(singular_modulus_height(d)));
  check_marked(report::to_json(section4_functions(Real("1e50"))));
  const AlphaProfile p = build_profile(parse_poly("1,-2"));
  check_marked(report::to_json(p));
  check_marked(report::to_json(final_delta_bound(p)));
}

TEST_CASE("output is deterministic across thread counts") {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const std::string a = report::to_json(build_profile(parse_poly("1,0,-2"))).dump();
  const auto d = validate_discriminant(-99999995);
  const NeighborhoodQuery q{d, mpq_class(1, 5), mpq_class(3, 2), mpq_class(1, 50)};
  const std::string ca = report::to_json(q, count_report(q)).dump();
  omp_set_num_threads(4);
  const std::string b = report::to_json(build_profile(parse_poly("1,0,-2"))).dump();
  const std::string cb = report::to_json(q, count_report(q)).dump();
  omp_set_num_threads(saved);
  CHECK(a == b);
  CHECK(ca == cb);
  CHECK(report::to_json(build_profile(parse_poly("1,0,-2"))).dump() == a);
}
