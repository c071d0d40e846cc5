#include "moduli/heights.hpp"

#include <omp.h>

#include "moduli/error.hpp"

namespace moduli {

namespace {

namespace mp = boost::multiprecision;

Real abs_delta_real(const FactoredDiscriminant& d) {
  return from_integer(mpz_class(std::to_string(d.abs_delta())));
}

}  // namespace

std::vector<EvalResult> singular_moduli(const FactoredDiscriminant& d, int prec) {
  const std::vector<QuadraticForm> forms = enumerate_reduced_forms(d);
  std::vector<EvalResult> out(forms.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(forms.size()); ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = j_eval(form_root(forms[k]), prec);
  }
  return out;
}

HeightEstimate orbit_height(const std::vector<EvalResult>& conjugates) {
  HeightEstimate h;
  h.value = 0;
  h.error_bound = 0;
  h.terms = conjugates.size();
  if (conjugates.empty()) throw Error(ErrorKind::DomainError, "empty conjugate list");
  for (const EvalResult& c : conjugates) {
    const Real m = abs(c.value);
    const Real& err = c.error_bound;
    if (m - err > 1) {
      const Real lg = mp::log(m);
      h.value += lg;
      h.error_bound += err / (m - err) + mp::abs(lg) * pow2(-(kWorkingBits - 4));
    } else if (m + err > 1) {
      // |v| straddles 1: the term is somewhere in [0, log(1 + err)].
      if (m > 1) h.value += mp::log(m);
      h.error_bound += mp::log1p(err);
    }
  }
  const Real n(static_cast<double>(conjugates.size()));
  h.value /= n;
  h.error_bound /= n;
  return h;
}

HeightEstimate singular_modulus_height(const FactoredDiscriminant& d, int prec) {
  return orbit_height(singular_moduli(d, prec));
}

HeightEstimate shifted_height(const FactoredDiscriminant& d, std::int64_t alpha, int prec) {
  std::vector<EvalResult> orbit = singular_moduli(d, prec);
  const Complex shift(Real(static_cast<double>(alpha)));
  for (EvalResult& e : orbit) {
    e.value = e.value - shift;
    e.error_bound += abs(e.value) * pow2(-(kWorkingBits - 2));
  }
  return orbit_height(orbit);
}

Real unit_height_via_small_conjugates(const std::vector<Complex>& values, const Real& tolerance) {
  if (values.empty()) throw Error(ErrorKind::DomainError, "empty conjugate list");
  Real small = 0;
  Real large = 0;
  for (const Complex& v : values) {
    const Real m = abs(v);
    if (m == 0) throw Error(ErrorKind::NotUnitConsistent, "zero is not a unit");
    if (m < 1) small -= mp::log(m);
    if (m > 1) large += mp::log(m);
  }
  const Real n(static_cast<double>(values.size()));
  small /= n;
  large /= n;
  if (mp::abs(small - large) > tolerance) {
    throw Error(ErrorKind::NotUnitConsistent,
                "small-conjugate height " + to_decimal(small, 12) + " differs from " + to_decimal(large, 12));
  }
  return small;
}

Real lower_bound_trivial(const FactoredDiscriminant& d, const Real& h_alpha) {
  if (d.abs_delta() < 16) throw Error(ErrorKind::HypothesisUnmet, "the trivial lower bound needs |delta| >= 16");
  const Real C(static_cast<double>(class_number(d)));
  return (pi() * mp::sqrt(abs_delta_real(d)) - Real("0.01")) / C - h_alpha - log2_const();
}

Real lower_bound_colmez(const FactoredDiscriminant& d, const Real& h_alpha) {
  return 3 / mp::sqrt(Real(5)) * mp::log(abs_delta_real(d)) - Real("9.79") - h_alpha - log2_const();
}

}  // namespace moduli
