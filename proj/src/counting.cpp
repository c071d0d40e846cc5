#include "moduli/counting.hpp"

#include <algorithm>
#include <cmath>

#include "moduli/arith.hpp"
#include "moduli/error.hpp"
#include "moduli/forms_kernel.hpp"

namespace moduli {

namespace {

namespace mp = boost::multiprecision;

// Double-precision copy of a query for the fast path of root_in_disc.
struct FastDisc {
  double x, y, eps2, sqrt_abs_delta, tie_width;

  explicit FastDisc(const NeighborhoodQuery& q)
      : x(q.xi_re.get_d()),
        y(q.xi_im.get_d()),
        eps2(q.eps.get_d() * q.eps.get_d()),
        sqrt_abs_delta(std::sqrt(static_cast<double>(q.delta.abs_delta()))) {
    const double scale = 1 + std::abs(x) + y + q.eps.get_d();
    tie_width = 1e-12 * scale * scale;
  }
};

bool exact_in_disc(const QuadraticForm& f, const NeighborhoodQuery& q) {
  const mpq_class two_a(2 * f.a);
  const mpq_class u = mpq_class(f.b) / two_a + q.xi_re;
  const mpq_class abs_delta(mpz_class(std::to_string(q.delta.abs_delta())));
  const mpq_class L = u * u + abs_delta / (two_a * two_a) + q.xi_im * q.xi_im - q.eps * q.eps;
  if (L < 0) return true;
  // L < y |delta|^{1/2} / a with both sides nonnegative.
  return L * L < q.xi_im * q.xi_im * abs_delta / (mpq_class(f.a) * mpq_class(f.a));
}

bool in_disc(const QuadraticForm& f, const NeighborhoodQuery& q, const FastDisc& fd) {
  const double two_a = 2.0 * static_cast<double>(f.a);
  const double dre = -static_cast<double>(f.b) / two_a - fd.x;
  const double dim = fd.sqrt_abs_delta / two_a - fd.y;
  const double diff = dre * dre + dim * dim - fd.eps2;
  if (diff > fd.tie_width) return false;
  if (diff < -fd.tie_width) return true;
  return exact_in_disc(f, q);
}

double round_up_padded(const Real& x) { return round_up(x * (1 + pow2(-120))); }

}  // namespace

NeighborhoodQuery NeighborhoodQuery::make(const FactoredDiscriminant& d, const UHPoint& xi, const Real& eps) {
  return {d, to_rational(xi.re), to_rational(xi.im), to_rational(eps)};
}

UHPoint NeighborhoodQuery::xi() const {
  UHPoint p;
  p.re = from_rational(xi_re);
  p.im = from_rational(xi_im);
  return p;
}

void validate(const NeighborhoodQuery& q) {
  if (q.eps <= 0 || q.eps >= mpq_class(1, 2)) throw Error(ErrorKind::DomainError, "eps must lie in (0, 1/2)");
  if (q.xi_im <= 0 || 4 * q.xi_im * q.xi_im < 3) {
    throw Error(ErrorKind::DomainError, "Im xi must be at least sqrt(3)/2");
  }
}

bool root_in_disc(const QuadraticForm& form, const NeighborhoodQuery& q) {
  return in_disc(form, q, FastDisc(q));
}

AInterval candidate_a_range(const NeighborhoodQuery& q) {
  const FastDisc fd(q);
  const double e = q.eps.get_d();
  const double lo = std::floor(fd.sqrt_abs_delta / (2 * fd.y + 2 * e)) - 1;
  const double hi = std::ceil(fd.sqrt_abs_delta / (2 * fd.y - 2 * e)) + 1;
  AInterval r;
  r.lo = lo < 1 ? 1 : static_cast<std::uint64_t>(lo);
  r.hi = static_cast<std::uint64_t>(std::min(hi, static_cast<double>(max_reduced_a(q.delta))));
  return r;
}

std::uint64_t cm_count(const NeighborhoodQuery& q) {
  validate(q);
  const AInterval range = candidate_a_range(q);
  if (range.lo > range.hi) return 0;
  const kernel::FormEnumerator enumerator(q.delta);
  const FastDisc fd(q);
  return kernel::count_forms_if(enumerator, range, [&](const QuadraticForm& f) { return in_disc(f, q, fd); });
}

std::uint64_t cm_count_full(const NeighborhoodQuery& q) {
  validate(q);
  const kernel::FormEnumerator enumerator(q.delta);
  const FastDisc fd(q);
  return kernel::count_forms_if(enumerator, full_a_range(q.delta),
                                [&](const QuadraticForm& f) { return in_disc(f, q, fd); });
}

double lemma_bound(const NeighborhoodQuery& q) {
  validate(q);
  const arith::ArithProfile p = arith::arith_profile(q.delta);
  const Real y = from_rational(q.xi_im);
  const Real eps = from_rational(q.eps);
  const Real abs_delta = from_integer(mpz_class(std::to_string(q.delta.abs_delta())));
  const Real root = mp::sqrt(abs_delta);
  const Real denom = 4 * y * y - 1;
  const Real ftilde(static_cast<double>(p.delta.modified_conductor));
  const Real quadratic = 32 * Real(static_cast<double>(p.sigma1_ftilde)) / ftilde * root / denom * eps * eps;
  const Real linear1 = 8 * Real(static_cast<double>(p.sigma0_ftilde)) * mp::pow(abs_delta / 3, Real(0.25)) * eps;
  const Real linear2 = 8 * root / denom * eps;
  return round_up_padded(Real(static_cast<double>(p.F_value)) * (quadratic + linear1 + linear2 + 2));
}

CorollaryBound corollary_bound(const FactoredDiscriminant& d, const mpq_class& eps_q) {
  if (eps_q <= 0) throw Error(ErrorKind::DomainError, "eps must be positive");
  const Real eps = from_rational(eps_q);
  const Real root = mp::sqrt(from_integer(mpz_class(std::to_string(d.abs_delta()))));
  const Real F(static_cast<double>(arith::big_F(d)));
  const Real value = F * (32 * root * eps * eps * mp::log(mp::log(root)) + 11 * root * eps + 2);
  CorollaryBound out;
  out.value = round_up_padded(value);
  out.certified = d.abs_delta() >= 100000000000000ULL && eps_q < mpq_class(1, 4);
  return out;
}

CountReport count_report(const NeighborhoodQuery& q, bool always_corollary) {
  CountReport r;
  r.exact_count = cm_count(q);
  r.lemma_bound = lemma_bound(q);
  if (always_corollary || q.delta.abs_delta() >= 100000000000000ULL) r.corollary_bound = corollary_bound(q.delta, q.eps);
  const double root = std::sqrt(static_cast<double>(q.delta.abs_delta()));
  const double y = q.xi_im.get_d();
  const double e = q.eps.get_d();
  r.a_interval_lo = root / (2 * y + 2 * e);
  r.a_interval_hi = root / (2 * y - 2 * e);
  r.certified = q.certified();
  return r;
}

}  // namespace moduli
