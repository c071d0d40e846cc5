#include "moduli/forms.hpp"

#include <algorithm>
#include <numeric>

#include "moduli/arith.hpp"
#include "moduli/error.hpp"
#include "moduli/forms_kernel.hpp"

namespace moduli {

namespace {

using u64 = std::uint64_t;

std::int64_t mod4(std::int64_t n) { return ((n % 4) + 4) % 4; }

bool squarefree(const arith::Factorization& f) {
  return std::all_of(f.begin(), f.end(), [](const arith::PrimePower& pp) { return pp.exponent <= 1; });
}

// Square divisors d (d^2 | n) of n with factorization f, largest first.
std::vector<u64> square_divisor_roots(const arith::Factorization& f) {
  std::vector<u64> roots{1};
  for (const auto& [p, e] : f) {
    const std::size_t n = roots.size();
    u64 pk = 1;
    for (int k = 1; k <= e / 2; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) roots.push_back(roots[i] * pk);
    }
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

arith::Factorization divide_square(arith::Factorization f, u64 d) {
  for (auto& pp : f) {
    while (d % pp.prime == 0) {
      d /= pp.prime;
      pp.exponent -= 2;
    }
  }
  std::erase_if(f, [](const arith::PrimePower& pp) { return pp.exponent == 0; });
  return f;
}

bool is_fundamental(std::int64_t q, const arith::Factorization& abs_factors) {
  if (mod4(q) == 1) return squarefree(abs_factors);
  if (mod4(q) != 0) return false;
  const std::int64_t m = q / 4;
  if (mod4(m) != 2 && mod4(m) != 3) return false;
  arith::Factorization mf = abs_factors;
  for (auto& pp : mf) {
    if (pp.prime == 2) pp.exponent -= 2;
  }
  std::erase_if(mf, [](const arith::PrimePower& pp) { return pp.exponent == 0; });
  return squarefree(mf);
}

}  // namespace

bool UHPoint::in_closed_fundamental_domain() const {
  const Real slack = pow2(-precision_bits);
  return im > 0 && boost::multiprecision::abs(re) <= Real(0.5) + slack && re * re + im * im >= 1 - slack;
}

FactoredDiscriminant validate_discriminant(std::int64_t n) {
  if (n >= 0) throw Error(ErrorKind::NonDiscriminant, std::to_string(n) + " is not negative");
  if (mod4(n) != 0 && mod4(n) != 1) {
    throw Error(ErrorKind::NonDiscriminant, std::to_string(n) + " is not 0 or 1 mod 4");
  }
  const u64 abs_n = static_cast<u64>(-n);
  if (abs_n > kMaxAbsDelta) throw Error(ErrorKind::DomainError, "|delta| exceeds 2^62");

  const arith::Factorization f = arith::factor(abs_n);
  for (u64 d : square_divisor_roots(f)) {
    const std::int64_t q = n / static_cast<std::int64_t>(d * d);
    if (!is_fundamental(q, divide_square(f, d))) continue;
    FactoredDiscriminant out;
    out.delta = n;
    out.fundamental = q;
    out.conductor = d;
    out.modified_conductor = mod4(q) == 1 ? d : 2 * d;
    return out;
  }
  throw Error(ErrorKind::NonDiscriminant, "no fundamental decomposition for " + std::to_string(n));
}

bool is_primitive(const QuadraticForm& q) {
  return std::gcd(std::gcd(q.a, q.b), q.c) == 1;
}

bool is_reduced(const QuadraticForm& q) {
  const std::int64_t abs_b = q.b < 0 ? -q.b : q.b;
  if (q.a <= 0 || abs_b > q.a || q.a > q.c) return false;
  if ((abs_b == q.a || q.a == q.c) && q.b < 0) return false;
  return q.discriminant() < 0;
}

std::uint64_t max_reduced_a(const FactoredDiscriminant& d) { return arith::isqrt(d.abs_delta() / 3); }

AInterval full_a_range(const FactoredDiscriminant& d) { return {1, max_reduced_a(d)}; }

std::vector<QuadraticForm> enumerate_reduced_forms(const FactoredDiscriminant& d) {
  return kernel::enumerate_parallel(d, full_a_range(d));
}

std::vector<QuadraticForm> enumerate_reduced_forms(const FactoredDiscriminant& d, AInterval range) {
  return kernel::enumerate_parallel(d, range);
}

std::uint64_t class_number(const FactoredDiscriminant& d) {
  kernel::FormEnumerator enumerator(d);
  return kernel::count_forms_if(enumerator, full_a_range(d), [](const QuadraticForm&) { return true; });
}

UHPoint form_root(const QuadraticForm& q) {
  const std::int64_t disc = q.discriminant();
  if (q.a <= 0 || disc >= 0) throw Error(ErrorKind::DomainError, "form is not positive definite");
  UHPoint tau;
  const Real two_a = Real(2 * q.a);
  tau.re = Real(-q.b) / two_a;
  tau.im = boost::multiprecision::sqrt(Real(-disc)) / two_a;
  return tau;
}

Real quadratic_height(const QuadraticForm& q) {
  if (q.a <= 0 || q.discriminant() >= 0) throw Error(ErrorKind::DomainError, "form is not positive definite");
  // Conjugate roots share |tau|^2 = c / a, so a * max(1,|tau|)^2 = max(a, c).
  return boost::multiprecision::log(Real(std::max(q.a, q.c))) / 2;
}

}  // namespace moduli
