#include "moduli/modular_j.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <limits>
#include <optional>

#include "moduli/error.hpp"

namespace moduli {

namespace {

namespace mp = boost::multiprecision;
using Series = std::vector<mpz_class>;

Series mul_trunc(const Series& a, const Series& b, std::size_t n) {
  Series out(n, 0);
  for (std::size_t i = 0; i < n && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Inverse of a power series with constant term 1.
Series inverse_unit(const Series& a, std::size_t n) {
  Series inv(n, 0);
  inv[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    mpz_class s = 0;
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * inv[k - i];
    inv[k] = -s;
  }
  return inv;
}

struct CoefficientTable {
  std::vector<Real> values;
};

const CoefficientTable& coefficient_table() {
  static const CoefficientTable table = [] {
    CoefficientTable t;
    const JSeries s = j_coefficients(kCachedTerms - 1);
    t.values.reserve(s.coefficients.size());
    for (const auto& c : s.coefficients) t.values.push_back(from_integer(c));
    return t;
  }();
  return table;
}

void check_precision(int prec) {
  if (prec < 1 || prec > kMaxPrecisionBits) {
    throw Error(ErrorKind::PrecisionUnreachable,
                "precision " + std::to_string(prec) + " outside [1, " + std::to_string(kMaxPrecisionBits) + "]");
  }
}

double log_tail_bound(double log_r, int N, int order) {
  const double n1 = N + 1.0;
  const double log_first = order * std::log(n1) + 4 * M_PI * std::sqrt(n1) + n1 * log_r;
  const double log_rho = order * std::log1p(1.0 / n1) + 2 * M_PI / std::sqrt(n1) + log_r;
  if (log_rho >= 0) return std::numeric_limits<double>::infinity();
  return log_first - std::log1p(-std::exp(log_rho));
}

struct SeriesValues {
  std::array<Complex, 3> value;
  std::array<Real, 3> error;
  int terms = 0;
};

// j and its first `max_order` derivatives at tau.
SeriesValues evaluate(const UHPoint& tau, int prec, int max_order) {
  check_precision(prec);
  if (tau.im < Real(0.5)) throw Error(ErrorKind::DomainError, "j evaluation needs Im(tau) >= 1/2");
  const double y = to_double(tau.im);
  const double log_r = -2 * M_PI * y;
  const double log_target = -(prec + 8) * std::log(2.0) - max_order * std::log(2 * M_PI);

  int N = 16;
  while (log_tail_bound(log_r, N, max_order) > log_target) {
    if (++N >= kCachedTerms) {
      throw Error(ErrorKind::PrecisionUnreachable, "series truncation exceeds cached terms");
    }
  }
  const auto& c = coefficient_table().values;

  const Complex q = exp_2pi_i(tau.value());
  const Real r = abs(q);
  std::array<Complex, 3> acc;
  std::array<Real, 4> mag{0, 0, 0, 0};
  for (int n = N; n >= 0; --n) {
    const Real rn(n);
    Real weight = c[static_cast<std::size_t>(n)];
    for (int k = 0; k <= max_order; ++k) {
      acc[static_cast<std::size_t>(k)] = acc[static_cast<std::size_t>(k)] * q + Complex(weight);
      weight *= rn;
    }
    Real mweight = c[static_cast<std::size_t>(n)];
    for (int k = 0; k <= max_order + 1; ++k) {
      mag[static_cast<std::size_t>(k)] = mag[static_cast<std::size_t>(k)] * r + mweight;
      mweight *= rn;
    }
  }

  const Complex q_inv = Complex(1) / q;
  const Real r_inv = 1 / r;
  const Real unit = pow2(-(kWorkingBits - 1));
  const Real two_pi = 2 * pi();
  const Complex two_pi_i(Real(0), two_pi);

  SeriesValues out;
  out.terms = N + 1;
  Complex factor(1);
  Real scale = 1;
  for (int k = 0; k <= max_order; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    Complex leading = (k % 2 == 0) ? q_inv : -q_inv;
    out.value[ku] = factor * (leading + acc[ku]);
    const Real rounding = unit * (4 * (N + 10) * (mag[ku] + mag[ku + 1]) + 8 * r_inv + 16 * abs(out.value[ku]) / scale);
    const Real tail(std::exp(log_tail_bound(log_r, N, k)));
    out.error[ku] = scale * (rounding + tail);
    factor = factor * two_pi_i;
    scale *= two_pi;
  }
  return out;
}

EvalResult to_result(const SeriesValues& s, int order) {
  const auto k = static_cast<std::size_t>(order);
  return {s.value[k], s.error[k], s.terms};
}

std::optional<UHPoint> newton(UHPoint tau, const Complex& z, int prec, const Real& tol) {
  for (int iter = 0; iter < 200; ++iter) {
    const SeriesValues s = evaluate(tau, prec, 1);
    const Complex f = s.value[0] - z;
    if (abs(f) + s.error[0] < tol) return tau;
    Complex step = f / s.value[1];
    const Real len = abs(step);
    if (len > Real(0.2)) step *= Real(0.2) / len;
    tau.re -= step.re;
    tau.im -= step.im;
    if (tau.im <= 0) return std::nullopt;
    tau = reduce_to_F(tau).point;
  }
  return std::nullopt;
}

// Real z: the preimage lies on Re = 0, |tau| = 1 or Re = 1/2 where j is real
// and monotone, so safeguarded Newton inside a bisection bracket is certain to converge.
UHPoint invert_real(const Real& x, int prec, const Real& tol) {
  enum class Path { imaginary_axis, unit_arc, half_line } path;
  Real lo, hi;
  bool increasing = true;
  if (x > 1728) {
    path = Path::imaginary_axis;
    lo = 1;
    hi = std::max<Real>(Real(1), mp::log(x + 2079) / (2 * pi())) + Real(0.01);
  } else if (x > 0) {
    path = Path::unit_arc;
    lo = pi() / 3;
    hi = pi() / 2;
  } else {
    path = Path::half_line;
    lo = mp::sqrt(Real(3)) / 2;
    hi = std::max<Real>(lo, mp::log(-x + 2079) / (2 * pi())) + Real(0.01);
    increasing = false;
  }
  auto point = [&](const Real& t) {
    UHPoint p;
    p.precision_bits = prec;
    switch (path) {
      case Path::imaginary_axis: p.re = 0; p.im = t; break;
      case Path::unit_arc: p.re = mp::cos(t); p.im = mp::sin(t); break;
      case Path::half_line: p.re = Real(0.5); p.im = t; break;
    }
    return p;
  };
  auto direction = [&](const Real& t) {
    if (path == Path::unit_arc) return Complex(-mp::sin(t), mp::cos(t));
    return Complex(Real(0), Real(1));
  };

  Real t = (lo + hi) / 2;
  for (int iter = 0; iter < 2000; ++iter) {
    const UHPoint p = point(t);
    const SeriesValues s = evaluate(p, prec, 1);
    const Real g = s.value[0].re - x;
    if (mp::abs(g) + s.error[0] < tol) return p;
    if ((g > 0) == increasing) {
      hi = t;
    } else {
      lo = t;
    }
    const Real slope = (s.value[1] * direction(t)).re;
    Real candidate = slope != 0 ? Real(t - g / slope) : Real(lo - 1);
    if (!(candidate > lo && candidate < hi)) candidate = (lo + hi) / 2;
    if (hi - lo < pow2(-(kWorkingBits - 2))) {
      throw Error(ErrorKind::NoConvergence, "geodesic bisection exhausted working precision");
    }
    t = candidate;
  }
  throw Error(ErrorKind::NoConvergence, "geodesic inversion did not converge");
}

}  // namespace

JSeries j_coefficients(int N) {
  if (N < 0) throw Error(ErrorKind::DomainError, "truncation order must be >= 0");
  const std::size_t n = static_cast<std::size_t>(N) + 2;

  Series e4(n, 0);
  e4[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    mpz_class s3 = 0;
    for (std::size_t d = 1; d <= m; ++d) {
      if (m % d == 0) s3 += mpz_class(static_cast<unsigned long>(d * d * d));
    }
    e4[m] = 240 * s3;
  }

  // prod (1 - q^m) by the pentagonal number theorem.
  Series eta(n, 0);
  for (long k = 0;; ++k) {
    bool any = false;
    for (long sign : {1L, -1L}) {
      const long kk = sign * k;
      const long e = kk * (3 * kk - 1) / 2;
      if (e >= 0 && static_cast<std::size_t>(e) < n) {
        eta[static_cast<std::size_t>(e)] = (k % 2 == 0) ? 1 : -1;
        any = true;
      }
      if (k == 0) break;
    }
    if (!any && k > 0) break;
  }
  const Series eta2 = mul_trunc(eta, eta, n);
  const Series eta4 = mul_trunc(eta2, eta2, n);
  const Series eta8 = mul_trunc(eta4, eta4, n);
  const Series eta16 = mul_trunc(eta8, eta8, n);
  const Series eta24 = mul_trunc(eta16, eta8, n);
  const Series e4_cubed = mul_trunc(mul_trunc(e4, e4, n), e4, n);
  const Series jq = mul_trunc(e4_cubed, inverse_unit(eta24, n), n);

  JSeries out;
  out.N = N;
  out.coefficients.assign(jq.begin() + 1, jq.end());
  return out;
}

double j_tail_bound(double r, int N, int order) { return std::exp(log_tail_bound(std::log(r), N, order)); }

EvalResult j_eval(const UHPoint& tau, int prec) { return to_result(evaluate(tau, prec, 0), 0); }
EvalResult j_prime(const UHPoint& tau, int prec) { return to_result(evaluate(tau, prec, 1), 1); }
EvalResult j_double_prime(const UHPoint& tau, int prec) { return to_result(evaluate(tau, prec, 2), 2); }

EvalResult j_derivative(const UHPoint& tau, int order, int prec) {
  if (order < 0 || order > 2) throw Error(ErrorKind::DomainError, "derivative order must be 0, 1 or 2");
  return to_result(evaluate(tau, prec, order), order);
}

Complex SL2Z::apply(const Complex& tau) const {
  return (Complex(Real(a)) * tau + Complex(Real(b))) / (Complex(Real(c)) * tau + Complex(Real(d)));
}

Reduction reduce_to_F(const UHPoint& tau) {
  if (tau.im <= 0) throw Error(ErrorKind::DomainError, "reduce_to_F needs Im(tau) > 0");
  Reduction out{tau, {}};
  Complex z = tau.value();
  for (int iter = 0; iter < 10000; ++iter) {
    const Real shift = mp::floor(z.re + Real(0.5));
    if (shift != 0) {
      const auto n = shift.convert_to<std::int64_t>();
      z.re -= shift;
      out.matrix = SL2Z{1, -n, 0, 1} * out.matrix;
    }
    if (norm(z) >= 1) break;
    z = Complex(-1) / z;
    out.matrix = SL2Z{0, -1, 1, 0} * out.matrix;
  }
  out.point.re = z.re;
  out.point.im = z.im;
  return out;
}

UHPoint rho_point() {
  UHPoint p;
  p.re = Real(0.5);
  p.im = mp::sqrt(Real(3)) / 2;
  return p;
}

UHPoint i_point() {
  UHPoint p;
  p.re = 0;
  p.im = 1;
  return p;
}

UHPoint j_inverse(const Complex& z, int prec) {
  check_precision(prec);
  const Real tol = pow2(-prec) * std::max<Real>(Real(1), abs(z));
  UHPoint special;
  if (z.im == 0 && z.re == 1728) special = i_point();
  if (z.im == 0 && z.re == 0) special = rho_point();
  if (special.im > 0) {
    special.precision_bits = prec;
    return special;
  }
  if (z.im == 0) return invert_real(z.re, prec, tol);

  const Real critical = pow2(-prec / 2);
  if (abs(z) < critical || abs(z - Complex(1728)) < critical) {
    throw Error(ErrorKind::NearCriticalPoint, "value within 2^-prec/2 of a critical value of j");
  }

  std::vector<UHPoint> starts;
  if (abs(z) > 3000) {
    // j = q^-1 + 744 + 196884 q + ...: fixed-point refine q, then tau = log(q) / (2 pi i).
    Complex q = Complex(1) / z;
    for (int i = 0; i < 8; ++i) q = Complex(1) / (z - Complex(744) - Complex(196884) * q);
    const Complex lq = log(q);
    UHPoint t;
    t.re = lq.im / (2 * pi());
    t.im = -lq.re / (2 * pi());
    starts.push_back(reduce_to_F(t).point);
  } else {
    // Coarse grid over F with Im <= 4; keep the best few starting points.
    std::vector<std::pair<Real, UHPoint>> grid;
    for (int ix = -10; ix <= 10; ++ix) {
      for (int iy = 0; iy <= 64; ++iy) {
        UHPoint t;
        t.re = Real(ix) / 20;
        t.im = Real(0.85) + Real(iy) / 20;
        if (t.re * t.re + t.im * t.im < 1) continue;
        const SeriesValues s = evaluate(t, 24, 0);
        grid.emplace_back(abs(s.value[0] - z), t);
      }
    }
    std::sort(grid.begin(), grid.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 0; i < std::min<std::size_t>(6, grid.size()); ++i) starts.push_back(grid[i].second);
  }
  for (const UHPoint& s : starts) {
    if (auto found = newton(s, z, prec, tol)) {
      found->precision_bits = prec;
      return *found;
    }
  }
  throw Error(ErrorKind::NoConvergence, "Newton iteration did not converge from any start");
}

Real growth_gap(const UHPoint& tau, int prec) {
  const EvalResult j = j_eval(tau, prec);
  return mp::abs(abs(j.value) - mp::exp(2 * pi() * tau.im));
}

const char* to_string(ImSign s) {
  switch (s) {
    case ImSign::negative: return "negative";
    case ImSign::zero: return "zero";
    case ImSign::positive: return "positive";
  }
  return "?";
}

ImSign sign_of_im_j(const UHPoint& tau, int prec) {
  if (!tau.in_closed_fundamental_domain()) {
    throw Error(ErrorKind::DomainError, "sign_of_im_j expects a point of the closed fundamental domain");
  }
  const Real slack = pow2(-prec / 2);
  const Real abs_re = mp::abs(tau.re);
  const Real modulus = mp::sqrt(tau.re * tau.re + tau.im * tau.im);
  if (abs_re < slack || mp::abs(abs_re - Real(0.5)) < slack || mp::abs(modulus - 1) < slack) return ImSign::zero;
  const EvalResult j = j_eval(tau, prec);
  if (mp::abs(j.value.im) <= j.error_bound) {
    throw Error(ErrorKind::PrecisionInconclusive, "Im j(tau) is below the certified error bound");
  }
  return j.value.im < 0 ? ImSign::negative : ImSign::positive;
}

}  // namespace moduli
