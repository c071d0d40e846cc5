#include "moduli/periods.hpp"

#include <array>
#include <optional>

#include "moduli/error.hpp"

namespace moduli {

namespace {

namespace mp = boost::multiprecision;

// 1 + k sum sigma_p(n) q^n, summed until the tail (sigma_p(n) <= 2 n^p) is negligible.
Complex eisenstein(const UHPoint& tau, int p, long k) {
  if (tau.im < Real(0.5)) throw Error(ErrorKind::DomainError, "Eisenstein series needs Im(tau) >= 1/2");
  const Complex q = exp_2pi_i(tau.value());
  const double log_r = -2 * M_PI * to_double(tau.im);
  const double log_target = -(kWorkingBits + 8) * std::log(2.0) - std::log(static_cast<double>(std::abs(k)));
  Complex sum;
  Complex qn(1);
  for (long n = 1;; ++n) {
    qn = qn * q;
    Real sigma = 0;
    for (long d = 1; d <= n; ++d) {
      if (n % d == 0) sigma += mp::pow(Real(d), p);
    }
    sum += qn * sigma;
    const double next = static_cast<double>(n + 1);
    // Geometric tail from term n+1 on, ratio at most 2^p e^{log_r} < 1/2 for Im >= 1/2.
    if (std::log(2.0) + p * std::log(next) + next * log_r + std::log(2.0) < log_target) break;
    if (n > 2000) throw Error(ErrorKind::PrecisionUnreachable, "Eisenstein series did not settle");
  }
  return Complex(1) + sum * Real(k);
}

Complex agm(Complex a, Complex b) {
  const Real tol = pow2(-(kWorkingBits - 8));
  for (int iter = 0; iter < 200; ++iter) {
    if (abs(a - b) <= tol * abs(a)) return a;
    const Complex a1 = (a + b) * Real(0.5);
    Complex b1 = sqrt(a * b);
    if (abs(a1 - b1) > abs(a1 + b1)) b1 = -b1;
    a = a1;
    b = b1;
  }
  throw Error(ErrorKind::NoConvergence, "AGM did not converge");
}

// Roots of 4x^3 - g2 x - g3 by Durand-Kerner.
std::array<Complex, 3> cubic_roots(const Complex& g2, const Complex& g3) {
  const Complex c1 = -g2 * Real(0.25);
  const Complex c0 = -g3 * Real(0.25);
  auto f = [&](const Complex& x) { return x * x * x + c1 * x + c0; };
  const Real radius = 1 + std::max<Real>(abs(c1), abs(c0));
  std::array<Complex, 3> z;
  for (int k = 0; k < 3; ++k) z[static_cast<std::size_t>(k)] = polar(radius, 2 * pi() * Real(k) / 3 + Real(0.4));
  const Real tol = pow2(-(kWorkingBits - 10));
  for (int iter = 0; iter < 1000; ++iter) {
    bool done = true;
    for (std::size_t k = 0; k < 3; ++k) {
      Complex den(1);
      for (std::size_t m = 0; m < 3; ++m) {
        if (m != k) den = den * (z[k] - z[m]);
      }
      const Complex step = f(z[k]) / den;
      z[k] -= step;
      if (abs(step) > tol * std::max<Real>(1, abs(z[k]))) done = false;
    }
    if (done) return z;
  }
  throw Error(ErrorKind::NoConvergence, "cubic root iteration did not converge");
}

bool close(const Complex& a, const Complex& b, const Real& rel) {
  return abs(a - b) <= rel * std::max<Real>(1, std::max(abs(a), abs(b)));
}

// Normalises (omega1, omega2) so that Im(omega2/omega1) > 0 and the ratio lies in F.
std::optional<PeriodLattice> normalise(Complex w1, Complex w2) {
  Complex ratio = w2 / w1;
  if (ratio.im == 0) return std::nullopt;
  if (ratio.im < 0) {
    w2 = -w2;
    ratio = -ratio;
  }
  UHPoint tau;
  tau.re = ratio.re;
  tau.im = ratio.im;
  const Reduction red = reduce_to_F(tau);
  const SL2Z& m = red.matrix;
  // omega2' = a omega2 + b omega1, omega1' = c omega2 + d omega1.
  PeriodLattice out;
  out.omega2 = w2 * Real(m.a) + w1 * Real(m.b);
  out.omega1 = w2 * Real(m.c) + w1 * Real(m.d);
  out.ratio = red.point;
  return out;
}

bool reproduces(const PeriodLattice& l, const Complex& g2, const Complex& g3, const Real& rel) {
  const LatticeInvariants inv = lattice_invariants(l.omega1, l.ratio);
  return close(inv.g2, g2, rel) && close(inv.g3, g3, rel);
}

}  // namespace

Complex eisenstein_E4(const UHPoint& tau) { return eisenstein(tau, 3, 240); }
Complex eisenstein_E6(const UHPoint& tau) { return eisenstein(tau, 5, -504); }

LatticeInvariants lattice_invariants(const Complex& omega1, const UHPoint& tau) {
  const Real p2 = pi() * pi();
  const Complex w2 = omega1 * omega1;
  const Complex w4 = w2 * w2;
  const Complex w6 = w4 * w2;
  return {Complex(4 * p2 * p2 / 3) * eisenstein_E4(tau) / w4,
          Complex(8 * p2 * p2 * p2 / 27) * eisenstein_E6(tau) / w6};
}

Complex curve_j(const Complex& g2, const Complex& g3) {
  const Complex c = g2 * g2 * g2;
  const Complex disc = c - Complex(27) * g3 * g3;
  if (abs(disc) <= pow2(-(kWorkingBits - 16)) * std::max<Real>(1, abs(c))) {
    throw Error(ErrorKind::SingularCurve, "g2^3 - 27 g3^2 vanishes");
  }
  return Complex(1728) * c / disc;
}

PeriodLattice compute_periods(const Complex& g2, const Complex& g3, int prec) {
  const Complex j = curve_j(g2, g3);
  const Real rel = pow2(-std::min(prec, 100));

  const std::array<Complex, 3> e = cubic_roots(g2, g3);
  static constexpr std::array<std::array<int, 3>, 6> kPerms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& perm : kPerms) {
    const Complex& e1 = e[static_cast<std::size_t>(perm[0])];
    const Complex& e2 = e[static_cast<std::size_t>(perm[1])];
    const Complex& e3 = e[static_cast<std::size_t>(perm[2])];
    const Complex w1 = Complex(pi()) / agm(sqrt(e1 - e3), sqrt(e1 - e2));
    const Complex w2 = Complex(pi()) / agm(sqrt(e2 - e3), sqrt(e2 - e1));
    std::optional<PeriodLattice> l = normalise(w1, w2);
    if (!l) continue;
    l->ratio.precision_bits = prec;
    if (reproduces(*l, g2, g3, rel)) return *l;
    // The AGM pair may span an index-2 sublattice; halving one generator is the usual fix.
    for (const auto& [a, b] : {std::pair{w1 * Real(0.5), w2}, std::pair{w1, w2 * Real(0.5)}}) {
      std::optional<PeriodLattice> h = normalise(a, b);
      if (h && reproduces(*h, g2, g3, rel)) {
        h->ratio.precision_bits = prec;
        return *h;
      }
    }
  }

  // Fallback: tau from j, then omega1 from E4/E6 (any root of unity
  // ambiguity is absorbed by the lattice's automorphisms).
  PeriodLattice out;
  out.from_agm = false;
  out.ratio = j_inverse(j, prec);
  const UHPoint& tau = out.ratio;
  const Real p2 = pi() * pi();
  if (abs(g3) == 0) {
    const Complex w4 = Complex(4 * p2 * p2 / 3) * eisenstein_E4(tau) / g2;
    out.omega1 = sqrt(sqrt(w4));
  } else if (abs(g2) == 0) {
    const Complex w6 = Complex(8 * p2 * p2 * p2 / 27) * eisenstein_E6(tau) / g3;
    out.omega1 = exp(log(w6) * Complex(Real(1) / 6));
  } else {
    const Complex w2 = Complex(2 * p2 / 9) * eisenstein_E6(tau) / eisenstein_E4(tau) * g2 / g3;
    out.omega1 = sqrt(w2);
  }
  out.omega2 = out.omega1 * tau.value();
  if (!reproduces(out, g2, g3, rel)) throw Error(ErrorKind::NoConvergence, "period lattice does not reproduce g2, g3");
  return out;
}

PeriodLattice match_ratio(const PeriodLattice& lattice, const UHPoint& xi, const Real& tolerance) {
  const Complex w1 = lattice.omega1;
  const Complex w2 = lattice.omega2;
  // (omega2', omega1') = M (omega2, omega1) for M in {1, T, T^-1, S}.
  const std::array<std::pair<Complex, Complex>, 4> candidates{{
      {w1, w2},
      {w1, w2 + w1},
      {w1, w2 - w1},
      {w2, -w1},
  }};
  for (const auto& [a, b] : candidates) {
    const Complex r = b / a;
    if (abs(r - xi.value()) <= tolerance) {
      PeriodLattice out = lattice;
      out.omega1 = a;
      out.omega2 = b;
      out.ratio = xi;
      return out;
    }
  }
  throw Error(ErrorKind::InvalidInput, "period ratio does not match xi up to the boundary identifications");
}

}  // namespace moduli
