#include "moduli/poly.hpp"

#include <algorithm>
#include <sstream>

#include "moduli/error.hpp"

namespace moduli {

namespace mp = boost::multiprecision;

IntPoly parse_poly(std::string_view text) {
  IntPoly p;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string item(text.substr(start, comma - start));
    std::erase_if(item, [](char ch) { return ch == ' '; });
    mpz_class v;
    if (item.empty() || (item[0] == '+' ? v.set_str(item.substr(1), 10) : v.set_str(item, 10)) != 0) {
      throw Error(ErrorKind::InvalidInput, "bad polynomial coefficient '" + item + "'");
    }
    p.push_back(v);
    start = comma + 1;
  }
  std::reverse(p.begin(), p.end());
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  if (degree(p) < 1) throw Error(ErrorKind::InvalidInput, "polynomial must have degree >= 1");
  return p;
}

std::string format_poly(const IntPoly& p) {
  std::ostringstream os;
  for (std::size_t i = p.size(); i-- > 0;) {
    os << p[i];
    if (i > 0) os << ',';
  }
  return os.str();
}

int degree(const IntPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  const int n = degree(p);
  if (n < 0) throw Error(ErrorKind::DomainError, "zero polynomial");
  IntPoly out(p.begin(), p.begin() + n + 1);
  mpz_class g = content(out);
  if (out[static_cast<std::size_t>(n)] < 0) g = -g;
  for (auto& c : out) c /= g;
  return out;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

IntPoly mobius_transform(const IntPoly& p, long a, long b, long c, long d) {
  if (static_cast<long long>(a) * d - static_cast<long long>(b) * c == 0) {
    throw Error(ErrorKind::DomainError, "degenerate Moebius transformation");
  }
  const int n = degree(p);
  const IntPoly num{mpz_class(-b), mpz_class(d)};  // d t - b
  const IntPoly den{mpz_class(a), mpz_class(-c)};  // -c t + a
  IntPoly out{0};
  for (int k = 0; k <= n; ++k) {
    IntPoly term{p[static_cast<std::size_t>(k)]};
    for (int i = 0; i < k; ++i) term = poly_mul(term, num);
    for (int i = k; i < n; ++i) term = poly_mul(term, den);
    if (out.size() < term.size()) out.resize(term.size(), 0);
    for (std::size_t i = 0; i < term.size(); ++i) out[i] += term[i];
  }
  if (degree(out) != n) {
    throw Error(ErrorKind::DomainError, "transformation maps a root to infinity");
  }
  return primitive_part(out);
}

Complex poly_eval(const IntPoly& p, const Complex& z) {
  Complex acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + Complex(from_integer(p[i]));
  return acc;
}

namespace {

Complex poly_derivative_eval(const IntPoly& p, const Complex& z) {
  Complex acc;
  for (std::size_t i = p.size(); i-- > 1;) {
    acc = acc * z + Complex(from_integer(p[i] * static_cast<unsigned long>(i)));
  }
  return acc;
}

}  // namespace

std::vector<Complex> poly_roots(const IntPoly& raw) {
  const IntPoly p = primitive_part(raw);
  const int n = degree(p);
  const auto un = static_cast<std::size_t>(n);
  if (n == 1) return {Complex(-from_rational(mpq_class(p[0], p[1])))};

  // Cauchy radius for the initial circle; the angular offset avoids symmetric stalls.
  Real radius = 0;
  const Real lead = mp::abs(from_integer(p[un]));
  for (std::size_t i = 0; i < un; ++i) radius = std::max<Real>(radius, mp::abs(from_integer(p[i])) / lead);
  radius += 1;
  std::vector<Complex> z(un);
  for (std::size_t k = 0; k < un; ++k) {
    z[k] = polar(radius, 2 * pi() * Real(static_cast<double>(k)) / n + Real(0.4));
  }

  const Real tol = pow2(-(kWorkingBits - 12));
  for (int iter = 0; iter < 500; ++iter) {
    bool done = true;
    for (std::size_t k = 0; k < un; ++k) {
      const Complex ratio = poly_eval(p, z[k]) / poly_derivative_eval(p, z[k]);
      Complex repulsion;
      for (std::size_t m = 0; m < un; ++m) {
        if (m != k) repulsion += Complex(1) / (z[k] - z[m]);
      }
      const Complex step = ratio / (Complex(1) - ratio * repulsion);
      z[k] -= step;
      if (abs(step) > tol * std::max<Real>(1, abs(z[k]))) done = false;
    }
    if (done) return z;
  }
  throw Error(ErrorKind::NoConvergence, "root finding did not converge (repeated roots?)");
}

Real mahler_measure(const IntPoly& raw) {
  const IntPoly p = primitive_part(raw);
  Real m = mp::abs(from_integer(p[static_cast<std::size_t>(degree(p))]));
  for (const Complex& r : poly_roots(p)) m *= std::max<Real>(1, abs(r));
  return m;
}

Real height_from_min_poly(const IntPoly& p) { return mp::log(mahler_measure(p)) / degree(p); }

}  // namespace moduli
