#include <cmath>
#include <numeric>

#include "moduli/arith.hpp"
#include "moduli/reference.hpp"

namespace moduli::reference {

std::vector<QuadraticForm> enumerate_reduced_forms(std::int64_t delta) {
  std::vector<QuadraticForm> out;
  const std::int64_t abs_delta = -delta;
  for (std::int64_t a = 1; 3 * a * a <= abs_delta; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      const std::int64_t num = b * b - delta;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      QuadraticForm q{a, b, c};
      if (is_reduced(q) && is_primitive(q)) out.push_back(q);
    }
  }
  return out;
}

std::uint64_t class_number(std::int64_t delta) { return enumerate_reduced_forms(delta).size(); }

std::vector<std::uint8_t> omega_table(std::uint32_t n) {
  std::vector<std::uint8_t> w(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (w[p] != 0) continue;
    for (std::uint64_t m = p; m <= n; m += p) ++w[m];
  }
  return w;
}

std::uint64_t big_F_bruteforce(std::uint64_t abs_delta) {
  const auto bound = static_cast<std::uint32_t>(arith::isqrt(abs_delta));
  const auto w = omega_table(bound);
  int best = 0;
  for (std::uint32_t a = 1; a <= bound; ++a) best = std::max(best, static_cast<int>(w[a]));
  return std::uint64_t{1} << best;
}

namespace {

bool squarefree_bruteforce(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

}  // namespace

Decomposition decompose_bruteforce(std::int64_t delta) {
  const auto abs_delta = static_cast<std::uint64_t>(-delta);
  for (std::uint64_t d = arith::isqrt(abs_delta); d >= 1; --d) {
    if (abs_delta % (d * d) != 0) continue;
    const std::int64_t q = delta / static_cast<std::int64_t>(d * d);
    const std::int64_t r = ((q % 4) + 4) % 4;
    const auto abs_q = static_cast<std::uint64_t>(-q);
    if (r == 1 && squarefree_bruteforce(abs_q)) return {q, d};
    if (r == 0) {
      const std::int64_t m = q / 4;
      const std::int64_t rm = ((m % 4) + 4) % 4;
      if ((rm == 2 || rm == 3) && squarefree_bruteforce(abs_q / 4)) return {q, d};
    }
  }
  return {0, 0};
}

}  // namespace moduli::reference
