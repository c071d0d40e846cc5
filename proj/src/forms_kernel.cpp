#include "moduli/forms_kernel.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "moduli/arith.hpp"

namespace moduli::kernel {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

u64 residue(i64 value, u64 m) {
  i64 r = value % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

// n must be a nonzero quadratic residue modulo the odd prime p.
u64 tonelli_shanks(u64 n, u64 p) {
  using arith::mulmod;
  using arith::powmod;
  if (p % 4 == 3) return powmod(n, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = static_cast<u64>(s);
  u64 c = powmod(z, q, p);
  u64 t = powmod(n, q, p);
  u64 r = powmod(n, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

i64 inverse_mod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  while (a1) {
    i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  x %= m;
  return x < 0 ? x + m : x;
}

struct Component {
  u64 modulus;
  std::vector<u64> roots;
};

// Lifts the roots of x^2 = delta from p^from to p^to by testing every lift.
void lift_roots(std::vector<u64>& roots, i64 delta, u64 p, int from, int to, std::vector<u64>& scratch) {
  u64 pk = 1;
  for (int i = 0; i < from; ++i) pk *= p;
  for (int level = from + 1; level <= to && !roots.empty(); ++level) {
    const u64 next = pk * p;
    const u64 target = residue(delta, next);
    scratch.clear();
    for (u64 x : roots) {
      for (u64 t = 0; t < p; ++t) {
        u64 y = x + t * pk;
        if (static_cast<u64>(static_cast<u128>(y) * y % next) == target) scratch.push_back(y);
      }
    }
    roots.swap(scratch);
    pk = next;
  }
}

}  // namespace

FormEnumerator::FormEnumerator(const FactoredDiscriminant& d) : delta_(d), a_max_(max_reduced_a(d)) {
  primes_ = arith::primes_up_to(static_cast<std::uint32_t>(a_max_));
  roots_.resize(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const u64 p = primes_[i];
    if (p == 2) {
      roots_[i] = static_cast<i64>(residue(d.delta, 2));
      continue;
    }
    const u64 n = residue(d.delta, p);
    if (n == 0) {
      roots_[i] = 0;
    } else if (arith::powmod(n, (p - 1) / 2, p) == 1) {
      roots_[i] = static_cast<i64>(tonelli_shanks(n, p));
    } else {
      roots_[i] = -1;
    }
  }
}

std::int64_t FormEnumerator::root_mod_prime(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(p));
  return roots_[static_cast<std::size_t>(it - primes_.begin())];
}

void FormEnumerator::collect(std::uint64_t a_lo, std::uint64_t a_hi, std::vector<QuadraticForm>& out) const {
  if (a_lo < 1) a_lo = 1;
  if (a_hi > a_max_) a_hi = a_max_;
  if (a_lo > a_hi) return;

  constexpr int kMaxDistinct = 16;
  const std::size_t size = a_hi - a_lo + 1;
  std::vector<u64> rem(size);
  std::vector<std::array<arith::PrimePower, kMaxDistinct>> factors(size);
  std::vector<std::uint8_t> count(size, 0);
  std::iota(rem.begin(), rem.end(), a_lo);

  for (u64 p : primes_) {
    if (p * p > a_hi) break;
    for (u64 m = (a_lo + p - 1) / p * p; m <= a_hi; m += p) {
      const std::size_t i = m - a_lo;
      int e = 0;
      while (rem[i] % p == 0) {
        rem[i] /= p;
        ++e;
      }
      factors[i][count[i]++] = {p, e};
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (rem[i] > 1) factors[i][count[i]++] = {rem[i], 1};
  }

  const i64 delta = delta_.delta;
  std::vector<Component> components;
  std::vector<u64> combined, next, scratch;
  std::vector<i64> bs;

  for (std::size_t i = 0; i < size; ++i) {
    const u64 a = a_lo + i;
    components.clear();
    bool solvable = true;
    int two_exp = 0;
    for (int k = 0; k < count[i] && solvable; ++k) {
      const auto [p, e] = factors[i][k];
      if (p == 2) {
        two_exp = e;
        continue;
      }
      const i64 r = root_mod_prime(p);
      if (r < 0) {
        solvable = false;
        break;
      }
      Component comp{1, {}};
      for (int j = 0; j < e; ++j) comp.modulus *= p;
      if (r == 0) {
        comp.roots = {0};
      } else {
        comp.roots = {static_cast<u64>(r), p - static_cast<u64>(r)};
      }
      if (e > 1) lift_roots(comp.roots, delta, p, 1, e, scratch);
      if (comp.roots.empty()) solvable = false;
      components.push_back(std::move(comp));
    }
    if (!solvable) continue;
    {
      Component comp{u64{1} << (two_exp + 2), {residue(delta, 2)}};
      lift_roots(comp.roots, delta, 2, 1, two_exp + 2, scratch);
      if (comp.roots.empty()) continue;
      components.push_back(std::move(comp));
    }

    // Chinese remaindering of the per-prime-power root sets.
    u64 modulus = 1;
    combined.assign(1, 0);
    for (const auto& comp : components) {
      const u64 m = comp.modulus;
      const i64 inv = inverse_mod(static_cast<i64>(modulus % m), static_cast<i64>(m));
      const u64 new_mod = modulus * m;
      next.clear();
      for (u64 x1 : combined) {
        for (u64 x2 : comp.roots) {
          i128 diff = static_cast<i128>(x2) - static_cast<i128>(x1 % m);
          diff %= static_cast<i128>(m);
          if (diff < 0) diff += m;
          const u64 t = static_cast<u64>(diff * inv % static_cast<i128>(m));
          next.push_back(x1 + modulus * t);
        }
      }
      combined.swap(next);
      modulus = new_mod;
    }

    bs.clear();
    const u64 two_a = 2 * a;
    for (u64 x : combined) {
      i64 b = static_cast<i64>(x % two_a);
      if (b > static_cast<i64>(a)) b -= static_cast<i64>(two_a);
      bs.push_back(b);
    }
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());

    const i64 ai = static_cast<i64>(a);
    for (i64 b : bs) {
      const i64 c = (b * b - delta) / (4 * ai);
      if (c < ai) continue;
      if ((b < 0) && (-b == ai || c == ai)) continue;
      if (std::gcd(std::gcd(ai, b < 0 ? -b : b), c) != 1) continue;
      out.push_back({ai, b, c});
    }
  }
}

std::vector<QuadraticForm> enumerate_parallel(const FactoredDiscriminant& d, AInterval range) {
  FormEnumerator enumerator(d);
  if (range.hi > enumerator.a_max()) range.hi = enumerator.a_max();
  if (range.lo < 1) range.lo = 1;
  if (range.lo > range.hi) return {};
  const std::uint64_t blocks = (range.hi - range.lo) / kBlockSize + 1;
  std::vector<std::vector<QuadraticForm>> parts(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(blocks); ++blk) {
    const std::uint64_t lo = range.lo + static_cast<std::uint64_t>(blk) * kBlockSize;
    const std::uint64_t hi = std::min(range.hi, lo + kBlockSize - 1);
    enumerator.collect(lo, hi, parts[static_cast<std::size_t>(blk)]);
  }
  std::vector<QuadraticForm> out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace moduli::kernel
