#include "moduli/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "moduli/error.hpp"

namespace moduli::arith {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(static_cast<std::uint32_t>(kTrialLimit));
  return primes;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_large(d, out);
  factor_large(n / d, out);
}

}  // namespace

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = powmod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

Factorization factor(u64 n) {
  Factorization f;
  if (n <= 1) return f;
  for (std::uint32_t p : trial_primes()) {
    if (static_cast<u64>(p) * p > n) break;
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (n > 1) {
    std::vector<u64> rest;
    factor_large(n, rest);
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) {
      if (!f.empty() && f.back().prime == p) {
        ++f.back().exponent;
      } else {
        f.push_back({p, 1});
      }
    }
  }
  return f;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

int omega(const Factorization& f) { return static_cast<int>(f.size()); }

int omega(u64 n) {
  if (n == 0) throw Error(ErrorKind::DomainError, "omega requires n >= 1");
  return omega(factor(n));
}

u64 sigma_k(const Factorization& f, int k) {
  if (k != 0 && k != 1) throw Error(ErrorKind::DomainError, "sigma_k supports k in {0, 1}");
  u64 result = 1;
  for (const auto& [p, e] : f) {
    if (k == 0) {
      result *= static_cast<u64>(e + 1);
    } else {
      u64 term = 1, pk = 1;
      for (int i = 0; i < e; ++i) {
        pk *= p;
        term += pk;
      }
      result *= term;
    }
  }
  return result;
}

u64 sigma_k(u64 n, int k) {
  if (n == 0) throw Error(ErrorKind::DomainError, "sigma_k requires n >= 1");
  return sigma_k(factor(n), k);
}

u64 gcd2(std::int64_t m, std::int64_t n) {
  if (m == 0 && n == 0) throw Error(ErrorKind::DomainError, "gcd2 of (0, 0) is undefined");
  u64 g = std::gcd(static_cast<u64>(m < 0 ? -m : m), static_cast<u64>(n < 0 ? -n : n));
  u64 d = 1;
  for (const auto& [p, e] : factor(g)) {
    for (int i = 0; i < e / 2; ++i) d *= p;
  }
  return d;
}

int big_F_exponent(const mpz_class& abs_delta) {
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), abs_delta.get_mpz_t());
  mpz_class primorial = 1;
  int k = 0;
  mpz_class p = 2;
  for (;;) {
    mpz_class next = primorial * p;
    if (next > root) break;
    primorial = next;
    ++k;
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  return k;
}

mpz_class big_F(const mpz_class& abs_delta) {
  mpz_class f;
  mpz_ui_pow_ui(f.get_mpz_t(), 2, static_cast<unsigned long>(big_F_exponent(abs_delta)));
  return f;
}

u64 big_F(const FactoredDiscriminant& d) { return big_F(mpz_class(std::to_string(d.abs_delta()))).get_ui(); }

Real log_big_E(const mpz_class& abs_delta) {
  Real log_abs = boost::multiprecision::log(from_integer(abs_delta));
  return big_F_exponent(abs_delta) * log2_const() + 4 * boost::multiprecision::log(log_abs);
}

Real big_E(const mpz_class& abs_delta) {
  if (abs_delta < 2) throw Error(ErrorKind::DomainError, "E(delta) requires |delta| >= 2");
  Real log_abs = boost::multiprecision::log(from_integer(abs_delta));
  return from_integer(big_F(abs_delta)) * boost::multiprecision::pow(log_abs, 4);
}

Real big_E(const FactoredDiscriminant& d) { return big_E(mpz_class(std::to_string(d.abs_delta()))); }

bool robin_check(u64 n) {
  if (n < 3) throw Error(ErrorKind::DomainError, "robin_check requires n >= 3");
  double log_n = std::log(static_cast<double>(n));
  return omega(n) <= 1.4 * log_n / std::log(log_n);
}

ArithProfile arith_profile(const FactoredDiscriminant& d) {
  ArithProfile profile;
  profile.delta = d;
  profile.F_value = big_F(d);
  profile.E_value = big_E(d);
  Factorization ft = factor(d.modified_conductor);
  profile.sigma0_ftilde = sigma_k(ft, 0);
  profile.sigma1_ftilde = sigma_k(ft, 1);
  return profile;
}

}  // namespace moduli::arith
