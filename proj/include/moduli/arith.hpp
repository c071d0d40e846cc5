#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "moduli/discriminant.hpp"
#include "moduli/numeric.hpp"

namespace moduli::arith {

struct PrimePower {
  std::uint64_t prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime(std::uint64_t n);
/// Trial division up to 10^6, then Miller-Rabin / Pollard rho on the cofactor.
Factorization factor(std::uint64_t n);
std::uint64_t isqrt(std::uint64_t n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

int omega(std::uint64_t n);
int omega(const Factorization& f);
/// sigma_k for k in {0, 1}.
std::uint64_t sigma_k(std::uint64_t n, int k);
std::uint64_t sigma_k(const Factorization& f, int k);
/// Largest d with d^2 | m and d^2 | n.
std::uint64_t gcd2(std::int64_t m, std::int64_t n);

/// Number of primes k with p_1 * ... * p_k <= floor(sqrt(abs_delta)).
int big_F_exponent(const mpz_class& abs_delta);
/// F = max{2^omega(a) : a <= |delta|^{1/2}}, via the largest primorial.
mpz_class big_F(const mpz_class& abs_delta);
std::uint64_t big_F(const FactoredDiscriminant& d);
/// E = F * (log|delta|)^4.
Real big_E(const mpz_class& abs_delta);
Real big_E(const FactoredDiscriminant& d);
Real log_big_E(const mpz_class& abs_delta);

/// omega(n) <= 1.4 log n / log log n; throws DomainError for n < 3.
bool robin_check(std::uint64_t n);

struct ArithProfile {
  FactoredDiscriminant delta;
  std::uint64_t F_value = 0;
  Real E_value;
  std::uint64_t sigma0_ftilde = 0;
  std::uint64_t sigma1_ftilde = 0;
};
ArithProfile arith_profile(const FactoredDiscriminant& d);

}  // namespace moduli::arith
