#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "moduli/forms.hpp"

/// Serial reference implementations. They favour obviousness over speed and
/// back the tests and benchmarks of the optimised kernels.
namespace moduli::reference {

/// Scans every b in [-a, a] for every a and keeps (a, b, c) when 4a | b^2 - delta.
std::vector<QuadraticForm> enumerate_reduced_forms(std::int64_t delta);
std::uint64_t class_number(std::int64_t delta);

/// max over a <= floor(sqrt(n)) of 2^omega(a) using a sieve of omega up to the bound.
std::uint64_t big_F_bruteforce(std::uint64_t abs_delta);

/// omega(a) for all a <= n by sieving.
std::vector<std::uint8_t> omega_table(std::uint32_t n);

/// The fundamental part by scanning every d with d^2 | n, largest first.
struct Decomposition {
  std::int64_t fundamental;
  std::uint64_t conductor;
};
Decomposition decompose_bruteforce(std::int64_t delta);

}  // namespace moduli::reference

namespace moduli::reference {

/// Counts every reduced form whose root is within eps of xi. Non-square
/// |delta| makes |root - xi|^2 - eps^2 irrational, so its sign is read off a
/// 168-bit evaluation; square |delta| is handled in exact rationals.
std::uint64_t cm_count(std::int64_t delta, const mpq_class& xi_re, const mpq_class& xi_im, const mpq_class& eps);

}  // namespace moduli::reference
