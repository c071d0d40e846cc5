#pragma once

#include <omp.h>

#include <cstdint>
#include <vector>

#include "moduli/forms.hpp"

namespace moduli::kernel {

/// Reduced-form enumeration by modular square roots: for each a the admissible
/// b are the solutions of b^2 = delta (mod 4a) in (-a, a]. Work per a is
/// proportional to the number of roots, not to a.
class FormEnumerator {
 public:
  explicit FormEnumerator(const FactoredDiscriminant& d);

  const FactoredDiscriminant& discriminant() const { return delta_; }
  std::uint64_t a_max() const { return a_max_; }

  /// Appends the reduced primitive forms with a in [a_lo, a_hi] in (a, b) order.
  void collect(std::uint64_t a_lo, std::uint64_t a_hi, std::vector<QuadraticForm>& out) const;

 private:
  std::int64_t root_mod_prime(std::uint64_t p) const;

  FactoredDiscriminant delta_;
  std::uint64_t a_max_ = 0;
  std::vector<std::uint32_t> primes_;
  /// Square root of delta mod primes_[i]; -1 when delta is a non-residue.
  std::vector<std::int64_t> roots_;
};

inline constexpr std::uint64_t kBlockSize = 1 << 14;

/// Parallel enumeration over blocks of a; blocks are merged in a-order so the
/// result does not depend on the thread count.
std::vector<QuadraticForm> enumerate_parallel(const FactoredDiscriminant& d, AInterval range);

/// Counts forms satisfying `pred` over blocks of a with an OpenMP reduction.
template <class Pred>
std::uint64_t count_forms_if(const FormEnumerator& enumerator, AInterval range, Pred pred) {
  if (range.hi > enumerator.a_max()) range.hi = enumerator.a_max();
  if (range.lo < 1) range.lo = 1;
  if (range.lo > range.hi) return 0;
  const std::uint64_t blocks = (range.hi - range.lo) / kBlockSize + 1;
  std::uint64_t total = 0;
#pragma omp parallel reduction(+ : total)
  {
    std::vector<QuadraticForm> buffer;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(blocks); ++blk) {
      const std::uint64_t lo = range.lo + static_cast<std::uint64_t>(blk) * kBlockSize;
      const std::uint64_t hi = std::min(range.hi, lo + kBlockSize - 1);
      buffer.clear();
      enumerator.collect(lo, hi, buffer);
      for (const auto& q : buffer) {
        if (pred(q)) ++total;
      }
    }
  }
  return total;
}

}  // namespace moduli::kernel
