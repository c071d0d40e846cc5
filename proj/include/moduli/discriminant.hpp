#pragma once

#include <cstdint>

namespace moduli {

/// A negative discriminant split as delta = fundamental * conductor^2.
struct FactoredDiscriminant {
  std::int64_t delta = 0;
  std::int64_t fundamental = 0;
  std::uint64_t conductor = 0;
  /// conductor when fundamental == 1 mod 4, 2 * conductor otherwise;
  /// delta / modified_conductor^2 is squarefree.
  std::uint64_t modified_conductor = 0;

  std::uint64_t abs_delta() const { return static_cast<std::uint64_t>(-delta); }
  friend bool operator==(const FactoredDiscriminant&, const FactoredDiscriminant&) = default;
};

/// Largest supported |delta|: keeps b^2 - 4ac and every form coefficient
/// inside int64 with headroom for the 128-bit intermediates.
inline constexpr std::uint64_t kMaxAbsDelta = std::uint64_t{1} << 62;

}  // namespace moduli
