#pragma once

// Sets with small sum and product sets: the first M powers of a primitive
// root intersected with the cyclic interval of length M that catches the
// most of them. With M = ceil(sqrt(pN)) the best interval holds at least
// ceil(M^2/p) >= N powers, and any N of them satisfy
// max{|A+A|, |AA|} <= 2M - 1.

#include <cstdint>
#include <vector>

#include "sumprod/residue.hpp"

namespace sumprod {

/// {g^x : 1 <= x <= M}.
ResidueSet power_prefix(const ModulusPtr& field, Residue g, std::uint64_t length);

/// counts[L] = |G cap {L+1, ..., L+M} (mod p)| for every L in [0, p).
std::vector<std::uint64_t> window_counts(const ResidueSet& g, std::uint64_t length);

struct WindowChoice {
  std::uint64_t offset = 0;  // L
  std::uint64_t count = 0;
};

/// Offset with the largest window count; smallest L on ties.
WindowChoice best_window(const ResidueSet& g, std::uint64_t length);

struct ExtremalConstruction {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  Residue g = 0;
  std::uint64_t length = 0;  // M
  WindowChoice window;
  ResidueSet prefix;
  ResidueSet a;
  std::uint64_t size_sum = 0;
  std::uint64_t size_prod = 0;
  std::uint64_t max_size = 0;

  std::uint64_t structural_cap() const { return 2 * length - 1; }
};

/// ceil(sqrt(p n)), exact.
std::uint64_t construction_length(std::uint64_t p, std::uint64_t n);

ExtremalConstruction build_extremal(std::uint64_t p, std::uint64_t n);

}  // namespace sumprod
