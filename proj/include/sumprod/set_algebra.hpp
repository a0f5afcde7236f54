#pragma once

// Sum sets, product sets, dilations and representation functions.

#include <cstdint>
#include <map>
#include <vector>

#include "sumprod/residue.hpp"

namespace sumprod {

/// Representation function r(t) over Z_m. Dense array up to kDenseCountsLimit,
/// ordered map above it.
class MultiplicityVector {
 public:
  static constexpr std::uint64_t kDenseCountsLimit = std::uint64_t{1} << 20;

  explicit MultiplicityVector(ModulusPtr modulus);

  const Modulus& modulus() const { return *modulus_; }
  const ModulusPtr& modulus_ptr() const { return modulus_; }
  std::uint64_t m() const { return modulus_->m; }
  bool is_dense() const { return !dense_.empty(); }

  std::uint64_t count(std::uint64_t t) const;
  void add(std::uint64_t t, std::uint64_t c = 1);
  std::uint64_t total_mass() const { return total_; }

  /// Visits (t, count) for count > 0 in increasing t.
  template <class F>
  void for_each_nonzero(F&& f) const {
    if (is_dense()) {
      for (std::size_t t = 0; t < dense_.size(); ++t)
        if (dense_[t]) f(static_cast<std::uint64_t>(t), dense_[t]);
    } else {
      for (const auto& [t, c] : sparse_) f(t, c);
    }
  }

  ResidueSet support() const;

 private:
  ModulusPtr modulus_;
  std::vector<std::uint64_t> dense_;
  std::map<std::uint64_t, std::uint64_t> sparse_;
  std::uint64_t total_ = 0;
};

/// A + B by direct enumeration of pairs.
ResidueSet sumset(const ResidueSet& a, const ResidueSet& b);
/// A + B by unions of rotated bit arrays; falls back to sumset above 2^24.
ResidueSet sumset_fast(const ResidueSet& a, const ResidueSet& b);

/// AB by direct enumeration of pairs.
ResidueSet productset(const ResidueSet& a, const ResidueSet& b);
/// AB over a prime field through the exponent sum set in Z_{p-1}; 0 is
/// absorbing and handled separately.
ResidueSet productset_dlog(const ResidueSet& a, const ResidueSet& b, const DiscreteLog& dl);
/// Picks the discrete-log path for dense prime-field inputs, else productset.
ResidueSet productset_fast(const ResidueSet& a, const ResidueSet& b);

/// {c*a : a in A}.
ResidueSet dilate(std::uint64_t c, const ResidueSet& a);

/// counts[t] = #{(a, b) : a + sign*b = t}; sign must be +1 or -1.
MultiplicityVector additive_rep(const ResidueSet& a, const ResidueSet& b, int sign);

/// counts[t] = #{(x, a) in X x A : x * a^{-1} = t} over a prime field.
MultiplicityVector quotient_rep(const ResidueSet& x, const ResidueSet& a);

/// Same as quotient_rep for any modulus, provided every element of A is a unit.
MultiplicityVector unit_quotient_rep(const ResidueSet& x, const ResidueSet& a);

}  // namespace sumprod
