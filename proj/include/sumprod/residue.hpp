#pragma once

// Residue rings Z_m: modulus metadata, residue sets, inverses, primitive
// roots and discrete logarithms.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sumprod {

enum class ErrorKind {
  invalid_modulus,
  non_invertible,
  domain,
  incomplete_table,
  empty_input,
  modulus_mismatch,
  invalid_period,
  size_cap,
  range,
  infeasible,
  parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::uint64_t detail = 0)
      : std::runtime_error(what), kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Extra payload; for non_invertible this is gcd(a, m).
  std::uint64_t detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::uint64_t detail_;
};

using Residue = std::uint32_t;

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;
/// Sets over moduli up to this size keep a dense bit array.
inline constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

struct Modulus {
  std::uint64_t m = 0;
  bool is_prime = false;
  std::vector<PrimePower> factorization;
  std::vector<std::uint64_t> divisors;  // ascending, includes 1 and m
  double divisor_halfpower_sum = 0.0;   // sum of sqrt(d) over d | m, d < m
};

using ModulusPtr = std::shared_ptr<const Modulus>;

Modulus make_modulus(std::uint64_t m);
ModulusPtr make_modulus_ptr(std::uint64_t m);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
/// gcd(a, m) with gcd(0, m) = m.
inline std::uint64_t gcd_with_modulus(std::uint64_t a, std::uint64_t m) {
  return a == 0 ? m : gcd(a, m);
}

inline Residue mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  // a, b < m <= 2^31, so the product fits in 62 bits.
  return static_cast<Residue>((a * b) % m);
}
inline Residue add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return static_cast<Residue>(s >= m ? s - m : s);
}
inline Residue sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<Residue>(a >= b ? a - b : a + m - b);
}
Residue pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

bool is_prime(std::uint64_t n);
std::vector<PrimePower> factorize(std::uint64_t n);

/// A subset of Z_m. Elements are kept sorted; moduli up to kDenseLimit also
/// carry a bit array for O(1) membership.
class ResidueSet {
 public:
  enum class Storage { automatic, dense, sparse };

  explicit ResidueSet(ModulusPtr modulus, std::vector<Residue> elements = {},
                      Storage storage = Storage::automatic);
  ResidueSet(const Modulus& modulus, std::vector<Residue> elements,
             Storage storage = Storage::automatic)
      : ResidueSet(std::make_shared<const Modulus>(modulus), std::move(elements),
                   storage) {}

  static ResidueSet full(ModulusPtr modulus);
  /// Builds a set from a bit array of length m (words beyond m must be zero).
  static ResidueSet from_bits(ModulusPtr modulus, std::vector<std::uint64_t> bits);

  const Modulus& modulus() const { return *modulus_; }
  const ModulusPtr& modulus_ptr() const { return modulus_; }
  std::uint64_t m() const { return modulus_->m; }

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(std::uint64_t r) const;
  bool is_dense() const { return dense_; }

  std::span<const Residue> elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  /// Bit array view; empty when the set is stored sparsely.
  std::span<const std::uint64_t> bits() const { return bits_; }
  /// Bit array for this set regardless of storage (requires m <= kDenseLimit).
  std::vector<std::uint64_t> to_bits() const;

  ResidueSet with_storage(Storage storage) const {
    return ResidueSet(modulus_, elements_, storage);
  }

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.m() == b.m() && a.elements_ == b.elements_;
  }

 private:
  struct SortedTag {};
  ResidueSet(SortedTag, ModulusPtr modulus, std::vector<Residue> sorted,
             std::vector<std::uint64_t> bits, bool dense);

  ModulusPtr modulus_;
  std::vector<Residue> elements_;
  std::vector<std::uint64_t> bits_;
  bool dense_ = false;
};

inline std::size_t bit_words(std::uint64_t m) { return static_cast<std::size_t>((m + 63) / 64); }

void require_same_modulus(const ResidueSet& a, const ResidueSet& b);

/// b with a*b = 1 (mod m); throws non_invertible carrying gcd(a, m).
Residue mod_inverse(std::uint64_t a, const Modulus& mod);

/// Smallest primitive root of a prime modulus.
Residue find_generator(const Modulus& mod);

/// table[a] = x with g^x = a for a in [1, p); table[0] is unused (0).
std::vector<std::uint32_t> dlog_table(const Modulus& mod, Residue g);

/// Discrete-log context for a prime field: generator, log and power tables.
struct DiscreteLog {
  explicit DiscreteLog(ModulusPtr field);

  ModulusPtr field;
  ModulusPtr exponents;  // Z_{p-1}; null when p = 2
  Residue generator;
  std::vector<std::uint32_t> log;    // indexed by residue
  std::vector<Residue> power;        // power[x] = g^x, x in [0, p-1)
};

/// d0 = min over a in A of gcd(a, m).
std::uint64_t min_gcd(const ResidueSet& a);

/// {a in A : gcd(a, m) = 1}.
ResidueSet unit_part(const ResidueSet& a);

}  // namespace sumprod
