#include "sumprod/residue.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace sumprod {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_modulus: return "invalid-modulus";
    case ErrorKind::non_invertible: return "non-invertible";
    case ErrorKind::domain: return "domain";
    case ErrorKind::incomplete_table: return "incomplete-table";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::modulus_mismatch: return "modulus-mismatch";
    case ErrorKind::invalid_period: return "invalid-period";
    case ErrorKind::size_cap: return "size-cap";
    case ErrorKind::range: return "range";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

Residue pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = (result * base) % m;
    base = (base * base) % m;
    exp >>= 1;
  }
  return static_cast<Residue>(result);
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.push_back({q, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t q = 3; q * q <= n; q += 2)
    if (n % q == 0) return false;
  return true;
}

Modulus make_modulus(std::uint64_t m) {
  if (m < 2 || m > kMaxModulus)
    throw Error(ErrorKind::invalid_modulus,
                "modulus must lie in [2, 2^31], got " + std::to_string(m), m);
  Modulus mod;
  mod.m = m;
  mod.factorization = factorize(m);

  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    small.push_back(d);
    if (d != m / d) large.push_back(m / d);
  }
  mod.divisors = std::move(small);
  mod.divisors.insert(mod.divisors.end(), large.rbegin(), large.rend());
  mod.is_prime = mod.divisors.size() == 2;

  double sum = 0.0;
  for (std::uint64_t d : mod.divisors)
    if (d < m) sum += std::sqrt(static_cast<double>(d));
  mod.divisor_halfpower_sum = sum;
  return mod;
}

ModulusPtr make_modulus_ptr(std::uint64_t m) {
  return std::make_shared<const Modulus>(make_modulus(m));
}

// ResidueSet

namespace {

bool choose_dense(ResidueSet::Storage storage, std::uint64_t m) {
  switch (storage) {
    case ResidueSet::Storage::dense:
      if (m > kDenseLimit)
        throw Error(ErrorKind::range, "dense storage requested above 2^24");
      return true;
    case ResidueSet::Storage::sparse: return false;
    case ResidueSet::Storage::automatic: break;
  }
  return m <= kDenseLimit;
}

std::vector<std::uint64_t> bits_of(std::span<const Residue> sorted, std::uint64_t m) {
  std::vector<std::uint64_t> bits(bit_words(m), 0);
  for (Residue r : sorted) bits[r >> 6] |= std::uint64_t{1} << (r & 63);
  return bits;
}

}  // namespace

ResidueSet::ResidueSet(ModulusPtr modulus, std::vector<Residue> elements, Storage storage)
    : modulus_(std::move(modulus)), elements_(std::move(elements)) {
  if (!modulus_) throw Error(ErrorKind::invalid_modulus, "null modulus");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (!elements_.empty() && elements_.back() >= modulus_->m)
    throw Error(ErrorKind::range, "residue " + std::to_string(elements_.back()) +
                                      " not in [0, " + std::to_string(modulus_->m) + ")");
  dense_ = choose_dense(storage, modulus_->m);
  if (dense_) bits_ = bits_of(elements_, modulus_->m);
}

ResidueSet::ResidueSet(SortedTag, ModulusPtr modulus, std::vector<Residue> sorted,
                       std::vector<std::uint64_t> bits, bool dense)
    : modulus_(std::move(modulus)), elements_(std::move(sorted)), bits_(std::move(bits)),
      dense_(dense) {}

ResidueSet ResidueSet::full(ModulusPtr modulus) {
  std::vector<Residue> all(modulus->m);
  std::iota(all.begin(), all.end(), Residue{0});
  return ResidueSet(std::move(modulus), std::move(all));
}

ResidueSet ResidueSet::from_bits(ModulusPtr modulus, std::vector<std::uint64_t> bits) {
  const std::uint64_t m = modulus->m;
  if (m > kDenseLimit || bits.size() != bit_words(m))
    throw Error(ErrorKind::range, "bit array does not match modulus");
  std::vector<Residue> elems;
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word) {
      const auto r = static_cast<Residue>(w * 64 + std::countr_zero(word));
      if (r >= m) throw Error(ErrorKind::range, "bit set beyond modulus");
      elems.push_back(r);
      word &= word - 1;
    }
  }
  return ResidueSet(SortedTag{}, std::move(modulus), std::move(elems), std::move(bits), true);
}

bool ResidueSet::contains(std::uint64_t r) const {
  if (r >= modulus_->m) return false;
  if (dense_) return (bits_[r >> 6] >> (r & 63)) & 1;
  return std::binary_search(elements_.begin(), elements_.end(), static_cast<Residue>(r));
}

std::vector<std::uint64_t> ResidueSet::to_bits() const {
  if (dense_) return bits_;
  if (modulus_->m > kDenseLimit) throw Error(ErrorKind::range, "modulus too large for bit array");
  return bits_of(elements_, modulus_->m);
}

void require_same_modulus(const ResidueSet& a, const ResidueSet& b) {
  if (a.m() != b.m())
    throw Error(ErrorKind::modulus_mismatch, "sets live in Z_" + std::to_string(a.m()) +
                                                 " and Z_" + std::to_string(b.m()));
}

// Inverses, generators, logs

Residue mod_inverse(std::uint64_t a, const Modulus& mod) {
  const std::uint64_t m = mod.m;
  a %= m;
  const std::uint64_t g = gcd_with_modulus(a, m);
  if (g != 1)
    throw Error(ErrorKind::non_invertible,
                std::to_string(a) + " is not invertible mod " + std::to_string(m) +
                    " (gcd " + std::to_string(g) + ")",
                g);
  std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  std::int64_t inv = old_s % static_cast<std::int64_t>(m);
  if (inv < 0) inv += static_cast<std::int64_t>(m);
  return static_cast<Residue>(inv);
}

Residue find_generator(const Modulus& mod) {
  if (!mod.is_prime)
    throw Error(ErrorKind::domain, "primitive roots are only searched for prime moduli");
  const std::uint64_t p = mod.m;
  if (p == 2) return 1;
  const auto order_factors = factorize(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    const bool primitive = std::all_of(order_factors.begin(), order_factors.end(),
                                       [&](const PrimePower& f) {
                                         return pow_mod(g, (p - 1) / f.prime, p) != 1;
                                       });
    if (primitive) return static_cast<Residue>(g);
  }
  throw Error(ErrorKind::domain, "no primitive root found");
}

std::vector<std::uint32_t> dlog_table(const Modulus& mod, Residue g) {
  if (!mod.is_prime) throw Error(ErrorKind::domain, "discrete logs need a prime modulus");
  const std::uint64_t p = mod.m;
  if (g == 0 || g >= p) throw Error(ErrorKind::incomplete_table, "generator out of range");
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> table(p, unset);
  std::uint64_t cur = 1;
  for (std::uint64_t x = 0; x + 1 < p; ++x) {
    if (table[cur] != unset)
      throw Error(ErrorKind::incomplete_table,
                  std::to_string(g) + " has order " + std::to_string(x) + " mod " +
                      std::to_string(p),
                  x);
    table[cur] = static_cast<std::uint32_t>(x);
    cur = (cur * g) % p;
  }
  table[0] = 0;
  return table;
}

DiscreteLog::DiscreteLog(ModulusPtr field_)
    : field(std::move(field_)),
      exponents(field->m > 2 ? make_modulus_ptr(field->m - 1) : nullptr),
      generator(find_generator(*field)),
      log(dlog_table(*field, generator)) {
  const std::uint64_t p = field->m;
  power.resize(p - 1);
  std::uint64_t cur = 1;
  for (auto& v : power) {
    v = static_cast<Residue>(cur);
    cur = (cur * generator) % p;
  }
}

std::uint64_t min_gcd(const ResidueSet& a) {
  if (a.empty()) throw Error(ErrorKind::empty_input, "min_gcd of an empty set");
  std::uint64_t best = a.m();
  for (Residue r : a) best = std::min(best, gcd_with_modulus(r, a.m()));
  return best;
}

ResidueSet unit_part(const ResidueSet& a) {
  std::vector<Residue> units;
  for (Residue r : a)
    if (gcd_with_modulus(r, a.m()) == 1) units.push_back(r);
  return ResidueSet(a.modulus_ptr(), std::move(units),
                    a.is_dense() ? ResidueSet::Storage::dense : ResidueSet::Storage::sparse);
}

}  // namespace sumprod
