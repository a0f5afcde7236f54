#include "sumprod/set_algebra.hpp"

#include <algorithm>
#include <span>

namespace sumprod {

MultiplicityVector::MultiplicityVector(ModulusPtr modulus) : modulus_(std::move(modulus)) {
  if (modulus_->m <= kDenseCountsLimit) dense_.assign(modulus_->m, 0);
}

std::uint64_t MultiplicityVector::count(std::uint64_t t) const {
  if (t >= modulus_->m) return 0;
  if (is_dense()) return dense_[t];
  auto it = sparse_.find(t);
  return it == sparse_.end() ? 0 : it->second;
}

void MultiplicityVector::add(std::uint64_t t, std::uint64_t c) {
  if (t >= modulus_->m) throw Error(ErrorKind::range, "index outside the modulus");
  if (c == 0) return;
  if (is_dense())
    dense_[t] += c;
  else
    sparse_[t] += c;
  total_ += c;
}

ResidueSet MultiplicityVector::support() const {
  std::vector<Residue> s;
  for_each_nonzero([&](std::uint64_t t, std::uint64_t) { s.push_back(static_cast<Residue>(t)); });
  return ResidueSet(modulus_, std::move(s));
}

namespace {

// Collects residues produced by `emit` into a set, marking a byte array
// when the modulus is small enough.
template <class Producer>
ResidueSet collect(const ModulusPtr& mod, Producer&& produce) {
  const std::uint64_t m = mod->m;
  if (m <= kDenseLimit) {
    std::vector<std::uint64_t> bits(bit_words(m), 0);
    produce([&](Residue r) { bits[r >> 6] |= std::uint64_t{1} << (r & 63); });
    return ResidueSet::from_bits(mod, std::move(bits));
  }
  std::vector<Residue> out;
  produce([&](Residue r) { out.push_back(r); });
  return ResidueSet(mod, std::move(out));
}

// Reads `n` <= 64 bits of `src` starting at bit `pos`.
std::uint64_t extract_bits(std::span<const std::uint64_t> src, std::size_t pos, unsigned n) {
  const std::size_t w = pos >> 6;
  const unsigned b = pos & 63;
  std::uint64_t v = src[w] >> b;
  if (b != 0 && w + 1 < src.size()) v |= src[w + 1] << (64 - b);
  return n == 64 ? v : v & ((std::uint64_t{1} << n) - 1);
}

// dst[dpos, dpos+len) |= src[spos, spos+len)
void or_range(std::span<std::uint64_t> dst, std::size_t dpos, std::span<const std::uint64_t> src,
              std::size_t spos, std::size_t len) {
  while (len > 0) {
    const unsigned db = dpos & 63;
    const auto take = static_cast<unsigned>(std::min<std::size_t>(64 - db, len));
    dst[dpos >> 6] |= extract_bits(src, spos, take) << db;
    dpos += take;
    spos += take;
    len -= take;
  }
}

// dst |= src rotated so that bit t lands on (t + shift) mod m.
void or_rotated(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::size_t m,
                std::size_t shift) {
  or_range(dst, shift, src, 0, m - shift);
  if (shift != 0) or_range(dst, 0, src, m - shift, shift);
}

bool all_set(std::span<const std::uint64_t> bits, std::size_t m) {
  for (std::size_t w = 0; w + 1 < bits.size(); ++w)
    if (bits[w] != ~std::uint64_t{0}) return false;
  const unsigned tail = m & 63;
  const std::uint64_t last_mask = tail == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
  return bits.back() == last_mask;
}

}  // namespace

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const std::uint64_t m = a.m();
  return collect(a.modulus_ptr(), [&](auto&& emit) {
    for (Residue x : a)
      for (Residue y : b) emit(add_mod(x, y, m));
  });
}

ResidueSet sumset_fast(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const std::uint64_t m = a.m();
  if (m > kDenseLimit) return sumset(a, b);
  const ResidueSet& shifts = a.size() <= b.size() ? a : b;
  const ResidueSet& base = a.size() <= b.size() ? b : a;
  const std::vector<std::uint64_t> base_bits = base.to_bits();
  std::vector<std::uint64_t> out(bit_words(m), 0);
  if (!base.empty()) {
    for (Residue s : shifts) {
      or_rotated(out, base_bits, m, s);
      if (all_set(out, m)) break;
    }
  }
  return ResidueSet::from_bits(a.modulus_ptr(), std::move(out));
}

ResidueSet productset(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const std::uint64_t m = a.m();
  return collect(a.modulus_ptr(), [&](auto&& emit) {
    for (Residue x : a)
      for (Residue y : b) emit(mul_mod(x, y, m));
  });
}

ResidueSet productset_dlog(const ResidueSet& a, const ResidueSet& b, const DiscreteLog& dl) {
  require_same_modulus(a, b);
  if (dl.field->m != a.m())
    throw Error(ErrorKind::modulus_mismatch, "discrete-log table built for another field");
  if (!dl.exponents) return productset(a, b);  // F_2

  auto exponents_of = [&](const ResidueSet& s) {
    std::vector<Residue> e;
    e.reserve(s.size());
    for (Residue r : s)
      if (r != 0) e.push_back(dl.log[r]);
    return ResidueSet(dl.exponents, std::move(e));
  };
  const ResidueSet exp_sum = sumset_fast(exponents_of(a), exponents_of(b));
  std::vector<Residue> out;
  out.reserve(exp_sum.size() + 1);
  for (Residue x : exp_sum) out.push_back(dl.power[x]);
  const bool zero = (a.contains(0) && !b.empty()) || (b.contains(0) && !a.empty());
  if (zero) out.push_back(0);
  return ResidueSet(a.modulus_ptr(), std::move(out));
}

ResidueSet productset_fast(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const std::uint64_t m = a.m();
  // The discrete-log path costs O(p) to set up; only worth it for dense inputs.
  if (a.modulus().is_prime && m > 2 && m <= kDenseLimit &&
      static_cast<double>(a.size()) * static_cast<double>(b.size()) > 4.0 * static_cast<double>(m))
    return productset_dlog(a, b, DiscreteLog(a.modulus_ptr()));
  return productset(a, b);
}

ResidueSet dilate(std::uint64_t c, const ResidueSet& a) {
  const std::uint64_t m = a.m();
  c %= m;
  return collect(a.modulus_ptr(), [&](auto&& emit) {
    for (Residue x : a) emit(mul_mod(c, x, m));
  });
}

MultiplicityVector additive_rep(const ResidueSet& a, const ResidueSet& b, int sign) {
  require_same_modulus(a, b);
  if (sign != 1 && sign != -1) throw Error(ErrorKind::domain, "sign must be +1 or -1");
  const std::uint64_t m = a.m();
  MultiplicityVector v(a.modulus_ptr());
  for (Residue x : a)
    for (Residue y : b) v.add(sign > 0 ? add_mod(x, y, m) : sub_mod(x, y, m));
  return v;
}

MultiplicityVector unit_quotient_rep(const ResidueSet& x, const ResidueSet& a) {
  require_same_modulus(x, a);
  const Modulus& mod = a.modulus();
  const std::uint64_t m = mod.m;
  std::vector<Residue> inverses;
  inverses.reserve(a.size());
  for (Residue r : a) inverses.push_back(mod_inverse(r, mod));
  MultiplicityVector v(a.modulus_ptr());
  for (Residue xi : x)
    for (Residue inv : inverses) v.add(mul_mod(xi, inv, m));
  return v;
}

MultiplicityVector quotient_rep(const ResidueSet& x, const ResidueSet& a) {
  if (!a.modulus().is_prime)
    throw Error(ErrorKind::domain, "quotient_rep needs a prime modulus; use unit_quotient_rep");
  return unit_quotient_rep(x, a);
}

}  // namespace sumprod
