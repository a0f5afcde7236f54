#include "sumprod/construct.hpp"

#include <algorithm>
#include <cmath>

#include "sumprod/set_algebra.hpp"

namespace sumprod {

ResidueSet power_prefix(const ModulusPtr& field, Residue g, std::uint64_t length) {
  const std::uint64_t p = field->m;
  if (length < 1 || length > p - 1)
    throw Error(ErrorKind::range, "prefix length must lie in [1, p-1], got " +
                                      std::to_string(length));
  std::vector<Residue> powers;
  powers.reserve(length);
  std::uint64_t cur = 1;
  for (std::uint64_t x = 1; x <= length; ++x) {
    cur = (cur * g) % p;
    powers.push_back(static_cast<Residue>(cur));
  }
  ResidueSet out(field, std::move(powers));
  if (out.size() != length)
    throw Error(ErrorKind::domain, std::to_string(g) + " is not a primitive root");
  return out;
}

std::vector<std::uint64_t> window_counts(const ResidueSet& g, std::uint64_t length) {
  const std::uint64_t p = g.m();
  if (length < 1 || length > p - 1) throw Error(ErrorKind::range, "window length out of range");
  std::vector<std::uint8_t> hit(p, 0);
  for (Residue r : g) hit[r] = 1;

  std::vector<std::uint64_t> counts(p);
  std::uint64_t c = 0;
  for (std::uint64_t t = 1; t <= length; ++t) c += hit[t % p];
  counts[0] = c;
  // Window L+1 drops L+1 and gains L+M+1.
  for (std::uint64_t L = 0; L + 1 < p; ++L) {
    c -= hit[(L + 1) % p];
    c += hit[(L + length + 1) % p];
    counts[L + 1] = c;
  }
  return counts;
}

WindowChoice best_window(const ResidueSet& g, std::uint64_t length) {
  const auto counts = window_counts(g, length);
  const auto it = std::max_element(counts.begin(), counts.end());
  return {static_cast<std::uint64_t>(it - counts.begin()), *it};
}

std::uint64_t construction_length(std::uint64_t p, std::uint64_t n) {
  const std::uint64_t target = p * n;
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(target)));
  while (root * root > target) --root;
  while (root * root < target) ++root;
  return root;
}

ExtremalConstruction build_extremal(std::uint64_t p, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::range, "target size must be positive");
  const ModulusPtr field = make_modulus_ptr(p);
  if (!field->is_prime) throw Error(ErrorKind::domain, std::to_string(p) + " is not prime");
  const std::uint64_t length = construction_length(p, n);
  if (length > p - 1)
    throw Error(ErrorKind::infeasible,
                "M = ceil(sqrt(pN)) = " + std::to_string(length) + " exceeds p - 1", length);

  const Residue g = find_generator(*field);
  ResidueSet prefix = power_prefix(field, g, length);
  const WindowChoice window = best_window(prefix, length);

  std::vector<Residue> picked;
  for (Residue r : prefix) {  // ascending representatives
    const std::uint64_t pos = (r + p - window.offset - 1) % p;  // 0-based slot in the window
    if (pos < length) picked.push_back(r);
    if (picked.size() == n) break;
  }
  if (picked.size() < n)
    throw Error(ErrorKind::infeasible, "window holds fewer than N powers", picked.size());

  ResidueSet a(field, std::move(picked));
  const std::uint64_t size_sum = sumset_fast(a, a).size();
  const std::uint64_t size_prod = productset_fast(a, a).size();
  return ExtremalConstruction{.p = p,
                              .n = n,
                              .g = g,
                              .length = length,
                              .window = window,
                              .prefix = std::move(prefix),
                              .a = std::move(a),
                              .size_sum = size_sum,
                              .size_prod = size_prod,
                              .max_size = std::max(size_sum, size_prod)};
}

}  // namespace sumprod
