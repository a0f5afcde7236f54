#pragma once

// Reference computations for the test suites. Each one is written from the
// definition and shares no code path with the library routine it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include "sumprod/residue.hpp"

namespace oracle {

using sumprod::Residue;

inline std::vector<std::uint64_t> divisors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

inline double halfpower_sum(std::uint64_t m) {
  double s = 0.0;
  for (std::uint64_t d : divisors(m))
    if (d < m) s += std::sqrt(static_cast<double>(d));
  return s;
}

inline std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t p) {
  std::uint64_t x = g % p, order = 1;
  while (x != 1) {
    x = x * g % p;
    ++order;
  }
  return order;
}

inline std::uint64_t smallest_generator(std::uint64_t p) {
  if (p == 2) return 1;
  for (std::uint64_t g = 2;; ++g)
    if (multiplicative_order(g, p) == p - 1) return g;
}

inline std::set<std::uint64_t> sumset(const std::vector<Residue>& a, const std::vector<Residue>& b,
                                      std::uint64_t m) {
  std::set<std::uint64_t> out;
  for (auto x : a)
    for (auto y : b) out.insert((x + y) % m);
  return out;
}

inline std::set<std::uint64_t> productset(const std::vector<Residue>& a,
                                          const std::vector<Residue>& b, std::uint64_t m) {
  std::set<std::uint64_t> out;
  for (auto x : a)
    for (auto y : b) out.insert(std::uint64_t{x} * y % m);
  return out;
}

inline std::vector<Residue> as_vector(const std::set<std::uint64_t>& s) {
  return std::vector<Residue>(s.begin(), s.end());
}

inline std::vector<Residue> elements(const sumprod::ResidueSet& s) {
  return std::vector<Residue>(s.begin(), s.end());
}

/// Solutions of x a1^{-1} + a2 = y, counted as triples (a1, a2, y) whose
/// x = a1 (y - a2) lands in AA.
inline std::uint64_t quadruples(const std::vector<Residue>& a, std::uint64_t p) {
  const auto prod = productset(a, a, p);
  const auto sum = sumset(a, a, p);
  std::uint64_t j = 0;
  for (auto a1 : a)
    for (auto a2 : a)
      for (auto y : sum)
        if (prod.count(std::uint64_t{a1} * ((y + p - a2) % p) % p)) ++j;
  return j;
}

/// sum_t counts[t] exp(2 pi i n t / q), evaluated in long double.
inline std::complex<double> exp_sum(const std::vector<std::uint64_t>& support_with_mult,
                                    std::uint64_t n, std::uint64_t q) {
  std::complex<long double> acc{0.0L, 0.0L};
  for (auto t : support_with_mult) {
    const long double angle =
        2.0L * std::numbers::pi_v<long double> * static_cast<long double>((n * t) % q) /
        static_cast<long double>(q);
    acc += std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

/// |G cap {L+1, ..., L+M} mod p| by direct intersection.
inline std::uint64_t window_count(const std::vector<Residue>& g, std::uint64_t p,
                                  std::uint64_t offset, std::uint64_t length) {
  std::set<std::uint64_t> window;
  for (std::uint64_t i = 1; i <= length; ++i) window.insert((offset + i) % p);
  std::uint64_t c = 0;
  for (auto x : g) c += window.count(x);
  return c;
}

/// Elements of the subset of {lo, ..., lo + width - 1} encoded by mask.
inline std::vector<Residue> from_mask(std::uint64_t mask, Residue lo) {
  std::vector<Residue> out;
  for (Residue i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(lo + i);
  return out;
}

}  // namespace oracle
