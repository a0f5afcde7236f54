#pragma once

// Sum-product lower bounds over F_p and Z_m, with every intermediate
// inequality of their proofs evaluated on concrete sets.
//
// Prime field: for A in F_p \ {0},
//     |A+A||AA| >= 1/4 * min{ p|A|, |A|^4/p }.
// The constant comes from the master inequality
//     |A|^3 <= |AA||A|^2|A+A|/p + sqrt(p|AA||A|) * sqrt(|A||A+A|):
// whichever term carries half of |A|^3 yields |A+A||AA| >= p|A|/2 or
// >= |A|^4/(4p).
//
// Residue ring: for nonempty A in Z_m with D = sum_{d|m, d<m} sqrt(d),
//     |A+A||AA| >= 1/64 * min{ m|A|, |A|^4/(m D^2) }.
// Either |A|^2 <= 4mD^2/d0 and the bound follows from |AA| >= |A|/d0 with
// constant 1/4, or more than half of A are units and the prime-field
// argument (with a factor 2 for the trivial frequency and the divisor
// grouping) applied to A' = A cap Z_m^* gives constant 1/4 in terms of |A'|,
// which is 1/64 in terms of |A|.

#include <cstdint>
#include <optional>
#include <vector>

#include "sumprod/residue.hpp"

namespace sumprod {

inline constexpr double kPrimeConstant = 1.0 / 4.0;
inline constexpr double kRingConstant = 1.0 / 64.0;

/// Exact number of solutions of x*a1^{-1} + a2 = y with
/// (x, a1, a2, y) in AA x A x A x (A+A), via representation functions.
/// Prime modulus, 0 not in A.
std::uint64_t count_quadruples(const ResidueSet& a);

/// The same count for any modulus when every element of A is a unit.
std::uint64_t count_unit_quadruples(const ResidueSet& a);

/// Literal four-fold loop over AA x A x A x (A+A). Reference only; refuses
/// inputs with |AA||A|^2|A+A| > 10^9.
std::uint64_t count_quadruples_bruteforce(const ResidueSet& a);

struct TheoremOneReport {
  std::uint64_t p = 0;
  std::uint64_t size_a = 0;
  std::uint64_t size_sum = 0;
  std::uint64_t size_prod = 0;
  std::uint64_t lhs = 0;  // |A+A| |AA|
  double term_pa = 0.0;   // p|A|
  double term_a4p = 0.0;  // |A|^4 / p
  double bound = 0.0;
  double ratio = 0.0;
  // Proof diagnostics, on A \ {0}.
  bool stripped_zero = false;
  std::uint64_t j = 0;
  std::uint64_t j_lower = 0;  // |A|^3
  double fourier_max = 0.0;   // max_{n != 0} |sum_{x in AA, a in A} e_p(n x/a)|
  double fourier_cap = 0.0;   // sqrt(p |AA| |A|)
  double master_term1 = 0.0;  // |AA||A|^2|A+A| / p
  double master_term2 = 0.0;  // sqrt(p|AA||A|) sqrt(|A||A+A|)
  double cs_sum = 0.0;        // sum_n |A^(n)| |(A+A)^(n)|
  double cs_cap = 0.0;        // sqrt(p|A|) sqrt(p|A+A|)

  bool constant_holds() const { return ratio >= kPrimeConstant; }
  bool master_holds() const {
    return static_cast<double>(j_lower) <= (master_term1 + master_term2) * (1.0 + 1e-9);
  }
  bool j_holds() const { return j >= j_lower; }
  bool fourier_holds() const { return fourier_max <= fourier_cap * (1.0 + 1e-9); }
  bool cs_holds() const { return cs_sum <= cs_cap * (1.0 + 1e-9); }
  /// Every proof step; the constant is only claimed for 0-free sets.
  bool all_hold() const {
    return (stripped_zero || constant_holds()) && master_holds() && j_holds() &&
           fourier_holds() && cs_holds();
  }
};

TheoremOneReport theorem1_report(const ResidueSet& a);

enum class RingBranch { trivial_d0, unit_reduced };
const char* to_string(RingBranch b);

struct TheoremTwoReport {
  std::uint64_t m = 0;
  std::uint64_t d0 = 0;
  std::uint64_t size_a = 0;
  std::uint64_t size_unit_a = 0;
  std::uint64_t size_sum = 0;
  std::uint64_t size_prod = 0;
  double divisor_sum = 0.0;  // D(m)
  std::uint64_t lhs = 0;
  double term_ma = 0.0;
  double term_ring = 0.0;  // |A|^4 / (m D^2)
  double bound = 0.0;
  double ratio = 0.0;
  std::uint64_t nonunit_count = 0;
  double nonunit_cap = 0.0;  // sqrt(m/d0) D(m)
  RingBranch branch = RingBranch::trivial_d0;

  bool constant_holds() const { return ratio >= kRingConstant; }
  bool dilation_holds() const { return size_prod * d0 >= size_a; }
  /// Only claimed on the unit_reduced branch.
  bool unit_majority_holds() const {
    return branch != RingBranch::unit_reduced || 2 * size_unit_a > size_a;
  }
};

TheoremTwoReport theorem2_report(const ResidueSet& a);

struct NonunitBoundReport {
  std::uint64_t d0 = 0;
  std::uint64_t count = 0;           // #{a in A : gcd(a, m) >= max(d0, 2)}
  std::uint64_t intermediate_cap = 0;  // sum_{d|m, d >= max(d0,2)} m/d
  double final_cap = 0.0;            // sqrt(m/d0) D(m)
  bool count_within_intermediate = true;
  bool intermediate_within_final = true;
  bool holds() const { return count_within_intermediate && intermediate_within_final; }
};

NonunitBoundReport nonunit_bound_check(const ResidueSet& a);

/// Per-divisor inequalities of the ring argument, evaluated on the unit part
/// A' of A, its product set and its sum set.
struct RingProofChecks {
  std::uint64_t size_unit_a = 0;
  std::uint64_t size_unit_sum = 0;
  std::uint64_t size_unit_prod = 0;
  std::uint64_t product_witness = 0;   // a0 with gcd(a0, m) = d0
  std::uint64_t witness_dilation = 0;  // |a0 A|
  bool dilation_chain_holds = true;    // |AA| >= |a0 A| >= |A|/d0
  /// max over d | m, d < m, gcd(n, m/d) = 1 of
  /// |sum_{x in A'A', a in A'} e_{m/d}(n x/a)|^2 / (d m |A'A'| |A'|)
  double worst_divisor_ratio = 0.0;
  bool divisor_bound_holds = true;
  bool parseval_a_holds = true;    // sum_{n=1}^{m/d} |A'^(n)|^2 <= m|A'|, every d
  bool parseval_sum_holds = true;  // same for A'+A'
  /// The closing ring inequality is only implied when the unit branch applies
  /// and |A'|^3 > 2|A'A'||A'|^2|A'+A'|/m.
  bool ring_master_applies = false;
  bool ring_master_holds = true;
  /// Quadruple count for A' (computed, not asserted).
  std::uint64_t unit_j = 0;
  double fourier_max = 0.0;  // d = 1 instance, not squared
  double fourier_cap = 0.0;  // sqrt(m |A'A'| |A'|)

  bool all_hold() const {
    return dilation_chain_holds && divisor_bound_holds && parseval_a_holds &&
           parseval_sum_holds && ring_master_holds;
  }
};

RingProofChecks ring_proof_checks(const ResidueSet& a, const TheoremTwoReport& report);

struct ExtremalRingExample {
  std::uint64_t p = 0;
  std::uint64_t m = 0;  // p^2
  ResidueSet a;
  std::uint64_t size_a = 0;
  std::uint64_t size_sum = 0;
  std::uint64_t size_prod = 0;
  double ratio = 0.0;  // theorem-2 lhs / bound
  bool matches() const { return size_a == p && size_sum == p && size_prod == 1; }
};

/// A = {p x : x in Z_{p^2}} in Z_{p^2}.
ExtremalRingExample zm_extremal(std::uint64_t p);

}  // namespace sumprod
