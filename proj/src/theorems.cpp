#include "sumprod/theorems.hpp"

#include <algorithm>
#include <cmath>

#include "sumprod/set_algebra.hpp"
#include "sumprod/spectral.hpp"

namespace sumprod {

namespace {

void require_prime_zero_free(const ResidueSet& a) {
  if (!a.modulus().is_prime)
    throw Error(ErrorKind::domain, "prime modulus required, got " + std::to_string(a.m()));
  if (a.contains(0)) throw Error(ErrorKind::non_invertible, "0 has no inverse", a.m());
}

// sum_t q(t) w(t) with w = #{(y, a2) in S x A : y - a2 = t}
std::uint64_t pair_quadruples(const MultiplicityVector& quotients, const ResidueSet& sum,
                              const ResidueSet& a) {
  const MultiplicityVector w = additive_rep(sum, a, -1);
  std::uint64_t j = 0;
  quotients.for_each_nonzero([&](std::uint64_t t, std::uint64_t c) { j += c * w.count(t); });
  return j;
}

ResidueSet without_zero(const ResidueSet& a) {
  if (!a.contains(0)) return a;
  std::vector<Residue> rest(a.begin() + 1, a.end());
  return ResidueSet(a.modulus_ptr(), std::move(rest));
}

double cube(double x) { return x * x * x; }

}  // namespace

std::uint64_t count_quadruples(const ResidueSet& a) {
  require_prime_zero_free(a);
  return count_unit_quadruples(a);
}

std::uint64_t count_unit_quadruples(const ResidueSet& a) {
  const ResidueSet prod = productset_fast(a, a);
  const ResidueSet sum = sumset_fast(a, a);
  return pair_quadruples(unit_quotient_rep(prod, a), sum, a);
}

std::uint64_t count_quadruples_bruteforce(const ResidueSet& a) {
  require_prime_zero_free(a);
  const std::uint64_t p = a.m();
  const ResidueSet prod = productset(a, a);
  const ResidueSet sum = sumset(a, a);
  const double work = static_cast<double>(prod.size()) * static_cast<double>(a.size()) *
                      static_cast<double>(a.size()) * static_cast<double>(sum.size());
  if (work > 1e9) throw Error(ErrorKind::size_cap, "brute-force quadruple count above 10^9 steps");
  // x * a1^{-1} + a2 = y  <=>  x = a1 (y - a2)
  std::uint64_t j = 0;
  for (Residue x : prod)
    for (Residue a1 : a)
      for (Residue a2 : a)
        for (Residue y : sum)
          if (mul_mod(a1, sub_mod(y, a2, p), p) == x) ++j;
  return j;
}

TheoremOneReport theorem1_report(const ResidueSet& a) {
  if (a.empty()) throw Error(ErrorKind::empty_input, "theorem 1 report of an empty set");
  if (!a.modulus().is_prime)
    throw Error(ErrorKind::domain, "theorem 1 needs a prime modulus, got " + std::to_string(a.m()));
  const std::uint64_t p = a.m();
  const double pd = static_cast<double>(p);

  TheoremOneReport r;
  r.p = p;
  const ResidueSet sum = sumset_fast(a, a);
  const ResidueSet prod = productset_fast(a, a);
  r.size_a = a.size();
  r.size_sum = sum.size();
  r.size_prod = prod.size();
  r.lhs = r.size_sum * r.size_prod;
  const double n = static_cast<double>(r.size_a);
  r.term_pa = pd * n;
  r.term_a4p = n * n * n * n / pd;
  r.bound = std::min(r.term_pa, r.term_a4p);
  r.ratio = static_cast<double>(r.lhs) / r.bound;

  r.stripped_zero = a.contains(0);
  const ResidueSet core = without_zero(a);
  if (core.empty()) return r;
  const ResidueSet core_sum = r.stripped_zero ? sumset_fast(core, core) : sum;
  const ResidueSet core_prod = r.stripped_zero ? productset_fast(core, core) : prod;
  const double k = static_cast<double>(core.size());
  const double ks = static_cast<double>(core_sum.size());
  const double kp = static_cast<double>(core_prod.size());

  const MultiplicityVector quotients = quotient_rep(core_prod, core);
  r.j = pair_quadruples(quotients, core_sum, core);
  r.j_lower = static_cast<std::uint64_t>(core.size()) * core.size() * core.size();
  r.fourier_max = max_nontrivial(dft_counts(quotients, p)).magnitude;
  r.fourier_cap = std::sqrt(pd * kp * k);
  r.master_term1 = kp * k * k * ks / pd;
  r.master_term2 = std::sqrt(pd * kp * k) * std::sqrt(k * ks);
  r.cs_sum = spectral_l1_product(dft_indicator(core, p), dft_indicator(core_sum, p));
  r.cs_cap = std::sqrt(pd * k) * std::sqrt(pd * ks);
  return r;
}

const char* to_string(RingBranch b) {
  return b == RingBranch::trivial_d0 ? "trivial_d0" : "unit_reduced";
}

NonunitBoundReport nonunit_bound_check(const ResidueSet& a) {
  const Modulus& mod = a.modulus();
  const std::uint64_t m = mod.m;
  NonunitBoundReport r;
  r.d0 = a.empty() ? m : min_gcd(a);
  const std::uint64_t floor_gcd = std::max<std::uint64_t>(r.d0, 2);
  for (Residue x : a)
    if (gcd_with_modulus(x, m) >= floor_gcd) ++r.count;
  for (std::uint64_t d : mod.divisors)
    if (d >= floor_gcd) r.intermediate_cap += m / d;
  r.final_cap = std::sqrt(static_cast<double>(m) / static_cast<double>(r.d0)) *
                mod.divisor_halfpower_sum;
  r.count_within_intermediate = r.count <= r.intermediate_cap;
  r.intermediate_within_final = within_bound(static_cast<double>(r.intermediate_cap), r.final_cap);
  return r;
}

TheoremTwoReport theorem2_report(const ResidueSet& a) {
  if (a.empty()) throw Error(ErrorKind::empty_input, "theorem 2 report of an empty set");
  const Modulus& mod = a.modulus();
  const double md = static_cast<double>(mod.m);

  TheoremTwoReport r;
  r.m = mod.m;
  r.d0 = min_gcd(a);
  r.size_a = a.size();
  r.size_unit_a = unit_part(a).size();
  r.size_sum = sumset_fast(a, a).size();
  r.size_prod = productset_fast(a, a).size();
  r.divisor_sum = mod.divisor_halfpower_sum;
  r.lhs = r.size_sum * r.size_prod;
  const double n = static_cast<double>(r.size_a);
  const double dd = r.divisor_sum * r.divisor_sum;
  r.term_ma = md * n;
  r.term_ring = n * n * n * n / (md * dd);
  r.bound = std::min(r.term_ma, r.term_ring);
  r.ratio = static_cast<double>(r.lhs) / r.bound;

  const NonunitBoundReport nonunit = nonunit_bound_check(a);
  r.nonunit_count = nonunit.count;
  r.nonunit_cap = nonunit.final_cap;
  // Equality goes to the trivial branch.
  r.branch = n * n * static_cast<double>(r.d0) > 4.0 * md * dd ? RingBranch::unit_reduced
                                                               : RingBranch::trivial_d0;
  return r;
}

RingProofChecks ring_proof_checks(const ResidueSet& a, const TheoremTwoReport& report) {
  const Modulus& mod = a.modulus();
  const std::uint64_t m = mod.m;
  const double md = static_cast<double>(m);
  RingProofChecks c;

  for (Residue x : a) {
    if (gcd_with_modulus(x, m) == report.d0) {
      c.product_witness = x;
      break;
    }
  }
  c.witness_dilation = dilate(c.product_witness, a).size();
  c.dilation_chain_holds =
      report.size_prod >= c.witness_dilation && c.witness_dilation * report.d0 >= report.size_a;

  const ResidueSet units = unit_part(a);
  c.size_unit_a = units.size();
  if (units.empty()) return c;
  const ResidueSet sum = sumset_fast(units, units);
  const ResidueSet prod = productset_fast(units, units);
  c.size_unit_sum = sum.size();
  c.size_unit_prod = prod.size();
  const double k = static_cast<double>(units.size());
  const double ks = static_cast<double>(sum.size());
  const double kp = static_cast<double>(prod.size());

  const MultiplicityVector quotients = unit_quotient_rep(prod, units);
  for (std::uint64_t d : mod.divisors) {
    if (d == m) continue;
    const std::uint64_t q = m / d;
    const SpectrumVector spec = dft_counts(quotients, q);
    const double cap = static_cast<double>(d) * md * kp * k;
    for (std::uint64_t freq = 1; freq < q; ++freq) {
      if (gcd(freq, q) != 1) continue;
      c.worst_divisor_ratio = std::max(c.worst_divisor_ratio, std::norm(spec.amplitudes[freq]) / cap);
    }
    if (d == 1) {
      c.fourier_max = max_nontrivial(spec, true).magnitude;
      c.fourier_cap = std::sqrt(md * kp * k);
    }
    c.parseval_a_holds = c.parseval_a_holds && parseval_bound_check(units, q).holds;
    c.parseval_sum_holds = c.parseval_sum_holds && parseval_bound_check(sum, q).holds;
  }
  c.divisor_bound_holds = within_bound(c.worst_divisor_ratio, 1.0);
  c.unit_j = pair_quadruples(quotients, sum, units);

  c.ring_master_applies =
      report.branch == RingBranch::unit_reduced && cube(k) > 2.0 * kp * k * k * ks / md;
  if (c.ring_master_applies)
    c.ring_master_holds =
        within_bound(cube(k), 2.0 * std::sqrt(k * kp * md * k * ks) * mod.divisor_halfpower_sum);
  return c;
}

ExtremalRingExample zm_extremal(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::domain, std::to_string(p) + " is not prime");
  if (p * p > kMaxModulus)
    throw Error(ErrorKind::size_cap, "p^2 exceeds the modulus cap", p);
  const ModulusPtr mod = make_modulus_ptr(p * p);
  std::vector<Residue> elems;
  for (std::uint64_t x = 0; x < p; ++x) elems.push_back(static_cast<Residue>(p * x));
  ResidueSet a(mod, std::move(elems));
  const TheoremTwoReport report = theorem2_report(a);
  return ExtremalRingExample{.p = p,
                             .m = p * p,
                             .a = std::move(a),
                             .size_a = report.size_a,
                             .size_sum = report.size_sum,
                             .size_prod = report.size_prod,
                             .ratio = report.ratio};
}

}  // namespace sumprod
