#pragma once

// Complete exponential sums e_q(nx) = exp(2*pi*i*n*x/q) over sets and
// multiplicity vectors, and the character-sum inequalities built on them.

#include <complex>
#include <cstdint>
#include <vector>

#include "sumprod/residue.hpp"
#include "sumprod/set_algebra.hpp"

namespace sumprod {

using Complex = std::complex<double>;

/// Relative tolerance for identities and slack factor for one-sided bounds.
inline constexpr double kRelTol = 1e-9;

/// value <= cap * (1 + kRelTol)
inline bool within_bound(double value, double cap) { return value <= cap * (1.0 + kRelTol); }

struct SpectrumVector {
  std::uint64_t period = 0;         // q
  std::vector<Complex> amplitudes;  // indexed by frequency n in [0, q)
  std::uint64_t source_mass = 0;
};

/// Periods up to this length use direct summation; longer ones go through
/// the chirp transform.
inline constexpr std::uint64_t kDirectDftLimit = 4096;

/// amplitudes[n] = sum_t c_q(t) e_q(nt), where c_q aggregates counts mod q.
/// q must divide m.
SpectrumVector dft_counts(const MultiplicityVector& v, std::uint64_t q);
SpectrumVector dft_indicator(const ResidueSet& s, std::uint64_t q);

namespace detail {
/// X[n] = sum_t x[t] exp(2*pi*i*n*t/q), by direct summation over the support.
std::vector<Complex> dft_direct(const std::vector<double>& x);
/// Same transform through Bluestein's chirp-z algorithm.
std::vector<Complex> dft_chirp(const std::vector<double>& x);
/// In-place radix-2 FFT; size must be a power of two. sign = +1 or -1.
void fft_pow2(std::vector<Complex>& a, int sign);
}  // namespace detail

struct PeakAmplitude {
  std::uint64_t frequency = 0;
  double magnitude = 0.0;
};

/// Largest |amplitudes[n]| over n != 0 (units only: gcd(n, q) = 1); ties go to
/// the smallest n. Returns {0, 0} when no frequency is admissible.
PeakAmplitude max_nontrivial(const SpectrumVector& spec, bool units_only = false);

struct QuadrupleSpectrum {
  double count = 0.0;              // real part of (1/p) sum_n Q(n) A(n) conj(S(n))
  double imaginary_residue = 0.0;  // imaginary part, should vanish
};

/// Number of solutions of x/a1 + a2 = y over AA x A x A x (A+A), evaluated
/// through additive characters. Requires a prime modulus and 0 not in A.
QuadrupleSpectrum spectral_quadruple_count(const ResidueSet& a);

struct ParsevalCheck {
  double lhs = 0.0;  // sum_{n=1}^{q} |S_q(n)|^2
  double rhs = 0.0;  // m * sum_t counts[t]^2 (= m|S| for a set)
  bool holds = true;
};

ParsevalCheck parseval_bound_check(const ResidueSet& s, std::uint64_t q);
ParsevalCheck parseval_bound_check(const MultiplicityVector& v, std::uint64_t q);

/// sum_{n=0}^{q-1} |S(n)| |T(n)|
double spectral_l1_product(const SpectrumVector& s, const SpectrumVector& t);

}  // namespace sumprod
