#include "sumprod/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace sumprod {

namespace detail {

std::vector<Complex> dft_direct(const std::vector<double>& x) {
  const std::size_t q = x.size();
  std::vector<Complex> twiddle(q);
  for (std::size_t k = 0; k < q; ++k)
    twiddle[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                     static_cast<double>(q));
  std::vector<std::size_t> support;
  for (std::size_t t = 0; t < q; ++t)
    if (x[t] != 0.0) support.push_back(t);

  std::vector<Complex> out(q);
  for (std::size_t n = 0; n < q; ++n) {
    Complex acc{0.0, 0.0};
    for (std::size_t t : support) acc += x[t] * twiddle[(static_cast<std::uint64_t>(n) * t) % q];
    out[n] = acc;
  }
  return out;
}

void fft_pow2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<Complex> roots(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k)
    roots[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                   static_cast<double>(n));
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * roots[k * step];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

std::vector<Complex> dft_chirp(const std::vector<double>& x) {
  const std::uint64_t q = x.size();
  if (q == 0) return {};
  // w^{nt} = c_n c_t conj(c_{n-t}) with c_k = exp(pi i k^2 / q); k^2 is
  // reduced mod 2q to keep the phase argument small.
  std::vector<Complex> chirp(q);
  for (std::uint64_t k = 0; k < q; ++k) {
    const std::uint64_t k2 = (k * k) % (2 * q);
    chirp[k] = std::polar(1.0, std::numbers::pi * static_cast<double>(k2) / static_cast<double>(q));
  }
  const std::size_t len = std::bit_ceil(static_cast<std::size_t>(2 * q - 1));
  std::vector<Complex> a(len), b(len);
  for (std::uint64_t t = 0; t < q; ++t) a[t] = x[t] * chirp[t];
  b[0] = std::conj(chirp[0]);
  for (std::uint64_t k = 1; k < q; ++k) b[k] = b[len - k] = std::conj(chirp[k]);

  fft_pow2(a, -1);
  fft_pow2(b, -1);
  for (std::size_t i = 0; i < len; ++i) a[i] *= b[i];
  fft_pow2(a, +1);

  std::vector<Complex> out(q);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::uint64_t n = 0; n < q; ++n) out[n] = a[n] * scale * chirp[n];
  return out;
}

}  // namespace detail

namespace {

void check_period(std::uint64_t m, std::uint64_t q) {
  if (q == 0 || m % q != 0)
    throw Error(ErrorKind::invalid_period,
                "period " + std::to_string(q) + " does not divide " + std::to_string(m), q);
}

SpectrumVector transform(std::vector<double> folded, std::uint64_t mass) {
  SpectrumVector spec;
  spec.period = folded.size();
  spec.source_mass = mass;
  spec.amplitudes = spec.period <= kDirectDftLimit ? detail::dft_direct(folded)
                                                   : detail::dft_chirp(folded);
  return spec;
}

}  // namespace

SpectrumVector dft_counts(const MultiplicityVector& v, std::uint64_t q) {
  check_period(v.m(), q);
  std::vector<double> folded(q, 0.0);
  v.for_each_nonzero(
      [&](std::uint64_t t, std::uint64_t c) { folded[t % q] += static_cast<double>(c); });
  return transform(std::move(folded), v.total_mass());
}

SpectrumVector dft_indicator(const ResidueSet& s, std::uint64_t q) {
  check_period(s.m(), q);
  std::vector<double> folded(q, 0.0);
  for (Residue r : s) folded[r % q] += 1.0;
  return transform(std::move(folded), s.size());
}

PeakAmplitude max_nontrivial(const SpectrumVector& spec, bool units_only) {
  PeakAmplitude best;
  bool found = false;
  for (std::uint64_t n = 1; n < spec.period; ++n) {
    if (units_only && gcd(n, spec.period) != 1) continue;
    const double mag = std::abs(spec.amplitudes[n]);
    if (!found || mag > best.magnitude) {
      best = {n, mag};
      found = true;
    }
  }
  return best;
}

QuadrupleSpectrum spectral_quadruple_count(const ResidueSet& a) {
  const Modulus& mod = a.modulus();
  if (!mod.is_prime) throw Error(ErrorKind::domain, "spectral quadruple count needs a prime");
  if (a.contains(0)) throw Error(ErrorKind::non_invertible, "0 has no inverse", mod.m);
  const std::uint64_t p = mod.m;

  const ResidueSet prod = productset_fast(a, a);
  const ResidueSet sum = sumset_fast(a, a);
  const SpectrumVector qhat = dft_counts(quotient_rep(prod, a), p);
  const SpectrumVector ahat = dft_indicator(a, p);
  const SpectrumVector shat = dft_indicator(sum, p);

  Complex acc{0.0, 0.0};
  for (std::uint64_t n = 0; n < p; ++n)
    acc += qhat.amplitudes[n] * ahat.amplitudes[n] * std::conj(shat.amplitudes[n]);
  acc /= static_cast<double>(p);
  return {acc.real(), acc.imag()};
}

ParsevalCheck parseval_bound_check(const MultiplicityVector& v, std::uint64_t q) {
  const SpectrumVector spec = dft_counts(v, q);
  ParsevalCheck out;
  // n runs over 1..q; n = q is the trivial frequency, stored at index 0.
  for (const Complex& z : spec.amplitudes) out.lhs += std::norm(z);
  double squares = 0.0;
  v.for_each_nonzero([&](std::uint64_t, std::uint64_t c) {
    squares += static_cast<double>(c) * static_cast<double>(c);
  });
  out.rhs = static_cast<double>(v.m()) * squares;
  out.holds = within_bound(out.lhs, out.rhs);
  return out;
}

ParsevalCheck parseval_bound_check(const ResidueSet& s, std::uint64_t q) {
  const SpectrumVector spec = dft_indicator(s, q);
  ParsevalCheck out;
  for (const Complex& z : spec.amplitudes) out.lhs += std::norm(z);
  out.rhs = static_cast<double>(s.m()) * static_cast<double>(s.size());
  out.holds = within_bound(out.lhs, out.rhs);
  return out;
}

double spectral_l1_product(const SpectrumVector& s, const SpectrumVector& t) {
  if (s.period != t.period) throw Error(ErrorKind::invalid_period, "spectra of different periods");
  double acc = 0.0;
  for (std::uint64_t n = 0; n < s.period; ++n)
    acc += std::abs(s.amplitudes[n]) * std::abs(t.amplitudes[n]);
  return acc;
}

}  // namespace sumprod
