#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "sumprod/construct.hpp"
#include "sumprod/set_algebra.hpp"
#include "sumprod/theorems.hpp"

using namespace sumprod;

TEST_CASE("power_prefix") {
  const auto f7 = make_modulus_ptr(7);
  CHECK(power_prefix(f7, 3, 3) == ResidueSet(f7, {3, 2, 6}));
  CHECK(power_prefix(f7, 3, 1) == ResidueSet(f7, {3}));
  CHECK(power_prefix(f7, 3, 6) == ResidueSet(f7, {1, 2, 3, 4, 5, 6}));
  CHECK_THROWS_AS(power_prefix(f7, 3, 7), Error);
  CHECK_THROWS_AS(power_prefix(f7, 3, 0), Error);
  CHECK_THROWS_AS(power_prefix(f7, 2, 4), Error);  // 2 has order 3
}

TEST_CASE("best_window examples") {
  const auto f7 = make_modulus_ptr(7);
  const ResidueSet g(f7, {3, 2, 6});
  const auto counts = window_counts(g, 3);
  for (std::uint64_t L = 0; L < 7; ++L) CHECK(counts[L] == oracle::window_count({2, 3, 6}, 7, L, 3));
  // {1,2,3} and {2,3,4} both catch {2,3}; the smaller offset wins.
  const WindowChoice w = best_window(g, 3);
  CHECK(w.offset == 0);
  CHECK(w.count == 2);
  CHECK(counts[1] == 2);

  const ResidueSet units(f7, {1, 2, 3, 4, 5, 6});
  CHECK(best_window(units, 6).count >= 5);

  const WindowChoice none = best_window(ResidueSet(f7), 3);
  CHECK(none.offset == 0);
  CHECK(none.count == 0);
}

TEST_CASE("sliding window scan matches direct intersection for p <= 1009") {
  for (std::uint64_t p : {5u, 7u, 31u, 101u, 257u, 1009u}) {
    const auto field = make_modulus_ptr(p);
    const Residue g = find_generator(*field);
    for (std::uint64_t length : {std::uint64_t{1}, std::uint64_t{2}, p / 3 + 1, p / 2, p - 1}) {
      if (length < 1 || length > p - 1) continue;
      const ResidueSet prefix = power_prefix(field, g, length);
      const std::vector<Residue> elems(prefix.begin(), prefix.end());
      const auto counts = window_counts(prefix, length);
      for (std::uint64_t L = 0; L < p; ++L)
        REQUIRE(counts[L] == oracle::window_count(elems, p, L, length));
    }
  }
}

TEST_CASE("window counts average exactly M|G|/p") {
  for (std::uint64_t p : {101u, 1009u, 10007u}) {
    const auto field = make_modulus_ptr(p);
    const Residue g = find_generator(*field);
    for (std::uint64_t length = 1; length < p; length += 1 + p / 37) {
      const ResidueSet prefix = power_prefix(field, g, length);
      const auto counts = window_counts(prefix, length);
      const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
      REQUIRE(total == length * prefix.size());
      REQUIRE(best_window(prefix, length).count * p >= length * length);
    }
  }
}

TEST_CASE("build_extremal examples") {
  const ExtremalConstruction small = build_extremal(7, 1);
  CHECK(small.length == 3);
  CHECK(small.g == 3);
  CHECK(small.a.size() == 1);
  CHECK(small.size_sum <= 5);
  CHECK(small.size_prod <= 5);

  const ExtremalConstruction mid = build_extremal(101, 10);
  CHECK(mid.length == 32);
  CHECK(mid.a.size() == 10);
  CHECK(mid.max_size <= 63);
  for (Residue r : mid.a) {
    CHECK(mid.prefix.contains(r));
    CHECK((r + 101 - mid.window.offset - 1) % 101 < mid.length);
  }

  try {
    build_extremal(7, 7);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::infeasible);
  }
  CHECK_THROWS_AS(build_extremal(101, 0), Error);
  CHECK_THROWS_AS(build_extremal(100, 3), Error);
}

TEST_CASE("construction_length is the exact integer ceiling") {
  for (std::uint64_t p : {7u, 101u, 10007u})
    for (std::uint64_t n = 1; n < p; ++n) {
      const std::uint64_t M = construction_length(p, n);
      REQUIRE(M * M >= p * n);
      REQUIRE((M - 1) * (M - 1) < p * n);
    }
}

TEST_CASE("constructed sets sit between the lower and structural upper bound") {
  for (std::uint64_t p : {101u, 499u, 1009u}) {
    for (std::uint64_t n = 1; construction_length(p, n) <= p - 1; n += 1 + n / 2) {
      const ExtremalConstruction c = build_extremal(p, n);
      REQUIRE(c.a.size() == n);
      REQUIRE(c.size_sum <= c.structural_cap());
      REQUIRE(c.size_prod <= c.structural_cap());
      const TheoremOneReport r = theorem1_report(c.a);
      REQUIRE(r.constant_holds());
      const double upper = static_cast<double>(c.structural_cap()) * c.structural_cap();
      REQUIRE(static_cast<double>(r.lhs) <= upper);
    }
  }
}
