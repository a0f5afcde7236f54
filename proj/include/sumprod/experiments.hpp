#pragma once

// Set-file ingestion, seeded sweeps, exhaustive searches and report
// serialization for the command-line front end.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sumprod/construct.hpp"
#include "sumprod/residue.hpp"
#include "sumprod/spectral.hpp"
#include "sumprod/theorems.hpp"

namespace sumprod {

// Set files

struct ParsedSet {
  ResidueSet set;
  std::size_t duplicates = 0;
};

/// Whitespace-separated decimal residues; '#' comments run to end of line.
/// Values must already lie in [0, m); duplicates are dropped and counted.
ParsedSet parse_set_text(std::string_view text, const ModulusPtr& modulus);
ParsedSet parse_set_file(const std::filesystem::path& path, const ModulusPtr& modulus);

// Random streams

/// SplitMix64 output finalizer.
std::uint64_t splitmix64_mix(std::uint64_t z);

/// Per-trial seed: mix(mix(seed + phi*(size+1)) + phi*(trial+1)) with
/// phi = 0x9E3779B97F4A7C15 and mix = splitmix64_mix.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t size, std::uint64_t trial);

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Uniform s-subset of [0, m) (or [1, m) when excluding zero), Floyd's method.
ResidueSet random_subset(const ModulusPtr& modulus, std::uint64_t size, bool exclude_zero,
                         SplitMix64& rng);

// Sweeps

enum class FieldKind { prime_field, residue_ring };
const char* to_string(FieldKind kind);  // "prime" / "ring"

struct SweepConfig {
  std::uint64_t modulus = 0;
  FieldKind kind = FieldKind::prime_field;
  std::vector<std::uint64_t> sizes;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string output_path;
  bool exclude_zero = true;
  /// Wall-clock timings make the CSV run-dependent; off by default.
  bool record_timing = false;
};

struct SweepRow {
  std::uint64_t modulus = 0;
  FieldKind kind = FieldKind::prime_field;
  std::uint64_t size = 0;
  std::uint64_t trial = 0;
  std::uint64_t derived_seed = 0;
  std::uint64_t sum_size = 0;
  std::uint64_t prod_size = 0;
  std::uint64_t lhs = 0;
  double bound = 0.0;
  double ratio = 0.0;
  std::optional<std::uint64_t> j;  // prime field only
  double fourier_max = 0.0;
  double fourier_cap = 0.0;
  std::uint64_t elapsed_micros = 0;
  bool verified = true;  // explicit constant and every proof step held
};

inline constexpr std::string_view kSweepCsvHeader =
    "modulus,kind,size,trial,derived_seed,sum_size,prod_size,lhs,bound,ratio,J,fourier_max,"
    "fourier_cap,elapsed_micros";

void validate(const SweepConfig& cfg);

/// One row, computed from scratch.
SweepRow sweep_row(const SweepConfig& cfg, const ModulusPtr& modulus, std::uint64_t size,
                   std::uint64_t trial);

/// Rows ordered by (size, trial); identical for any thread count.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = 1);

/// Shortest representation that round-trips.
std::string format_double(double x);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Exhaustive search

struct ExhaustiveSummary {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::uint64_t subsets = 0;
  double min_ratio = 0.0;
  std::vector<Residue> witness;
  std::uint64_t violations = 0;      // ratio below 1/4
  std::uint64_t proof_failures = 0;  // any intermediate step failed
  bool ok() const { return violations == 0 && proof_failures == 0; }
};

inline constexpr std::uint64_t kExhaustiveMaxPrime = 19;
inline constexpr std::uint64_t kExhaustiveMaxSubsets = 10'000'000;

/// Every k-subset of F_p \ {0} in lexicographic order.
ExhaustiveSummary run_exhaustive(std::uint64_t p, std::uint64_t k);

// JSON

nlohmann::json to_json(const TheoremOneReport& r);
nlohmann::json to_json(const TheoremTwoReport& r);
nlohmann::json to_json(const RingProofChecks& c);
nlohmann::json to_json(const NonunitBoundReport& r);
nlohmann::json to_json(const ExtremalConstruction& c);
nlohmann::json to_json(const ExtremalRingExample& e);
nlohmann::json to_json(const ExhaustiveSummary& s);

}  // namespace sumprod
