#include "sumprod/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace sumprod {

// Set files

ParsedSet parse_set_text(std::string_view text, const ModulusPtr& modulus) {
  std::vector<Residue> values;
  std::unordered_set<Residue> seen;
  std::size_t duplicates = 0;
  std::size_t line_no = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line_no;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
           text[end] != '#')
      ++end;
    const std::string_view token = text.substr(i, end - i);
    i = end;

    const std::string where = " on line " + std::to_string(line_no);
    const bool negative = token.front() == '-';
    const std::string_view digits = negative ? token.substr(1) : token;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ptr != digits.data() + digits.size() ||
        ec == std::errc::invalid_argument)
      throw Error(ErrorKind::parse, "non-numeric token '" + std::string(token) + "'" + where);
    if (negative)
      throw Error(ErrorKind::range, "negative residue " + std::string(token) + where);
    if (ec == std::errc::result_out_of_range || value >= modulus->m)
      throw Error(ErrorKind::range, "residue " + std::string(token) + " not in [0, " +
                                        std::to_string(modulus->m) + ")" + where);
    const auto r = static_cast<Residue>(value);
    if (!seen.insert(r).second) {
      ++duplicates;
      continue;
    }
    values.push_back(r);
  }
  return ParsedSet{ResidueSet(modulus, std::move(values)), duplicates};
}

ParsedSet parse_set_file(const std::filesystem::path& path, const ModulusPtr& modulus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot read set file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_set_text(buf.str(), modulus);
}

// Random streams

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t size, std::uint64_t trial) {
  return splitmix64_mix(splitmix64_mix(seed + kGolden * (size + 1)) + kGolden * (trial + 1));
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return splitmix64_mix(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

ResidueSet random_subset(const ModulusPtr& modulus, std::uint64_t size, bool exclude_zero,
                         SplitMix64& rng) {
  const std::uint64_t offset = exclude_zero ? 1 : 0;
  const std::uint64_t pool = modulus->m - offset;
  if (size > pool)
    throw Error(ErrorKind::range, "cannot draw " + std::to_string(size) + " of " +
                                      std::to_string(pool) + " residues");
  std::unordered_set<std::uint64_t> chosen;
  std::vector<Residue> out;
  out.reserve(size);
  for (std::uint64_t j = pool - size; j < pool; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(static_cast<Residue>(pick + offset));
  }
  return ResidueSet(modulus, std::move(out));
}

// Sweeps

const char* to_string(FieldKind kind) {
  return kind == FieldKind::prime_field ? "prime" : "ring";
}

void validate(const SweepConfig& cfg) {
  const Modulus mod = make_modulus(cfg.modulus);
  if (cfg.kind == FieldKind::prime_field && !mod.is_prime)
    throw Error(ErrorKind::domain, std::to_string(cfg.modulus) + " is not prime");
  if (cfg.trials < 1) throw Error(ErrorKind::range, "trials must be at least 1");
  if (cfg.sizes.empty()) throw Error(ErrorKind::range, "no sizes given");
  const std::uint64_t available = cfg.modulus - (cfg.exclude_zero ? 1 : 0);
  for (std::uint64_t s : cfg.sizes)
    if (s < 1 || s > available)
      throw Error(ErrorKind::range, "size " + std::to_string(s) + " outside [1, " +
                                        std::to_string(available) + "]");
}

SweepRow sweep_row(const SweepConfig& cfg, const ModulusPtr& modulus, std::uint64_t size,
                   std::uint64_t trial) {
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  row.modulus = cfg.modulus;
  row.kind = cfg.kind;
  row.size = size;
  row.trial = trial;
  row.derived_seed = derive_seed(cfg.seed, size, trial);
  SplitMix64 rng(row.derived_seed);
  const ResidueSet a = random_subset(modulus, size, cfg.exclude_zero, rng);

  if (cfg.kind == FieldKind::prime_field) {
    const TheoremOneReport r = theorem1_report(a);
    row.sum_size = r.size_sum;
    row.prod_size = r.size_prod;
    row.lhs = r.lhs;
    row.bound = r.bound;
    row.ratio = r.ratio;
    row.j = r.j;
    row.fourier_max = r.fourier_max;
    row.fourier_cap = r.fourier_cap;
    row.verified = r.all_hold();
  } else {
    const TheoremTwoReport r = theorem2_report(a);
    const RingProofChecks c = ring_proof_checks(a, r);
    row.sum_size = r.size_sum;
    row.prod_size = r.size_prod;
    row.lhs = r.lhs;
    row.bound = r.bound;
    row.ratio = r.ratio;
    row.fourier_max = c.fourier_max;
    row.fourier_cap = c.fourier_cap;
    row.verified = r.constant_holds() && r.dilation_holds() && r.unit_majority_holds() &&
                   nonunit_bound_check(a).holds() && c.all_hold();
  }
  if (cfg.record_timing)
    row.elapsed_micros = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                              start)
            .count());
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads) {
  validate(cfg);
  const ModulusPtr modulus = make_modulus_ptr(cfg.modulus);
  const std::size_t total = cfg.sizes.size() * cfg.trials;
  std::vector<SweepRow> rows(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        rows[i] = sweep_row(cfg, modulus, cfg.sizes[i / cfg.trials], i % cfg.trials);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.modulus << ',' << to_string(r.kind) << ',' << r.size << ',' << r.trial << ','
        << r.derived_seed << ',' << r.sum_size << ',' << r.prod_size << ',' << r.lhs << ','
        << format_double(r.bound) << ',' << format_double(r.ratio) << ',';
    if (r.j) out << *r.j;
    out << ',' << format_double(r.fourier_max) << ',' << format_double(r.fourier_cap) << ','
        << r.elapsed_micros << '\n';
  }
}

// Exhaustive search

ExhaustiveSummary run_exhaustive(std::uint64_t p, std::uint64_t k) {
  if (p > kExhaustiveMaxPrime)
    throw Error(ErrorKind::size_cap, "exhaustive search is capped at p <= 19", p);
  const ModulusPtr field = make_modulus_ptr(p);
  if (!field->is_prime) throw Error(ErrorKind::domain, std::to_string(p) + " is not prime");
  if (k < 1 || k > p - 1) throw Error(ErrorKind::range, "k must lie in [1, p-1]");
  double combos = 1.0;
  for (std::uint64_t i = 0; i < k; ++i)
    combos = combos * static_cast<double>(p - 1 - i) / static_cast<double>(i + 1);
  if (combos > static_cast<double>(kExhaustiveMaxSubsets))
    throw Error(ErrorKind::size_cap, "too many subsets");

  ExhaustiveSummary s;
  s.p = p;
  s.k = k;
  std::vector<Residue> pick(k);
  for (std::uint64_t i = 0; i < k; ++i) pick[i] = static_cast<Residue>(i + 1);
  const auto top = static_cast<Residue>(p - 1);
  for (;;) {
    const TheoremOneReport r = theorem1_report(ResidueSet(field, pick));
    if (s.subsets == 0 || r.ratio < s.min_ratio) {
      s.min_ratio = r.ratio;
      s.witness = pick;
    }
    ++s.subsets;
    if (!r.constant_holds()) ++s.violations;
    if (!r.all_hold()) ++s.proof_failures;

    // next combination of {1, ..., p-1}
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == top - (k - i)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return s;
}

// JSON

nlohmann::json to_json(const TheoremOneReport& r) {
  return {{"p", r.p},
          {"size_a", r.size_a},
          {"size_sum", r.size_sum},
          {"size_prod", r.size_prod},
          {"lhs", r.lhs},
          {"term_pa", r.term_pa},
          {"term_a4p", r.term_a4p},
          {"bound", r.bound},
          {"ratio", r.ratio},
          {"j", r.j},
          {"j_lower", r.j_lower},
          {"fourier_max", r.fourier_max},
          {"fourier_cap", r.fourier_cap},
          {"master_term1", r.master_term1},
          {"master_term2", r.master_term2},
          {"cs_sum", r.cs_sum},
          {"cs_cap", r.cs_cap},
          {"stripped_zero", r.stripped_zero},
          {"constant_holds", r.constant_holds()},
          {"all_hold", r.all_hold()}};
}

nlohmann::json to_json(const TheoremTwoReport& r) {
  return {{"m", r.m},
          {"d0", r.d0},
          {"size_a", r.size_a},
          {"size_unit_a", r.size_unit_a},
          {"size_sum", r.size_sum},
          {"size_prod", r.size_prod},
          {"d", r.divisor_sum},
          {"lhs", r.lhs},
          {"term_ma", r.term_ma},
          {"term_ring", r.term_ring},
          {"bound", r.bound},
          {"ratio", r.ratio},
          {"nonunit_count", r.nonunit_count},
          {"nonunit_cap", r.nonunit_cap},
          {"branch", to_string(r.branch)},
          {"constant_holds", r.constant_holds()}};
}

nlohmann::json to_json(const RingProofChecks& c) {
  return {{"size_unit_a", c.size_unit_a},
          {"size_unit_sum", c.size_unit_sum},
          {"size_unit_prod", c.size_unit_prod},
          {"product_witness", c.product_witness},
          {"witness_dilation", c.witness_dilation},
          {"dilation_chain_holds", c.dilation_chain_holds},
          {"worst_divisor_ratio", c.worst_divisor_ratio},
          {"divisor_bound_holds", c.divisor_bound_holds},
          {"parseval_a_holds", c.parseval_a_holds},
          {"parseval_sum_holds", c.parseval_sum_holds},
          {"ring_master_applies", c.ring_master_applies},
          {"ring_master_holds", c.ring_master_holds},
          {"unit_j", c.unit_j},
          {"fourier_max", c.fourier_max},
          {"fourier_cap", c.fourier_cap}};
}

nlohmann::json to_json(const NonunitBoundReport& r) {
  return {{"d0", r.d0},
          {"count", r.count},
          {"intermediate_cap", r.intermediate_cap},
          {"final_cap", r.final_cap},
          {"count_within_intermediate", r.count_within_intermediate},
          {"intermediate_within_final", r.intermediate_within_final}};
}

nlohmann::json to_json(const ExtremalConstruction& c) {
  return {{"p", c.p},
          {"n", c.n},
          {"g", c.g},
          {"prefix_length", c.length},
          {"window_offset", c.window.offset},
          {"window_count", c.window.count},
          {"a", std::vector<Residue>(c.a.begin(), c.a.end())},
          {"size_sum", c.size_sum},
          {"size_prod", c.size_prod},
          {"max_size", c.max_size},
          {"structural_cap", c.structural_cap()}};
}

nlohmann::json to_json(const ExtremalRingExample& e) {
  return {{"p", e.p},
          {"m", e.m},
          {"a", std::vector<Residue>(e.a.begin(), e.a.end())},
          {"size_a", e.size_a},
          {"size_sum", e.size_sum},
          {"size_prod", e.size_prod},
          {"ratio", e.ratio},
          {"matches", e.matches()}};
}

nlohmann::json to_json(const ExhaustiveSummary& s) {
  return {{"p", s.p},
          {"k", s.k},
          {"subsets", s.subsets},
          {"min_ratio", s.min_ratio},
          {"witness", s.witness},
          {"violations", s.violations},
          {"proof_failures", s.proof_failures}};
}

}  // namespace sumprod
