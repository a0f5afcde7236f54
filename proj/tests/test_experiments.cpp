#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "sumprod/experiments.hpp"

using namespace sumprod;

namespace {

ErrorKind parse_error(std::string_view text, std::uint64_t m) {
  try {
    parse_set_text(text, make_modulus_ptr(m));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse failure");
  return ErrorKind::domain;
}

std::string csv_of(const SweepConfig& cfg, unsigned threads) {
  std::ostringstream out;
  write_sweep_csv(out, run_sweep(cfg, threads));
  return out.str();
}

}  // namespace

TEST_CASE("parse_set_text") {
  const auto f7 = make_modulus_ptr(7);
  const ParsedSet basic = parse_set_text("1 2 3 # tail", f7);
  CHECK(basic.set == ResidueSet(f7, {1, 2, 3}));
  CHECK(basic.duplicates == 0);

  const ParsedSet dup = parse_set_text("3 3", f7);
  CHECK(dup.set == ResidueSet(f7, {3}));
  CHECK(dup.duplicates == 1);

  const ParsedSet lines = parse_set_text("# header\n0\t6\r\n5#x\n\n", f7);
  CHECK(lines.set == ResidueSet(f7, {0, 5, 6}));

  CHECK(parse_set_text("", f7).set.empty());
  CHECK(parse_error("9", 9) == ErrorKind::range);
  CHECK(parse_error("-1", 9) == ErrorKind::range);
  CHECK(parse_error("1 two", 9) == ErrorKind::parse);
  CHECK(parse_error("1.5", 9) == ErrorKind::parse);
  CHECK(parse_error("+1", 9) == ErrorKind::parse);
  CHECK(parse_error("99999999999999999999999", 9) == ErrorKind::range);
}

TEST_CASE("parse_set_file") {
  const auto path = std::filesystem::temp_directory_path() / "sumprod_set_test.txt";
  {
    std::ofstream out(path);
    out << "1 2 # comment\n4 2\n";
  }
  const ParsedSet s = parse_set_file(path, make_modulus_ptr(5));
  CHECK(s.set == ResidueSet(make_modulus_ptr(5), {1, 2, 4}));
  CHECK(s.duplicates == 1);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(parse_set_file(path, make_modulus_ptr(5)), Error);
}

TEST_CASE("seed derivation and subset sampling") {
  CHECK(derive_seed(42, 5, 0) == derive_seed(42, 5, 0));
  CHECK(derive_seed(42, 5, 0) != derive_seed(42, 5, 1));
  CHECK(derive_seed(42, 5, 0) != derive_seed(42, 6, 0));
  CHECK(derive_seed(42, 5, 0) != derive_seed(43, 5, 0));
  // SplitMix64 reference output for seed 0.
  SplitMix64 ref(0);
  CHECK(ref.next() == 0xE220A8397B1DCDAFULL);

  const auto field = make_modulus_ptr(101);
  std::vector<std::uint64_t> hits(101, 0);
  for (std::uint64_t t = 0; t < 4000; ++t) {
    SplitMix64 rng(derive_seed(7, 10, t));
    const ResidueSet a = random_subset(field, 10, true, rng);
    REQUIRE(a.size() == 10);
    REQUIRE(!a.contains(0));
    for (Residue r : a) ++hits[r];
  }
  // each nonzero residue expected 400 times
  for (std::uint64_t r = 1; r < 101; ++r) CHECK(std::abs(double(hits[r]) - 400.0) < 100.0);

  SplitMix64 rng(1);
  CHECK(random_subset(field, 101, false, rng).size() == 101);
  CHECK_THROWS_AS(random_subset(field, 101, true, rng), Error);
}

TEST_CASE("format_double is the shortest round-trip form") {
  CHECK(format_double(3.2) == "3.2");
  CHECK(format_double(2.8125) == "2.8125");
  CHECK(format_double(1.0) == "1");
  for (double x : {0.1, 1.0 / 3.0, 5.477225575051661, 1e-300, 123456789.125}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("prime sweep: header, row count, byte-identical output across thread counts") {
  SweepConfig cfg;
  cfg.modulus = 101;
  cfg.kind = FieldKind::prime_field;
  cfg.sizes = {5};
  cfg.trials = 2;
  cfg.seed = 42;
  const auto rows = run_sweep(cfg, 1);
  CHECK(rows.size() == 2);
  const std::string one = csv_of(cfg, 1);
  CHECK(one == csv_of(cfg, 1));
  CHECK(one.substr(0, one.find('\n')) == kSweepCsvHeader);
  CHECK(kSweepCsvHeader ==
        "modulus,kind,size,trial,derived_seed,sum_size,prod_size,lhs,bound,ratio,J,fourier_max,"
        "fourier_cap,elapsed_micros");

  cfg.sizes = {1, 2, 4, 8, 16, 32, 64, 100};
  cfg.trials = 5;
  CHECK(csv_of(cfg, 1) == csv_of(cfg, 8));
  for (const SweepRow& r : run_sweep(cfg, 3)) {
    REQUIRE(r.verified);
    REQUIRE(r.ratio >= kPrimeConstant);
    REQUIRE(r.j.has_value());
    REQUIRE(std::abs(r.ratio - double(r.lhs) / r.bound) <= 1e-12 * r.ratio);
    REQUIRE(r.derived_seed == derive_seed(42, r.size, r.trial));
    REQUIRE(r.elapsed_micros == 0);
  }
}

TEST_CASE("ring sweep rows leave J empty") {
  SweepConfig cfg;
  cfg.modulus = 36;
  cfg.kind = FieldKind::residue_ring;
  cfg.sizes = {3, 12, 30};
  cfg.trials = 4;
  cfg.seed = 9;
  cfg.exclude_zero = false;
  const std::string csv = csv_of(cfg, 2);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (line.back() == ',') fields.emplace_back();
    REQUIRE(fields.size() == 14);
    CHECK(fields[1] == "ring");
    CHECK(fields[10].empty());
  }
  CHECK(rows == 12);
  for (const SweepRow& r : run_sweep(cfg, 1)) {
    REQUIRE(r.verified);
    REQUIRE(r.ratio >= kRingConstant);
    REQUIRE(!r.j.has_value());
  }
}

TEST_CASE("sampled rows re-validate against fresh single-threaded reports") {
  SweepConfig cfg;
  cfg.modulus = 499;
  cfg.kind = FieldKind::prime_field;
  cfg.sizes = {3, 30, 300};
  cfg.trials = 100;
  cfg.seed = 20240601;
  const auto rows = run_sweep(cfg, 4);
  const auto field = make_modulus_ptr(499);
  for (std::size_t i = 0; i < rows.size(); i += 100) {  // 1% of rows
    const SweepRow& row = rows[i];
    SplitMix64 rng(row.derived_seed);
    const TheoremOneReport fresh = theorem1_report(random_subset(field, row.size, true, rng));
    CHECK(fresh.lhs == row.lhs);
    CHECK(fresh.ratio == row.ratio);
    CHECK(fresh.j == row.j.value());
    CHECK(fresh.fourier_max == row.fourier_max);
  }
}

TEST_CASE("sweep configuration errors") {
  SweepConfig cfg;
  cfg.modulus = 101;
  cfg.sizes = {101};
  cfg.trials = 1;
  CHECK_THROWS_AS(run_sweep(cfg), Error);  // only 100 nonzero residues
  cfg.sizes = {5};
  cfg.trials = 0;
  CHECK_THROWS_AS(run_sweep(cfg), Error);
  cfg.trials = 1;
  cfg.modulus = 100;
  CHECK_THROWS_AS(run_sweep(cfg), Error);  // not prime
}

TEST_CASE("run_exhaustive") {
  const ExhaustiveSummary s = run_exhaustive(5, 2);
  CHECK(s.subsets == 6);
  CHECK(s.ok());
  // oracle: minimum over the six 2-subsets of {1,2,3,4}
  double best = 1e300;
  std::vector<Residue> witness;
  for (std::uint64_t mask = 1; mask < 16; ++mask) {
    if (std::popcount(mask) != 2) continue;
    const auto a = oracle::from_mask(mask, 1);
    const double lhs = double(oracle::sumset(a, a, 5).size() * oracle::productset(a, a, 5).size());
    const double ratio = lhs / std::min(10.0, 16.0 / 5.0);
    if (ratio < best || (ratio == best && a < witness)) {
      best = ratio;
      witness = a;
    }
  }
  CHECK(s.min_ratio == doctest::Approx(best).epsilon(1e-15));
  CHECK(s.witness == witness);

  const ExhaustiveSummary all = run_exhaustive(7, 6);
  CHECK(all.subsets == 1);
  CHECK(all.witness == std::vector<Residue>{1, 2, 3, 4, 5, 6});
  CHECK(all.min_ratio == doctest::Approx(1.0));

  try {
    run_exhaustive(23, 11);
    FAIL("expected cap error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::size_cap);
  }
  CHECK_THROWS_AS(run_exhaustive(7, 0), Error);
  CHECK_THROWS_AS(run_exhaustive(9, 2), Error);
}

TEST_CASE("report JSON uses snake_case keys mirroring the report") {
  const auto j = to_json(theorem1_report(ResidueSet(make_modulus_ptr(5), {1, 2})));
  CHECK(j.at("lhs") == 9);
  CHECK(j.at("j") == 9);
  CHECK(j.at("ratio") == 2.8125);
  CHECK(j.at("stripped_zero") == false);
  const auto t2 = to_json(theorem2_report(ResidueSet(make_modulus_ptr(9), {0, 3, 6})));
  CHECK(t2.at("branch") == "trivial_d0");
  CHECK(t2.at("d0") == 3);
  for (auto& [key, value] : t2.items()) {
    for (char c : key) CHECK((std::islower(static_cast<unsigned char>(c)) || std::isdigit(c) || c == '_'));
  }
}
