// Command-line front end. Exit codes: 0 success, 1 a bound or proof step
// failed, 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "sumprod/construct.hpp"
#include "sumprod/experiments.hpp"
#include "sumprod/spectral.hpp"
#include "sumprod/theorems.hpp"

namespace {

using namespace sumprod;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

int emit(const json& j, bool ok) {
  std::cout << j.dump(2) << '\n';
  return ok ? kOk : kViolation;
}

int cmd_construct(std::uint64_t p, std::uint64_t n, const std::string& json_path) {
  const ExtremalConstruction c = build_extremal(p, n);
  const std::uint64_t pigeonhole = (c.length * c.length + p - 1) / p;
  const bool ok = c.a.size() == n && c.window.count >= pigeonhole &&
                  c.max_size <= c.structural_cap();
  json j = to_json(c);
  j["pigeonhole_floor"] = pigeonhole;
  j["guarantees_hold"] = ok;
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw Error(ErrorKind::parse, "cannot write " + json_path);
    out << j.dump(2) << '\n';
  }
  return emit(j, ok);
}

int cmd_verify_t1(std::uint64_t p, const std::string& set_path) {
  const ModulusPtr field = make_modulus_ptr(p);
  if (!field->is_prime) throw Error(ErrorKind::domain, std::to_string(p) + " is not prime");
  const ParsedSet parsed = parse_set_file(set_path, field);
  const TheoremOneReport r = theorem1_report(parsed.set);
  json j = to_json(r);
  j["duplicates"] = parsed.duplicates;
  return emit(j, r.all_hold());
}

int cmd_verify_t2(std::uint64_t m, const std::string& set_path) {
  const ParsedSet parsed = parse_set_file(set_path, make_modulus_ptr(m));
  const TheoremTwoReport r = theorem2_report(parsed.set);
  const NonunitBoundReport nonunit = nonunit_bound_check(parsed.set);
  const RingProofChecks checks = ring_proof_checks(parsed.set, r);
  json j = to_json(r);
  j["duplicates"] = parsed.duplicates;
  const json proof = to_json(checks);
  const json caps = to_json(nonunit);
  for (const auto& [key, value] : proof.items()) j["proof_" + key] = value;
  for (const auto& [key, value] : caps.items()) j["nonunit_" + key] = value;
  const bool ok = r.constant_holds() && r.dilation_holds() && r.unit_majority_holds() &&
                  nonunit.holds() && checks.all_hold();
  return emit(j, ok);
}

int cmd_spectral(std::uint64_t p, const std::string& set_path) {
  const ModulusPtr field = make_modulus_ptr(p);
  if (!field->is_prime) throw Error(ErrorKind::domain, std::to_string(p) + " is not prime");
  const ParsedSet parsed = parse_set_file(set_path, field);
  const ResidueSet& a = parsed.set;
  if (a.empty()) throw Error(ErrorKind::empty_input, "empty set");
  const QuadrupleSpectrum spectral = spectral_quadruple_count(a);
  const std::uint64_t exact = count_quadruples(a);
  const double j_exact = static_cast<double>(exact);
  const TheoremOneReport r = theorem1_report(a);

  const bool identity = std::abs(spectral.count - j_exact) <= kRelTol * j_exact &&
                        std::abs(spectral.imaginary_residue) <= kRelTol * j_exact;
  json j = {{"p", p},
            {"size_a", a.size()},
            {"spectral_j", spectral.count},
            {"spectral_imaginary", spectral.imaginary_residue},
            {"j", exact},
            {"identity_holds", identity},
            {"fourier_max", r.fourier_max},
            {"fourier_cap", r.fourier_cap},
            {"fourier_holds", r.fourier_holds()},
            {"cs_sum", r.cs_sum},
            {"cs_cap", r.cs_cap},
            {"cs_holds", r.cs_holds()},
            {"duplicates", parsed.duplicates}};
  return emit(j, identity && r.fourier_holds() && r.cs_holds());
}

int cmd_sweep(SweepConfig cfg, const std::string& kind, bool include_zero, bool exclude_zero,
              unsigned threads) {
  if (kind == "prime")
    cfg.kind = FieldKind::prime_field;
  else if (kind == "ring")
    cfg.kind = FieldKind::residue_ring;
  else
    throw Error(ErrorKind::parse, "--kind must be prime or ring");
  cfg.exclude_zero = cfg.kind == FieldKind::prime_field;
  if (include_zero) cfg.exclude_zero = false;
  if (exclude_zero) cfg.exclude_zero = true;

  const std::vector<SweepRow> rows = run_sweep(cfg, threads);
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::parse, "cannot write " + cfg.output_path);
  write_sweep_csv(out, rows);
  out.close();

  std::uint64_t failures = 0;
  double min_ratio = rows.empty() ? 0.0 : rows.front().ratio;
  for (const SweepRow& r : rows) {
    if (!r.verified) ++failures;
    min_ratio = std::min(min_ratio, r.ratio);
  }
  json j = {{"rows", rows.size()}, {"failures", failures}, {"min_ratio", min_ratio},
            {"out", cfg.output_path}};
  return emit(j, failures == 0);
}

int cmd_exhaustive(std::uint64_t p, std::uint64_t k) {
  const ExhaustiveSummary s = run_exhaustive(p, k);
  return emit(to_json(s), s.ok());
}

int cmd_zm_extremal(std::uint64_t p) {
  const ExtremalRingExample e = zm_extremal(p);
  return emit(to_json(e), e.matches());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum sets, product sets and sum-product bounds over Z_m"};
  app.require_subcommand(1);

  std::uint64_t p = 0, n = 0, m = 0, k = 0;
  std::string set_path, json_path;

  auto* construct = app.add_subcommand("construct", "Build a set with small A+A and AA");
  construct->add_option("--p", p, "prime")->required();
  construct->add_option("--n", n, "target size")->required();
  construct->add_option("--json", json_path, "also write the report here");

  auto* t1 = app.add_subcommand("verify-t1", "Prime-field report for a set file");
  t1->add_option("--p", p, "prime")->required();
  t1->add_option("--set", set_path, "set file")->required();

  auto* t2 = app.add_subcommand("verify-t2", "Residue-ring report for a set file");
  t2->add_option("--m", m, "modulus")->required();
  t2->add_option("--set", set_path, "set file")->required();

  SweepConfig cfg;
  std::string kind;
  bool include_zero = false, exclude_zero = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Seeded random sweep written as CSV");
  sweep->add_option("--modulus", cfg.modulus, "modulus")->required();
  sweep->add_option("--kind", kind, "prime|ring")->required();
  sweep->add_option("--sizes", cfg.sizes, "comma-separated sizes")->required()->delimiter(',');
  sweep->add_option("--trials", cfg.trials, "trials per size")->required();
  sweep->add_option("--seed", cfg.seed, "64-bit seed")->required();
  sweep->add_option("--out", cfg.output_path, "CSV path")->required();
  sweep->add_option("--threads", threads, "worker threads (output is unaffected)");
  auto* inc = sweep->add_flag("--include-zero", include_zero, "allow 0 in prime-field sets");
  sweep->add_flag("--exclude-zero", exclude_zero, "never draw 0")->excludes(inc);
  sweep->add_flag("--timing", cfg.record_timing, "fill elapsed_micros (not reproducible)");

  auto* exhaustive = app.add_subcommand("exhaustive", "All k-subsets of F_p \\ {0}");
  exhaustive->add_option("--p", p, "prime <= 19")->required();
  exhaustive->add_option("--k", k, "subset size")->required();

  auto* spectral = app.add_subcommand("spectral", "Character-sum evaluation of the quadruple count");
  spectral->add_option("--p", p, "prime")->required();
  spectral->add_option("--set", set_path, "set file")->required();

  auto* zm = app.add_subcommand("zm-extremal", "A = pZ inside Z_{p^2}");
  zm->add_option("--p", p, "prime")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*construct) return cmd_construct(p, n, json_path);
    if (*t1) return cmd_verify_t1(p, set_path);
    if (*t2) return cmd_verify_t2(m, set_path);
    if (*sweep) return cmd_sweep(cfg, kind, include_zero, exclude_zero, threads);
    if (*exhaustive) return cmd_exhaustive(p, k);
    if (*spectral) return cmd_spectral(p, set_path);
    if (*zm) return cmd_zm_extremal(p);
  } catch (const sumprod::Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
