#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace hermzeta {

// Run parameters shared by every subcommand.  Fully deterministic: two runs
// with equal configs produce byte-identical reports.
struct RunConfig {
  long m = 1;
  long ell = 1;
  long n_max = 100;
  std::vector<long> bad_primes;     // empty: default to the primes dividing 2*ell*m
  std::vector<std::string> checks;  // verify only; empty means every available check
  bool experimental = false;
};

// One verified (or emitted) fact.  Params carry everything needed to re-run
// the single check in isolation; values are exact decimal strings.
struct ReportRecord {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  std::string lhs, rhs;
  bool pass = true;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> config;  // ordered echo
  std::vector<ReportRecord> records;
  std::vector<std::string> warnings;  // for stderr; never serialized

  std::size_t pass_count() const;
  std::size_t fail_count() const;
  bool all_pass() const;
};

// Canonical serializations.  JSON is the primary format; CSV flattens params
// into "key=value;..." cells for grid-shaped reports.
std::string rp_to_json(const Report& r);
std::string rp_to_csv(const Report& r);

// The verify suites in their canonical order.
extern const std::vector<std::string> rp_all_checks;

// Class enumeration: counts, canonical representatives, automorph orders,
// support flags, and the class-to-type fiber structure.
Report rp_classes(const RunConfig& cfg);

// Representation numbers q(f, d), p(f, d), r(f, d) per support class.
Report rp_repnums(const RunConfig& cfg);

// Dedekind coefficients and the partial/hat series per support class.
Report rp_zeta(const RunConfig& cfg);

// Identity suites (subset via cfg.checks) over d <= n_max coprime to the bad
// primes; any failing record makes the report fail.
Report rp_verify(const RunConfig& cfg);

// Brandt matrices at good primes <= n_max, plus the exact eigenforms and
// eigenvalues of the compressed family when the type space splits.
Report rp_brandt(const RunConfig& cfg);

// Maximality verdict grid over the listed m and 1 <= ell <= ell_max; rows
// whose hypotheses hold assert a maximal verdict, the rest are evidence.
Report rp_scan_maximality(const std::vector<long>& m_list, long ell_max, bool experimental);

}  // namespace hermzeta
