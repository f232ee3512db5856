// Command-line front end: parameter validation, report construction, and
// machine-readable output for every verification pipeline in the library.
//
// Exit codes: 0 every record passed, 1 at least one record failed,
// 2 invalid usage or configuration.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hermzeta/errors.hpp"
#include "hermzeta/report.hpp"

namespace {

constexpr const char* kVersion = "hermzeta 0.1.0";

struct OutputOptions {
  std::string format = "json";
  std::string out_file;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", out.out_file, "Write the report to FILE instead of stdout");
}

void add_run_options(CLI::App* cmd, hermzeta::RunConfig& cfg, bool with_checks) {
  cmd->add_option("--m", cfg.m, "Field parameter m of Q(sqrt(-m))")->capture_default_str();
  cmd->add_option("--ell", cfg.ell, "Determinant ell of the form family")->capture_default_str();
  cmd->add_option("--nmax", cfg.n_max, "Largest index d (or n) covered")->capture_default_str();
  cmd->add_option("--bad-primes", cfg.bad_primes,
                  "Excluded primes (comma list; must cover every prime dividing 2*ell*m)")
      ->delimiter(',');
  if (with_checks)
    cmd->add_option("--checks", cfg.checks,
                    "Identity suites to run (comma list or 'all'): "
                    "r-eq-n, phi-bijective, zeta-hat, latimer, norms, sub-main, partial-zeta")
        ->delimiter(',');
  cmd->add_flag("--experimental", cfg.experimental,
                "Allow parameters outside the certified hypotheses "
                "(non-square-free ell, the extension fields, m = 2 identity runs)");
}

int emit(const hermzeta::Report& report, const OutputOptions& out) {
  std::string body =
      out.format == "csv" ? hermzeta::rp_to_csv(report) : hermzeta::rp_to_json(report);
  if (out.out_file.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(out.out_file, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file: " << out.out_file << "\n";
      return 2;
    }
    f << body;
  }
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact arithmetic of binary Hermitian form classes over imaginary quadratic "
      "fields: class enumeration, representation numbers, partial zeta series, "
      "quaternionic ideal classes, Brandt matrices, and identity verification."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  hermzeta::RunConfig cfg;
  OutputOptions out;
  std::vector<long> scan_ms;
  long scan_ell_max = 20;
  bool scan_experimental = false;
  OutputOptions scan_out;
  scan_out.format = "csv";

  CLI::App* classes = app.add_subcommand(
      "classes", "Enumerate form classes: counts, representatives, automorph orders, types");
  CLI::App* repnums = app.add_subcommand(
      "repnums", "Representation numbers q, p, r for every support class and d <= nmax");
  CLI::App* zeta = app.add_subcommand(
      "zeta", "Dedekind, partial, and hat series coefficients up to nmax");
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the identity suites; exit 1 if any record fails");
  CLI::App* brandt = app.add_subcommand(
      "brandt", "Brandt matrices at good primes <= nmax and the exact eigensystem");
  for (CLI::App* cmd : {classes, repnums, zeta, verify, brandt}) {
    add_run_options(cmd, cfg, cmd == verify);
    add_output_options(cmd, out);
  }

  CLI::App* scan = app.add_subcommand(
      "scan-maximality", "Maximality verdict grid over m in --m and 1 <= ell <= --nmax");
  scan->add_option("--m", scan_ms, "Fields to scan (comma list; empty scans nothing)")
      ->delimiter(',');
  scan->add_option("--nmax", scan_ell_max, "Largest ell in the grid")->capture_default_str();
  scan->add_flag("--experimental", scan_experimental, "Allow the extension fields");
  add_output_options(scan, scan_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto start = std::chrono::steady_clock::now();
  int rc = 2;
  try {
    if (classes->parsed()) rc = emit(hermzeta::rp_classes(cfg), out);
    if (repnums->parsed()) rc = emit(hermzeta::rp_repnums(cfg), out);
    if (zeta->parsed()) rc = emit(hermzeta::rp_zeta(cfg), out);
    if (verify->parsed()) rc = emit(hermzeta::rp_verify(cfg), out);
    if (brandt->parsed()) rc = emit(hermzeta::rp_brandt(cfg), out);
    if (scan->parsed())
      rc = emit(hermzeta::rp_scan_maximality(scan_ms, scan_ell_max, scan_experimental), scan_out);
  } catch (const hermzeta::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::cerr << kVersion << " (" << elapsed.count() << " ms)\n";
  return rc;
}
