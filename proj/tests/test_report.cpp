#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "hermzeta/errors.hpp"
#include "hermzeta/report.hpp"

using namespace hermzeta;

namespace {

RunConfig config(long m, long ell, long n_max, bool experimental = false) {
  RunConfig cfg;
  cfg.m = m;
  cfg.ell = ell;
  cfg.n_max = n_max;
  cfg.experimental = experimental;
  return cfg;
}

const ReportRecord* find_record(const Report& r, const std::string& check,
                                const std::vector<std::pair<std::string, std::string>>& params) {
  for (const ReportRecord& rec : r.records) {
    if (rec.check != check) continue;
    bool match = true;
    for (const auto& [k, v] : params) {
      bool found = false;
      for (const auto& [rk, rv] : rec.params)
        if (rk == k && rv == v) found = true;
      match = match && found;
    }
    if (match) return &rec;
  }
  return nullptr;
}

std::set<std::string> check_names(const Report& r) {
  std::set<std::string> out;
  for (const ReportRecord& rec : r.records) out.insert(rec.check);
  return out;
}

}  // namespace

TEST_CASE("class report: counts, automorphs, and type fibers") {
  Report r = rp_classes(config(1, 1, 10));
  const ReportRecord* count = find_record(r, "class-count", {});
  REQUIRE(count != nullptr);
  CHECK(count->lhs == "1");
  CHECK(find_record(r, "support-count", {})->lhs == "1");
  CHECK(find_record(r, "type-count", {})->lhs == "1");
  const ReportRecord* rep = find_record(r, "class-rep", {{"index", "0"}});
  REQUIRE(rep != nullptr);
  CHECK(rep->lhs == "8");  // automorph count of the base class over Q(i)
  CHECK(find_record(r, "class-rep", {{"index", "0"}, {"support", "true"}}) != nullptr);
  CHECK(find_record(r, "class-rep", {{"index", "0"}, {"rho", "0"}}) != nullptr);

  Report r3 = rp_classes(config(3, 1, 10));
  CHECK(find_record(r3, "class-rep", {{"index", "0"}})->lhs == "12");

  Report r113 = rp_classes(config(11, 3, 10));
  CHECK(find_record(r113, "class-count", {})->lhs == "4");
  CHECK(find_record(r113, "support-count", {})->lhs == "4");
  CHECK(find_record(r113, "type-count", {})->lhs == "3");
  CHECK(r113.all_pass());
}

TEST_CASE("repnum report carries q, p, r per support class") {
  Report r = rp_repnums(config(1, 1, 5));
  CHECK(find_record(r, "repnum-all", {{"d", "5"}})->lhs == "48");
  CHECK(find_record(r, "repnum-primitive", {{"d", "5"}})->lhs == "32");
  CHECK(find_record(r, "repnum-residue", {{"d", "5"}})->lhs == "4");
  // every d from 1 to nmax appears, bad or not
  CHECK(find_record(r, "repnum-all", {{"d", "2"}}) != nullptr);
  CHECK(r.records.size() == 3 * 5);
}

TEST_CASE("zeta report: Dedekind coefficients plus good-index series") {
  Report r = rp_zeta(config(1, 1, 10));
  CHECK(find_record(r, "dedekind-coeff", {{"n", "5"}})->lhs == "2");
  CHECK(find_record(r, "dedekind-coeff", {{"n", "3"}})->lhs == "0");
  // 2 is the only bad prime here: series records exist exactly at odd n
  CHECK(find_record(r, "zeta-hat-coeff", {{"n", "5"}})->lhs == "6");
  CHECK(find_record(r, "zeta-hat-coeff", {{"n", "3"}})->lhs == "4");
  CHECK(find_record(r, "zeta-xi-coeff", {{"n", "4"}}) == nullptr);
  CHECK(find_record(r, "zeta-hat-coeff", {{"n", "6"}}) == nullptr);
}

TEST_CASE("verify runs every suite and passes on the base configuration") {
  Report r = rp_verify(config(1, 1, 15));
  CHECK(r.all_pass());
  std::set<std::string> names = check_names(r);
  CHECK(names.count("r-eq-n") == 1);
  CHECK(names.count("phi-class") == 1);
  CHECK(names.count("phi-total") == 1);
  CHECK(names.count("zeta-hat-q") == 1);
  CHECK(names.count("zeta-hat-count") == 1);
  CHECK(names.count("latimer-invertible") == 1);
  CHECK(names.count("latimer-norm-sq") == 1);
  CHECK(names.count("latimer-conj-norm") == 1);
  CHECK(names.count("norm-square-index") == 1);
  CHECK(names.count("norm-conj") == 1);
  CHECK(names.count("sub-main") == 1);
  CHECK(names.count("sub-main-fiber") == 1);
  CHECK(names.count("partial-zeta") == 1);
  // the echoed check list is the canonical order
  bool found = false;
  for (const auto& [k, v] : r.config)
    if (k == "checks") {
      found = true;
      CHECK(v == "r-eq-n,phi-bijective,zeta-hat,latimer,norms,sub-main,partial-zeta");
    }
  CHECK(found);
}

TEST_CASE("verify respects an explicit check subset") {
  RunConfig cfg = config(3, 2, 10);
  cfg.checks = {"r-eq-n", "latimer"};
  Report r = rp_verify(cfg);
  CHECK(r.all_pass());
  std::set<std::string> names = check_names(r);
  CHECK(names.count("r-eq-n") == 1);
  CHECK(names.count("latimer-invertible") == 1);
  CHECK(names.count("phi-class") == 0);
  CHECK(names.count("sub-main") == 0);

  cfg.checks = {"no-such-check"};
  CHECK_THROWS_AS(rp_verify(cfg), InvalidParameter);
}

TEST_CASE("verify with several classes: the distinctness and fiber records appear") {
  Report r = rp_verify(config(11, 3, 12));
  CHECK(r.all_pass());
  CHECK(find_record(r, "latimer-classes-distinct", {{"i", "0"}, {"j", "3"}}) != nullptr);
  CHECK(find_record(r, "sub-main-fiber", {{"type", "2"}}) != nullptr);
}

TEST_CASE("strict validation: hypotheses required unless experimental") {
  CHECK_THROWS_AS(rp_classes(config(1, 4, 10)), InvalidParameter);   // ell not square-free
  CHECK_NOTHROW(rp_classes(config(1, 4, 10, true)));
  CHECK_THROWS_AS(rp_classes(config(15, 1, 10)), UnsupportedField);  // m not class number one
  CHECK_THROWS_AS(rp_classes(config(19, 1, 10)), UnsupportedField);  // extension list is gated
  CHECK_NOTHROW(rp_classes(config(19, 1, 5, true)));
  CHECK_THROWS_AS(rp_verify(config(1, 3, 10)), InvalidParameter);    // ell != 1 mod 4
  CHECK_THROWS_AS(rp_verify(config(2, 1, 10)), InvalidParameter);    // m = 2 identity layer
  CHECK_THROWS_AS(rp_brandt(config(1, 3, 10)), InvalidParameter);
  CHECK_THROWS_AS(rp_classes(config(0, 1, 10)), UnsupportedField);
  CHECK_THROWS_AS(rp_classes(config(1, 0, 10)), InvalidParameter);
  CHECK_THROWS_AS(rp_classes(config(1, -3, 10)), InvalidParameter);

  RunConfig primes = config(1, 1, 10);
  primes.bad_primes = {4};
  CHECK_THROWS_AS(rp_classes(primes), InvalidParameter);  // 4 is not prime
  primes.bad_primes = {3};
  CHECK_THROWS_AS(rp_classes(primes), InvalidParameter);  // must cover 2
  primes.bad_primes = {2, 5};
  CHECK_NOTHROW(rp_classes(primes));                      // superset is allowed
}

TEST_CASE("experimental escape hatches keep the uncertified layers honest") {
  Report r = rp_verify(config(1, 3, 10, true));
  CHECK(r.all_pass());
  CHECK(check_names(r).count("sub-main") == 0);  // auto-skipped, not silently run
  CHECK(!r.warnings.empty());

  Report r2 = rp_verify(config(2, 1, 8, true));
  CHECK(r2.all_pass());
  CHECK(check_names(r2).count("sub-main") == 0);

  RunConfig force = config(2, 1, 8, true);
  force.checks = {"sub-main"};
  CHECK_THROWS_AS(rp_verify(force), InvalidParameter);
  RunConfig force13 = config(1, 3, 10, true);
  force13.checks = {"sub-main"};
  CHECK_THROWS_AS(rp_verify(force13), InvalidParameter);
}

TEST_CASE("verify with a wider excluded set drops the extra indices") {
  RunConfig cfg = config(1, 1, 15);
  cfg.bad_primes = {2, 3};
  Report r = rp_verify(cfg);
  CHECK(r.all_pass());
  CHECK(find_record(r, "r-eq-n", {{"d", "3"}}) == nullptr);
  CHECK(find_record(r, "r-eq-n", {{"d", "5"}}) != nullptr);
}

TEST_CASE("brandt report: entries at good primes and the exact eigensystem") {
  Report r = rp_brandt(config(11, 1, 7));
  CHECK(r.all_pass());
  CHECK(find_record(r, "brandt-entry", {{"p", "3"}, {"i", "0"}, {"j", "0"}})->lhs == "2");
  CHECK(find_record(r, "brandt-entry", {{"p", "3"}, {"i", "1"}, {"j", "0"}})->lhs == "3");
  CHECK(find_record(r, "brandt-entry", {{"p", "2"}, {"i", "0"}, {"j", "0"}}) == nullptr);
  CHECK(find_record(r, "eigenvalue", {{"form", "0"}, {"p", "7"}})->lhs == "8");
  CHECK(find_record(r, "eigenvalue", {{"form", "1"}, {"p", "3"}})->lhs == "-1");
  CHECK(r.warnings.empty());

  // quadratic eigenvalue field serializes exactly
  Report rq = rp_brandt(config(7, 5, 13));
  CHECK(find_record(rq, "eigenvalue", {{"form", "1"}, {"p", "13"}})->lhs == "5/2-1/2*sqrt(17)");
  CHECK(find_record(rq, "eigenvalue", {{"form", "2"}, {"p", "13"}})->lhs == "5/2+1/2*sqrt(17)");

  // a type space needing a cubic splitting field: matrices still emitted,
  // eigensystem reported unavailable
  Report rc = rp_brandt(config(7, 13, 5));
  CHECK(find_record(rc, "brandt-entry", {{"p", "3"}}) != nullptr);
  CHECK(check_names(rc).count("eigenvalue") == 0);
  REQUIRE(!rc.warnings.empty());
  CHECK(rc.warnings.back().find("eigensystem unavailable") == 0);
}

TEST_CASE("maximality scan: asserted rows, evidence rows, empty grid") {
  Report r = rp_scan_maximality({3}, 10, false);
  CHECK(r.records.size() == 10);
  CHECK(r.all_pass());
  const ReportRecord* row4 = find_record(r, "maximality", {{"ell", "4"}});
  CHECK(row4->lhs == "unconstrained");
  CHECK(row4->rhs == "nonmaximal");
  const ReportRecord* row5 = find_record(r, "maximality", {{"ell", "5"}});
  CHECK(row5->lhs == "maximal");
  CHECK(row5->rhs == "maximal");

  // m = 2: no row carries an expectation, so the grid is pure evidence
  Report r2 = rp_scan_maximality({2}, 8, false);
  CHECK(r2.all_pass());
  for (const ReportRecord& rec : r2.records) CHECK(rec.lhs == "unconstrained");

  Report empty = rp_scan_maximality({}, 10, false);
  CHECK(empty.records.empty());
  CHECK(empty.all_pass());

  // duplicated and unsorted input is canonicalized
  Report dedup = rp_scan_maximality({3, 1, 3}, 4, false);
  CHECK(dedup.records.size() == 8);
  CHECK(dedup.records.front().params[0].second == "1");
}

TEST_CASE("json serialization: schema shape and exact decimal strings") {
  Report r = rp_classes(config(1, 1, 10));
  nlohmann::json j = nlohmann::json::parse(rp_to_json(r));
  REQUIRE(j.contains("config"));
  REQUIRE(j.contains("records"));
  REQUIRE(j.contains("summary"));
  CHECK(j["config"]["m"] == "1");
  CHECK(j["config"]["subcommand"] == "classes");
  CHECK(j["config"]["bad_primes"] == "2");
  CHECK(j["summary"]["pass"].is_number_integer());
  CHECK(j["summary"]["pass"] == 4);
  CHECK(j["summary"]["fail"] == 0);
  for (const auto& rec : j["records"]) {
    REQUIRE(rec.contains("check"));
    REQUIRE(rec.contains("params"));
    CHECK(rec["lhs"].is_string());
    CHECK(rec["rhs"].is_string());
    CHECK(rec["pass"].is_boolean());
  }
}

TEST_CASE("csv serialization: header and flattened params") {
  Report r = rp_scan_maximality({1}, 2, false);
  std::string csv = rp_to_csv(r);
  CHECK(csv.rfind("check,params,lhs,rhs,pass\n", 0) == 0);
  CHECK(csv.find("maximality,m=1;ell=1;conditions=true") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("summary counts distinguish passing and failing records") {
  Report r;
  r.config.emplace_back("subcommand", "synthetic");
  ReportRecord good{"demo", {{"k", "1"}}, "3", "3", true};
  ReportRecord bad{"demo", {{"k", "2"}}, "3", "4", false};
  r.records = {good, bad, good};
  CHECK(r.pass_count() == 2);
  CHECK(r.fail_count() == 1);
  CHECK(!r.all_pass());
  nlohmann::json j = nlohmann::json::parse(rp_to_json(r));
  CHECK(j["summary"]["pass"] == 2);
  CHECK(j["summary"]["fail"] == 1);
  CHECK(j["records"][1]["pass"] == false);
}

TEST_CASE("reports are deterministic: independent builds serialize identically") {
  CHECK(rp_to_json(rp_verify(config(11, 1, 12))) == rp_to_json(rp_verify(config(11, 1, 12))));
  CHECK(rp_to_csv(rp_brandt(config(1, 5, 10))) == rp_to_csv(rp_brandt(config(1, 5, 10))));
  CHECK(rp_to_json(rp_scan_maximality({1, 2, 3}, 6, false)) ==
        rp_to_json(rp_scan_maximality({1, 2, 3}, 6, false)));
}
