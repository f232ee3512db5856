#include "hermzeta/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "hermzeta/errors.hpp"
#include "hermzeta/hecke_classfns.hpp"
#include "hermzeta/orthogonal_side.hpp"

namespace hermzeta {

const std::vector<std::string> rp_all_checks = {
    "r-eq-n", "phi-bijective", "zeta-hat", "latimer", "norms", "sub-main", "partial-zeta"};

std::size_t Report::pass_count() const {
  std::size_t n = 0;
  for (const ReportRecord& r : records) n += r.pass ? 1 : 0;
  return n;
}

std::size_t Report::fail_count() const { return records.size() - pass_count(); }

bool Report::all_pass() const { return fail_count() == 0; }

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string rp_to_json(const Report& r) {
  nlohmann::ordered_json root;
  root["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) root["config"][k] = v;
  root["records"] = nlohmann::ordered_json::array();
  for (const ReportRecord& rec : r.records) {
    nlohmann::ordered_json j;
    j["check"] = rec.check;
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rec.params) j["params"][k] = v;
    j["lhs"] = rec.lhs;
    j["rhs"] = rec.rhs;
    j["pass"] = rec.pass;
    root["records"].push_back(std::move(j));
  }
  root["summary"]["pass"] = r.pass_count();
  root["summary"]["fail"] = r.fail_count();
  return root.dump(2) + "\n";
}

std::string rp_to_csv(const Report& r) {
  std::ostringstream os;
  os << "check,params,lhs,rhs,pass\n";
  for (const ReportRecord& rec : r.records) {
    os << rec.check << ',';
    for (std::size_t i = 0; i < rec.params.size(); ++i)
      os << (i ? ";" : "") << rec.params[i].first << '=' << rec.params[i].second;
    os << ',' << rec.lhs << ',' << rec.rhs << ',' << (rec.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Shared validation and small helpers
// ---------------------------------------------------------------------------

namespace {

std::string str(const Int& n) { return n.get_str(); }
std::string str(const Rat& r) { return r.get_str(); }
std::string str(long n) { return std::to_string(n); }
std::string str(std::size_t n) { return std::to_string(n); }
std::string str(bool b) { return b ? "true" : "false"; }

using Params = std::vector<std::pair<std::string, std::string>>;

ReportRecord make_record(std::string check, Params params, std::string lhs, std::string rhs) {
  ReportRecord rec;
  rec.check = std::move(check);
  rec.params = std::move(params);
  rec.pass = lhs == rhs;
  rec.lhs = std::move(lhs);
  rec.rhs = std::move(rhs);
  return rec;
}

// A record that emits a value rather than comparing two sides.
ReportRecord make_value(std::string check, Params params, std::string value) {
  std::string copy = value;
  return make_record(std::move(check), std::move(params), std::move(value), std::move(copy));
}

struct Validated {
  FieldParams fp;
  Int ell;
  PrimeSet excluded;
};

// strict: the subcommand asserts theorem-level identities, so the certified
// maximality hypotheses are required unless --experimental is given.
Validated validate(const RunConfig& cfg, bool strict, Report& report) {
  Validated v;
  v.fp = make_field(cfg.m, cfg.experimental);
  HZ_REQUIRE(cfg.ell >= 1, InvalidParameter, "ell must be a positive integer");
  HZ_REQUIRE(cfg.n_max >= 1, InvalidParameter, "nmax must be a positive integer");
  v.ell = cfg.ell;
  if (!is_squarefree(v.ell)) {
    HZ_REQUIRE(cfg.experimental, InvalidParameter,
               "ell is not square-free; pass --experimental to proceed");
    report.warnings.push_back("ell is not square-free; results are outside the certified range");
  }
  if (cfg.bad_primes.empty()) {
    v.excluded = zs_bad_primes(v.fp, v.ell);
  } else {
    std::vector<Int> primes;
    for (long p : cfg.bad_primes) {
      Int ip(p);
      HZ_REQUIRE(p >= 2 && mpz_probab_prime_p(ip.get_mpz_t(), 30) != 0, InvalidParameter,
                 "--bad-primes entries must be prime");
      primes.push_back(std::move(ip));
    }
    v.excluded = make_prime_set(std::move(primes));
    for (const Int& p : zs_bad_primes(v.fp, v.ell).primes)
      HZ_REQUIRE(!ps_coprime(v.excluded, p), InvalidParameter,
                 "--bad-primes must cover every prime dividing 2*ell*m");
  }
  bool conditions = os_known_maximal_conditions(v.fp, v.ell);
  if (strict && (!conditions || cfg.m == 2)) {
    HZ_REQUIRE(cfg.experimental, InvalidParameter,
               cfg.m == 2 ? "identity checks over Q(sqrt(-2)) are experimental evidence only; "
                            "pass --experimental to proceed"
                          : "(m, ell) is outside the certified maximality conditions; "
                            "pass --experimental to proceed");
  }
  if (!conditions)
    report.warnings.push_back(
        "(m, ell) does not satisfy the certified maximality conditions; "
        "identity layers carry no a-priori guarantee here");
  if (cfg.m == 2)
    report.warnings.push_back("reports over Q(sqrt(-2)) are experimental evidence");
  return v;
}

void echo_config(Report& report, const std::string& subcommand, const RunConfig& cfg,
                 const Validated& v) {
  report.config.emplace_back("subcommand", subcommand);
  report.config.emplace_back("m", str(cfg.m));
  report.config.emplace_back("ell", str(cfg.ell));
  report.config.emplace_back("n_max", str(cfg.n_max));
  std::string primes;
  for (const Int& p : v.excluded.primes) primes += (primes.empty() ? "" : ",") + str(p);
  report.config.emplace_back("bad_primes", primes);
  report.config.emplace_back("experimental", str(cfg.experimental));
}

bool good_index(const Validated& v, long d) { return ps_coprime(v.excluded, Int(d)); }

ClassTypeData class_type_data(const Validated& v) {
  return qa_class_type_data(v.fp, v.ell, v.excluded.primes);
}

}  // namespace

// ---------------------------------------------------------------------------
// classes
// ---------------------------------------------------------------------------

Report rp_classes(const RunConfig& cfg) {
  Report report;
  Validated v = validate(cfg, /*strict=*/false, report);
  echo_config(report, "classes", cfg, v);

  ClassTypeData data = class_type_data(v);
  const ClassList& classes = data.forms;
  Params base = {{"m", str(cfg.m)}, {"ell", str(cfg.ell)}};
  report.records.push_back(make_value("class-count", base, str(classes.class_count())));
  report.records.push_back(make_value("support-count", base, str(data.h1())));
  report.records.push_back(make_value("type-count", base, str(data.h2())));

  for (std::size_t i = 0; i < classes.class_count(); ++i) {
    const HermForm& f = classes.reps[i];
    Params params = base;
    params.emplace_back("index", str(i));
    params.emplace_back("a", str(f.a));
    params.emplace_back("b_x", str(f.b.x));
    params.emplace_back("b_y", str(f.b.y));
    params.emplace_back("d", str(f.d));
    params.emplace_back("support", str(bool(classes.in_support[i])));
    std::size_t pos = classes.support_count();
    for (std::size_t s = 0; s < classes.support_count(); ++s)
      if (classes.support_indices[s] == i) pos = s;
    params.emplace_back("rho", pos < classes.support_count() ? str(data.rho_map[pos]) : "-");
    report.records.push_back(
        make_value("class-rep", std::move(params), str(classes.automorph_counts[i])));
  }
  return report;
}

// ---------------------------------------------------------------------------
// repnums
// ---------------------------------------------------------------------------

Report rp_repnums(const RunConfig& cfg) {
  Report report;
  Validated v = validate(cfg, /*strict=*/false, report);
  echo_config(report, "repnums", cfg, v);

  ClassList classes = hf_enumerate_classes(v.fp, v.ell);
  for (std::size_t s = 0; s < classes.support_count(); ++s) {
    const HermForm& f = classes.reps[classes.support_indices[s]];
    for (long d = 1; d <= cfg.n_max; ++d) {
      Params params = {{"m", str(cfg.m)}, {"ell", str(cfg.ell)}, {"class", str(s)}, {"d", str(d)}};
      report.records.push_back(
          make_value("repnum-all", params, str(hf_all_reps(v.fp, f, Int(d)))));
      report.records.push_back(
          make_value("repnum-primitive", params, str(hf_primitive_reps(v.fp, f, Int(d)))));
      report.records.push_back(
          make_value("repnum-residue", std::move(params), str(hf_r_class(v.fp, f, Int(d)))));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

Report rp_zeta(const RunConfig& cfg) {
  Report report;
  Validated v = validate(cfg, /*strict=*/false, report);
  echo_config(report, "zeta", cfg, v);

  DirichletCoeffs dedekind = zs_dedekind(v.fp, cfg.n_max);
  for (long n = 1; n <= cfg.n_max; ++n)
    report.records.push_back(make_value(
        "dedekind-coeff", {{"m", str(cfg.m)}, {"n", str(n)}}, str(dedekind.c(n))));

  ClassList classes = hf_enumerate_classes(v.fp, v.ell);
  std::vector<DirichletCoeffs> xi = zs_zeta_xi_all(classes, v.excluded, cfg.n_max);
  std::vector<DirichletCoeffs> hat = zs_zeta_hat_all(classes, v.excluded, cfg.n_max);
  for (std::size_t s = 0; s < classes.support_count(); ++s) {
    for (long n = 1; n <= cfg.n_max; ++n) {
      if (!good_index(v, n)) continue;
      Params params = {{"m", str(cfg.m)}, {"ell", str(cfg.ell)}, {"class", str(s)}, {"n", str(n)}};
      report.records.push_back(make_value("zeta-xi-coeff", params, str(xi[s].c(n))));
      report.records.push_back(make_value("zeta-hat-coeff", std::move(params), str(hat[s].c(n))));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

namespace {

void verify_r_eq_n(const Validated& v, const ClassList& classes, long n_max, Report& report) {
  GramData g = make_gram(v.fp);
  for (std::size_t s = 0; s < classes.support_count(); ++s) {
    const HermForm& f = classes.reps[classes.support_indices[s]];
    for (long d = 1; d <= n_max; ++d) {
      if (!good_index(v, d)) continue;
      report.records.push_back(make_record(
          "r-eq-n", {{"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"class", str(s)}, {"d", str(d)}},
          str(os_n_xi_d(g, f, v.ell, Int(d))), str(os_n_xi_d_direct(g, f, v.ell, Int(d)))));
    }
  }
}

// #{h in O_K/d : N(h) = -ell (mod d)}, counted directly from the residue box.
Int residue_count(const Validated& v, long d) {
  Int count = 0;
  for (const QuadInt& h : qf_residues(v.fp, Int(d)))
    if ((qf_norm(v.fp, h) + v.ell) % d == 0) ++count;
  return count;
}

void verify_phi(const Validated& v, const ClassList& classes, long n_max, Report& report) {
  for (long d = 1; d <= n_max; ++d) {
    if (!good_index(v, d)) continue;
    Rat total(0);
    for (std::size_t s = 0; s < classes.support_count(); ++s) {
      std::size_t idx = classes.support_indices[s];
      const HermForm& f = classes.reps[idx];
      Rat ratio = Rat(hf_primitive_reps(v.fp, f, Int(d))) / Rat(classes.automorph_counts[idx]);
      total += ratio;
      report.records.push_back(make_record(
          "phi-class", {{"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"class", str(s)}, {"d", str(d)}},
          str(ratio), str(Rat(hf_r_class(v.fp, f, Int(d))))));
    }
    report.records.push_back(
        make_record("phi-total", {{"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"d", str(d)}},
                    str(total), str(Rat(residue_count(v, d)))));
  }
}

void verify_zeta_hat(const Validated& v, long n_max, Report& report) {
  ZetaConfig zc;
  zc.fp = v.fp;
  zc.ell = v.ell;
  zc.n_max = n_max;
  zc.excluded = v.excluded;
  for (const HatCheckRecord& rec : zs_verify_hat_identities(zc).records) {
    ReportRecord out;
    out.check = rec.identity == 1 ? "zeta-hat-q" : "zeta-hat-count";
    out.params = {{"m", str(v.fp.m)},
                  {"ell", str(v.ell)},
                  {"class", str(rec.support_pos)},
                  {"d", str(rec.d)}};
    out.lhs = str(rec.lhs);
    out.rhs = str(rec.rhs);
    out.pass = rec.pass;
    report.records.push_back(std::move(out));
  }
}

void verify_latimer(const Validated& v, const ClassTypeData& data, Report& report) {
  const QuatAlg& alg = data.alg;
  for (std::size_t s = 0; s < data.h1(); ++s) {
    const HermForm& f = data.forms.reps[data.forms.support_indices[s]];
    QuatLattice ideal = qa_latimer_ideal(alg, f);
    Params params = {{"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"class", str(s)}};
    report.records.push_back(
        make_record("latimer-invertible", params, "true", str(qa_is_invertible(alg, ideal))));
    Rat n = qa_latimer_norm(alg, ideal);
    report.records.push_back(
        make_record("latimer-norm-sq", params, str(n * n), str(Rat(qa_module_index(alg, ideal)))));
    report.records.push_back(make_record("latimer-conj-norm", std::move(params),
                                         str(qa_norm_content(alg, ideal)),
                                         str(qa_norm_content(alg, qa_conj_lattice(alg, ideal)))));
  }
  for (std::size_t s = 0; s < data.h1(); ++s)
    for (std::size_t t = s + 1; t < data.h1(); ++t)
      report.records.push_back(make_record(
          "latimer-classes-distinct",
          {{"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"i", str(s)}, {"j", str(t)}}, "false",
          str(qa_same_class(data.alg, data.ideal_class_reps[s], data.ideal_class_reps[t]))));
}

void verify_norms(const Validated& v, const ClassTypeData& data, long n_max, Report& report) {
  for (long d = 1; d <= n_max; ++d) {
    if (!good_index(v, d)) continue;
    std::vector<NormIdeal> ideals = qa_ideals_of_norm(data, Int(d));
    for (std::size_t k = 0; k < ideals.size(); ++k) {
      Params params = {
          {"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"d", str(d)}, {"ideal", str(k)}};
      report.records.push_back(make_record("norm-square-index", params, str(Int(Int(d) * Int(d))),
                                           str(qa_module_index(data.alg, ideals[k].lattice))));
      report.records.push_back(
          make_record("norm-conj", std::move(params), str(qa_norm_content(data.alg, ideals[k].lattice)),
                      str(qa_norm_content(data.alg, qa_conj_lattice(data.alg, ideals[k].lattice)))));
    }
  }
}

void verify_sub_main(const Validated& v, const ClassTypeData& data, long n_max, Report& report) {
  SubMainReport rep = hk_verify_sub_main(data, n_max);
  for (const SubMainRecord& rec : rep.records) {
    ReportRecord out;
    out.check = "sub-main";
    out.params = {{"m", str(v.fp.m)},
                  {"ell", str(v.ell)},
                  {"form", str(rec.form_index)},
                  {"d", str(rec.d)}};
    out.lhs = qe_to_string(rec.lhs);
    out.rhs = qe_to_string(rec.rhs);
    out.pass = rec.pass;
    report.records.push_back(std::move(out));
  }
  for (const FiberRecord& rec : rep.fiber_records) {
    ReportRecord out;
    out.check = "sub-main-fiber";
    out.params = {{"m", str(v.fp.m)},
                  {"ell", str(v.ell)},
                  {"type", str(rec.type_index)},
                  {"d", str(rec.d)}};
    out.lhs = str(rec.lhs);
    out.rhs = str(rec.rhs);
    out.pass = rec.pass;
    report.records.push_back(std::move(out));
  }
}

void verify_partial_zeta(const Validated& v, const ClassList& classes, long n_max,
                         Report& report) {
  GramData g = make_gram(v.fp);
  std::vector<DirichletCoeffs> bulk = zs_zeta_xi_all(classes, v.excluded, n_max);
  for (std::size_t s = 0; s < classes.support_count(); ++s) {
    DirichletCoeffs orbit = zs_zeta_xi(g, classes, classes.support_indices[s], v.excluded, n_max);
    for (long n = 1; n <= n_max; ++n) {
      if (!good_index(v, n)) continue;
      report.records.push_back(make_record(
          "partial-zeta",
          {{"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"class", str(s)}, {"n", str(n)}},
          str(orbit.c(n)), str(bulk[s].c(n))));
    }
  }
}

}  // namespace

Report rp_verify(const RunConfig& cfg) {
  Report report;
  Validated v = validate(cfg, /*strict=*/true, report);
  echo_config(report, "verify", cfg, v);

  std::vector<std::string> selected = cfg.checks;
  if (selected.empty() || (selected.size() == 1 && selected[0] == "all")) {
    selected = rp_all_checks;
    if (cfg.m == 2 || !os_known_maximal_conditions(v.fp, v.ell)) {
      selected.erase(std::find(selected.begin(), selected.end(), "sub-main"));
      report.warnings.push_back(
          "sub-main identity is not certified for this configuration; skipped "
          "(request it explicitly to force the attempt)");
    }
  }
  std::string joined;
  for (const std::string& c : selected) joined += (joined.empty() ? "" : ",") + c;
  report.config.emplace_back("checks", joined);

  for (const std::string& check : selected)
    HZ_REQUIRE(std::find(rp_all_checks.begin(), rp_all_checks.end(), check) != rp_all_checks.end(),
               InvalidParameter, "unknown check name: " + check);

  ClassTypeData data = class_type_data(v);
  for (const std::string& check : selected) {
    if (check == "r-eq-n") verify_r_eq_n(v, data.forms, cfg.n_max, report);
    if (check == "phi-bijective") verify_phi(v, data.forms, cfg.n_max, report);
    if (check == "zeta-hat") verify_zeta_hat(v, cfg.n_max, report);
    if (check == "latimer") verify_latimer(v, data, report);
    if (check == "norms") verify_norms(v, data, cfg.n_max, report);
    if (check == "sub-main") verify_sub_main(v, data, cfg.n_max, report);
    if (check == "partial-zeta") verify_partial_zeta(v, data.forms, cfg.n_max, report);
  }
  return report;
}

// ---------------------------------------------------------------------------
// brandt
// ---------------------------------------------------------------------------

Report rp_brandt(const RunConfig& cfg) {
  Report report;
  Validated v = validate(cfg, /*strict=*/true, report);
  echo_config(report, "brandt", cfg, v);

  ClassTypeData data = class_type_data(v);
  std::vector<Int> primes;
  for (long p = 2; p <= cfg.n_max; ++p) {
    Int ip(p);
    if (mpz_probab_prime_p(ip.get_mpz_t(), 30) != 0 && good_index(v, p)) primes.push_back(ip);
  }
  for (const Int& p : primes) {
    BrandtMatrix b = hk_brandt(data, p);
    for (std::size_t i = 0; i < data.h1(); ++i)
      for (std::size_t j = 0; j < data.h1(); ++j)
        report.records.push_back(make_value(
            "brandt-entry",
            {{"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"p", str(p)}, {"i", str(i)}, {"j", str(j)}},
            str(b.entries[i][j])));
  }

  std::vector<Int> eigen_primes;
  for (const Int& p : primes)
    if (p <= 20) eigen_primes.push_back(p);
  try {
    EigenSystem es = hk_eigensystem(data, eigen_primes);
    for (std::size_t j = 0; j < es.forms.size(); ++j) {
      for (std::size_t w = 0; w < es.forms[j].values.size(); ++w)
        report.records.push_back(make_value(
            "eigenform-value",
            {{"m", str(v.fp.m)}, {"ell", str(v.ell)}, {"form", str(j)}, {"type", str(w)}},
            qe_to_string(es.forms[j].values[w])));
      for (std::size_t k = 0; k < eigen_primes.size(); ++k)
        report.records.push_back(make_value("eigenvalue",
                                            {{"m", str(v.fp.m)},
                                             {"ell", str(v.ell)},
                                             {"form", str(j)},
                                             {"p", str(eigen_primes[k])}},
                                            qe_to_string(es.forms[j].prime_eigenvalues[k])));
    }
  } catch (const Error& e) {
    report.warnings.push_back(std::string("eigensystem unavailable: ") + e.what());
  }
  return report;
}

// ---------------------------------------------------------------------------
// scan-maximality
// ---------------------------------------------------------------------------

Report rp_scan_maximality(const std::vector<long>& m_list, long ell_max, bool experimental) {
  Report report;
  std::vector<long> ms = m_list;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  report.config.emplace_back("subcommand", "scan-maximality");
  std::string joined;
  for (long m : ms) joined += (joined.empty() ? "" : ",") + str(m);
  report.config.emplace_back("m_list", joined);
  report.config.emplace_back("ell_max", str(ell_max));
  report.config.emplace_back("experimental", str(experimental));

  for (long m : ms) {
    FieldParams fp = make_field(m, experimental);
    GramData g = make_gram(fp);
    for (long ell = 1; ell <= ell_max; ++ell) {
      bool conditions = os_known_maximal_conditions(fp, Int(ell));
      MaximalityVerdict verdict = os_check_maximal(g, Int(ell));
      ReportRecord rec;
      rec.check = "maximality";
      rec.params = {{"m", str(m)},
                    {"ell", str(ell)},
                    {"conditions", str(conditions)},
                    {"shortcut", str(verdict.shortcut_applicable)},
                    {"shortcut_squarefree", str(verdict.shortcut_squarefree)}};
      rec.lhs = conditions ? "maximal" : "unconstrained";
      rec.rhs = verdict.is_maximal ? "maximal" : "nonmaximal";
      rec.pass = !conditions || verdict.is_maximal;
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

}  // namespace hermzeta
