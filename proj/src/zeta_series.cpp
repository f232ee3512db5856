#include "hermzeta/zeta_series.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <utility>

#include "hermzeta/errors.hpp"

namespace hermzeta {

namespace {

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::array<Int, 4> form_key(const HermForm& f) { return {f.a, f.b.x, f.b.y, f.d}; }

std::string class_tag(const ClassList& classes, std::size_t class_index) {
  const HermForm& f = classes.reps[class_index];
  return "m=" + std::to_string(classes.fp.m) + " ell=" + classes.ell.get_str() + " [" +
         f.a.get_str() + "," + f.b.x.get_str() + "+" + f.b.y.get_str() + "w," + f.d.get_str() +
         "]";
}

}  // namespace

const Rat& DirichletCoeffs::c(long n) const {
  HZ_REQUIRE(n >= 1 && n <= n_max, InvalidParameter, "coefficient index out of range");
  return coeffs[static_cast<std::size_t>(n - 1)];
}

Rat& DirichletCoeffs::c(long n) {
  HZ_REQUIRE(n >= 1 && n <= n_max, InvalidParameter, "coefficient index out of range");
  return coeffs[static_cast<std::size_t>(n - 1)];
}

DirichletCoeffs zs_zero(long n_max, std::string label) {
  HZ_REQUIRE(n_max >= 1, InvalidParameter, "a series needs at least the leading coefficient");
  DirichletCoeffs out;
  out.n_max = n_max;
  out.coeffs.assign(static_cast<std::size_t>(n_max), Rat(0));
  out.label = std::move(label);
  return out;
}

DirichletCoeffs zs_delta(long n_max) {
  DirichletCoeffs out = zs_zero(n_max, "delta");
  out.c(1) = 1;
  return out;
}

DirichletCoeffs zs_ones(long n_max) {
  DirichletCoeffs out = zs_zero(n_max, "zeta");
  for (long n = 1; n <= n_max; ++n) out.c(n) = 1;
  return out;
}

DirichletCoeffs zs_dedekind(const FieldParams& fp, long n_max) {
  DirichletCoeffs out = zs_zero(n_max, "zeta_K m=" + std::to_string(fp.m));
  for (long n = 1; n <= n_max; ++n) out.c(n) = Rat(qf_dedekind_coeff(fp, n));
  return out;
}

PrimeSet make_prime_set(std::vector<Int> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (const Int& p : primes)
    HZ_REQUIRE(is_prime(p), InvalidParameter, "excluded set may only contain primes");
  return PrimeSet{std::move(primes)};
}

PrimeSet zs_bad_primes(const FieldParams& fp, const Int& ell) {
  std::vector<Int> ps;
  Int n = 2 * ell * fp.m;
  for (Int p(2); p * p <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return make_prime_set(std::move(ps));
}

bool ps_coprime(const PrimeSet& p, const Int& n) {
  for (const Int& q : p.primes)
    if (n % q == 0) return false;
  return true;
}

DirichletCoeffs zs_convolve(const DirichletCoeffs& a, const DirichletCoeffs& b) {
  HZ_REQUIRE(a.n_max == b.n_max, LengthMismatch, "convolution needs equal truncation lengths");
  DirichletCoeffs out = zs_zero(a.n_max, a.label + " * " + b.label);
  for (long d = 1; d <= a.n_max; ++d) {
    if (a.c(d) == 0) continue;
    for (long e = 1; d * e <= a.n_max; ++e) out.c(d * e) += a.c(d) * b.c(e);
  }
  return out;
}

DirichletCoeffs zs_restrict(const DirichletCoeffs& a, const PrimeSet& p) {
  DirichletCoeffs out = a;
  for (long n = 1; n <= a.n_max; ++n)
    if (!ps_coprime(p, Int(n))) out.c(n) = 0;
  return out;
}

DirichletCoeffs zs_zeta_xi(const GramData& g, const ClassList& classes, std::size_t class_index,
                           const PrimeSet& p, long n_max) {
  HZ_REQUIRE(class_index < classes.reps.size(), InvalidParameter, "class index out of range");
  DirichletCoeffs out = zs_zero(n_max, "zeta_xi " + class_tag(classes, class_index));
  for (long n = 1; n <= n_max; ++n) {
    if (!ps_coprime(p, Int(n))) continue;
    out.c(n) = Rat(os_n_xi_d(g, classes.reps[class_index], classes.ell, Int(n)));
  }
  return out;
}

std::vector<DirichletCoeffs> zs_zeta_xi_all(const ClassList& classes, const PrimeSet& p,
                                            long n_max) {
  const FieldParams& fp = classes.fp;
  std::vector<DirichletCoeffs> out;
  out.reserve(classes.support_count());
  for (std::size_t k = 0; k < classes.support_count(); ++k)
    out.push_back(zs_zero(n_max, "zeta_xi " + class_tag(classes, classes.support_indices[k])));
  // canonical representative -> position in the full class list
  std::map<std::array<Int, 4>, std::size_t> lookup;
  for (std::size_t k = 0; k < classes.reps.size(); ++k) lookup[form_key(classes.reps[k])] = k;
  // support position of each full-list index, or npos
  std::vector<std::size_t> support_pos(classes.reps.size(), classes.reps.size());
  for (std::size_t k = 0; k < classes.support_count(); ++k)
    support_pos[classes.support_indices[k]] = k;
  for (long n = 1; n <= n_max; ++n) {
    Int d(n);
    if (!ps_coprime(p, d)) continue;
    for (const QuadInt& h : qf_residues(fp, d)) {
      Int num = qf_norm(fp, h) + classes.ell;
      if (num % d != 0) continue;
      HermForm cf = hf_canonicalize(fp, HermForm{num / d, h, d});
      auto it = lookup.find(form_key(cf));
      HZ_REQUIRE(it != lookup.end(), Error, "residue form missing from the class enumeration");
      std::size_t pos = support_pos[it->second];
      if (pos < classes.support_count()) out[pos].c(n) += 1;
    }
  }
  return out;
}

DirichletCoeffs zs_zeta_hat(const GramData& g, const ClassList& classes, std::size_t class_index,
                            const PrimeSet& p, long n_max) {
  DirichletCoeffs hat = zs_restrict(
      zs_convolve(zs_dedekind(classes.fp, n_max), zs_zeta_xi(g, classes, class_index, p, n_max)),
      p);
  hat.label = "zeta_hat " + class_tag(classes, class_index);
  return hat;
}

std::vector<DirichletCoeffs> zs_zeta_hat_all(const ClassList& classes, const PrimeSet& p,
                                             long n_max) {
  DirichletCoeffs zk = zs_dedekind(classes.fp, n_max);
  std::vector<DirichletCoeffs> out = zs_zeta_xi_all(classes, p, n_max);
  for (std::size_t k = 0; k < out.size(); ++k) {
    DirichletCoeffs hat = zs_restrict(zs_convolve(zk, out[k]), p);
    hat.label = "zeta_hat " + class_tag(classes, classes.support_indices[k]);
    out[k] = std::move(hat);
  }
  return out;
}

bool HatCheckReport::all_pass() const {
  for (const HatCheckRecord& r : records)
    if (!r.pass) return false;
  return true;
}

HatCheckReport zs_verify_hat_identities(const ZetaConfig& cfg) {
  HZ_REQUIRE(cfg.n_max >= 1, InvalidParameter, "verification range must be positive");
  for (const Int& q : zs_bad_primes(cfg.fp, cfg.ell).primes)
    HZ_REQUIRE(std::binary_search(cfg.excluded.primes.begin(), cfg.excluded.primes.end(), q),
               InvalidParameter, "excluded primes must cover the divisors of 2*ell*m");
  ClassTypeData data = qa_class_type_data(cfg.fp, cfg.ell, cfg.excluded.primes);
  std::vector<DirichletCoeffs> hats = zs_zeta_hat_all(data.forms, cfg.excluded, cfg.n_max);
  HatCheckReport report;
  for (long d = 1; d <= cfg.n_max; ++d) {
    if (!ps_coprime(cfg.excluded, Int(d))) continue;
    std::vector<Int> per_class(data.h1(), Int(0));
    for (const NormIdeal& ni : qa_ideals_of_norm(data, Int(d))) per_class[ni.class_index] += 1;
    for (std::size_t i = 0; i < data.h1(); ++i) {
      std::size_t si = data.forms.support_indices[i];
      Rat weighted = Rat(data.forms.automorph_counts[si]) * hats[i].c(d);
      Rat reps = Rat(hf_all_reps(cfg.fp, data.forms.reps[si], Int(d)));
      report.records.push_back({i, Int(d), 1, weighted, reps, weighted == reps});
      Rat count = Rat(per_class[i]);
      report.records.push_back({i, Int(d), 2, hats[i].c(d), count, hats[i].c(d) == count});
    }
  }
  return report;
}

}  // namespace hermzeta
