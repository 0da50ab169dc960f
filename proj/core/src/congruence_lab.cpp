#include "bipart/congruence_lab.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "bipart/etaquotients.hpp"
#include "bipart/partitions.hpp"

namespace bipart {

namespace {

Integer big(std::int64_t v) {
  return Integer(static_cast<long>(v));
}

Integer power(std::int64_t base, std::int64_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), big(base).get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Integer residue(const Integer& x, std::int64_t m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

std::string affine(std::int64_t ell, const Integer& a, const Integer& b) {
  std::string s = "B_" + std::to_string(ell) + "(";
  if (a != 0) s += (a == 1 ? std::string() : a.get_str()) + "n";
  if (b != 0 || a == 0) s += (a != 0 && b > 0 ? "+" : "") + b.get_str();
  return s + ")";
}

// lhs(n) = a n + b must match factor * B(c n + d) (or 0 when there is no right side).
struct Progression {
  Integer a, b;
  bool has_rhs = false;
  Integer c, d, factor;
  std::function<bool(std::int64_t)> skip;  // side condition on n
};

FamilyReport inapplicable(FamilyReport rep, std::string reason) {
  rep.verdict = Verdict::inapplicable;
  rep.reason = std::move(reason);
  return rep;
}

FamilyReport run_progression(FamilyReport rep, std::int64_t ell, const Progression& pr, CoefficientCache& cache) {
  Integer top = pr.a * big(rep.n_max) + pr.b;
  if (pr.has_rhs) top = std::max(top, Integer(pr.c * big(rep.n_max) + pr.d));
  if (top < 0) {
    rep.verdict = Verdict::pass;
    return rep;
  }
  if (!top.fits_slong_p()) throw std::length_error("family indices overflow");
  const auto& s = cache.bipartitions(ell, static_cast<std::uint64_t>(rep.modulus), static_cast<std::size_t>(top.get_si()) + 1);
  rep.statement = affine(ell, pr.a, pr.b) + " = " +
                  (pr.has_rhs ? pr.factor.get_str() + "*" + affine(ell, pr.c, pr.d) : std::string("0")) +
                  " (mod " + std::to_string(rep.modulus) + ")";
  for (std::int64_t n = rep.n_min; n <= rep.n_max; ++n) {
    if (pr.skip && pr.skip(n)) continue;
    const Integer li = pr.a * big(n) + pr.b;
    if (li < 0) continue;
    Integer expected = 0;
    if (pr.has_rhs) {
      const Integer ri = pr.c * big(n) + pr.d;
      if (ri < 0) continue;
      expected = residue(pr.factor * s.coeff(ri.get_ui()), rep.modulus);
    }
    ++rep.checked;
    const Integer got = s.coeff(li.get_ui());
    if (got != expected) {
      rep.verdict = Verdict::fail;
      rep.counterexample = Counterexample{n, li.get_si(), got, expected};
      return rep;
    }
  }
  rep.verdict = Verdict::pass;
  return rep;
}

bool is_prime_mod(std::int64_t p, std::int64_t m, std::int64_t r) {
  return is_prime(p) && mod(p, m) == r;
}

}  // namespace

TruncatedSeries hecke_apply(const TruncatedSeries& a, std::int64_t q, int k, int chi_q) {
  if (q < 2 || !is_prime(q)) throw std::invalid_argument("hecke_apply: q must be prime");
  if (k < 1) throw std::invalid_argument("hecke_apply: weight must be positive");
  if (chi_q < -1 || chi_q > 1) throw std::invalid_argument("hecke_apply: chi(q) must be -1, 0 or 1");
  const std::size_t t = a.order();
  const auto uq = static_cast<std::size_t>(q);
  const std::size_t out_order = (t + uq - 1) / uq;
  const Integer second = big(chi_q) * power(q, k - 1);
  std::vector<Integer> out(out_order);
  for (std::size_t n = 0; n < out_order; ++n) {
    out[n] = a.coeff(n * uq);
    if (n % uq == 0) out[n] += second * a.coeff(n / uq);
  }
  return TruncatedSeries::from_integers(a.ring().with_order(out_order), std::move(out));
}

HeckeReport check_eigenform(const TruncatedSeries& a, std::int64_t q, int k, int chi_q, std::string series_id) {
  HeckeReport rep;
  rep.series_id = std::move(series_id);
  rep.q = q;
  rep.k = k;
  rep.chi_q = chi_q;
  rep.order = a.order();
  if (static_cast<std::size_t>(q) >= a.order()) throw std::invalid_argument("check_eigenform: need T > q");
  if (a.coeff(1) != 1) throw std::invalid_argument("check_eigenform: series is not normalised (a(1) != 1)");
  const TruncatedSeries image = hecke_apply(a, q, k, chi_q);
  rep.eigenvalue = a.coeff(static_cast<std::size_t>(q));
  for (std::size_t n = 1; n < image.order(); ++n) {
    Integer rhs = rep.eigenvalue * a.coeff(n);
    if (!a.ring().is_exact()) rhs = residue(rhs, static_cast<std::int64_t>(a.modulus()));
    if (image.coeff(n) != rhs) {
      rep.violation = static_cast<std::int64_t>(n);
      break;
    }
  }
  return rep;
}

TruncatedSeries eta_power_stream(std::int64_t delta, std::int64_t power, std::size_t order) {
  return expand(EtaQuotient({{delta, power}}, delta), SeriesRing::exact(order));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "unknown";
}

const TruncatedSeries& CoefficientCache::bipartitions(std::int64_t ell, std::uint64_t modulus, std::size_t order) {
  if (order > cap_) {
    throw std::length_error("needs " + std::to_string(order) + " coefficients, cap is " + std::to_string(cap_));
  }
  const auto key = std::make_pair(ell, modulus);
  auto it = store_.find(key);
  if (it != store_.end() && it->second.order() >= order) return it->second;
  std::size_t grow = order;
  if (it != store_.end()) grow = std::min(cap_, std::max(order, 2 * it->second.order()));
  const SeriesRing ring = modulus == 0 ? SeriesRing::exact(grow) : SeriesRing::modular(grow, modulus);
  auto s = bipartition_coeffs(ell, ring).series;
  return store_.insert_or_assign(key, std::move(s)).first->second;
}

const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids{"thm8", "coro3", "Newmann1", "thm9",  "coro4",
                                            "thm10", "coro5", "Newmann2", "thm11", "coro6"};
  return ids;
}

FamilyReport verify_family(std::string_view id, const FamilyParams& params, std::int64_t n_max) {
  CoefficientCache cache;
  return verify_family(id, params, n_max, cache);
}

FamilyReport verify_family(std::string_view id, const FamilyParams& params, std::int64_t n_max, CoefficientCache& cache) {
  const auto& ids = family_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw std::invalid_argument("unknown family id '" + std::string(id) + "'");
  }
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  FamilyReport rep;
  rep.id = std::string(id);
  rep.params = params;
  rep.n_max = n_max;
  const bool three = id == "thm8" || id == "coro3" || id == "Newmann1" || id == "thm9" || id == "coro4";
  const std::int64_t ell = three ? 3 : 5;
  rep.modulus = ell;
  // Residue class the primes must lie in: 5 mod 6 for B_3, 2 mod 3 for B_5.
  const std::int64_t cls_mod = three ? 6 : 3;
  const std::int64_t cls = three ? 5 : 2;
  const std::int64_t shift_den = three ? 6 : 3;

  if (params.primes.empty()) return inapplicable(rep, "no prime given");
  for (std::int64_t q : params.primes) {
    if (q < 2 || !is_prime(q)) return inapplicable(rep, std::to_string(q) + " is not prime");
  }
  const std::int64_t p = params.primes.back();
  const std::int64_t k = params.k;
  Progression pr;

  if (id == "thm8" || id == "thm10") {
    rep.params.k = static_cast<std::int64_t>(params.primes.size()) - 1;
    for (std::int64_t q : params.primes) {
      if (!is_prime_mod(q, cls_mod, cls)) {
        return inapplicable(rep, "prime " + std::to_string(q) + " is not " + std::to_string(cls) + " mod " + std::to_string(cls_mod));
      }
    }
    if (mod(params.j, p) == 0) return inapplicable(rep, "j must not be divisible by the last prime");
    Integer q2 = 1;
    for (std::size_t i = 0; i + 1 < params.primes.size(); ++i) q2 *= big(params.primes[i]) * big(params.primes[i]);
    pr.a = q2 * big(p) * big(p);
    pr.b = q2 * big(p) * big(params.j) + (pr.a - 1) / big(shift_den);
  } else {
    if (params.primes.size() != 1) return inapplicable(rep, "exactly one prime expected");
    if (k < 0) return inapplicable(rep, "k must be non-negative");
    if (id == "Newmann1" || id == "Newmann2") {
      if (!is_prime_mod(p, 6, 1)) return inapplicable(rep, "p must be 1 mod 6");
      const std::int64_t seed = (p - 1) / shift_den;
      const auto& s = cache.bipartitions(ell, static_cast<std::uint64_t>(ell), static_cast<std::size_t>(seed) + 1);
      if (s.coeff(static_cast<std::size_t>(seed)) != 0) {
        return inapplicable(rep, "hypothesis fails: " + affine(ell, 0, big(seed)) + " is not 0 mod " + std::to_string(ell));
      }
      const Integer pk = power(p, 2 * k + 1);
      pr.a = pk;
      pr.b = (pk - 1) / big(shift_den);
      pr.skip = [p, shift_den](std::int64_t n) { return mod(shift_den * n + 1, p) == 0; };
    } else {
      if (!is_prime_mod(p, cls_mod, cls)) {
        return inapplicable(rep, "p must be " + std::to_string(cls) + " mod " + std::to_string(cls_mod));
      }
      const Integer unit_factor = three ? big(-p) : -power(p, 3);
      if (id == "coro3" || id == "coro5") {
        if (mod(params.j, p) == 0) return inapplicable(rep, "j must not be divisible by p");
        pr.a = power(p, 2 * k + 2);
        pr.b = power(p, 2 * k + 1) * big(params.j) + (pr.a - 1) / big(shift_den);
      } else if (id == "thm9" || id == "thm11") {
        if (k < 1) return inapplicable(rep, "k must be positive");
        if (params.r < 0) return inapplicable(rep, "r must be non-negative");
        const std::int64_t lead = three ? 6 * params.r + 5 : 3 * params.r + 2;
        if (lead % p != 0) return inapplicable(rep, "p must divide " + std::string(three ? "6r+5" : "3r+2"));
        pr.a = power(p, k + 1);
        pr.b = big(p) * big(params.r) + (big(three ? 5 : 2) * big(p) - 1) / big(shift_den);
        pr.has_rhs = true;
        pr.c = power(p, k - 1);
        pr.d = (big(lead) - big(p)) / (big(shift_den) * big(p));
        pr.factor = unit_factor;
      } else {  // coro4, coro6
        if (k < 1) return inapplicable(rep, "k must be positive");
        pr.a = power(p, 2 * k);
        pr.b = (pr.a - 1) / big(shift_den);
        pr.has_rhs = true;
        pr.c = 1;
        pr.d = 0;
        mpz_pow_ui(pr.factor.get_mpz_t(), unit_factor.get_mpz_t(), static_cast<unsigned long>(k));
      }
    }
  }
  return run_progression(std::move(rep), ell, pr, cache);
}

std::string to_string(NewmanKind k) {
  return k == NewmanKind::f1f3 ? "f1f3" : "f1cubed_f5";
}

NewmanKind parse_newman_kind(std::string_view s) {
  if (s == "f1f3") return NewmanKind::f1f3;
  if (s == "f1cubed_f5") return NewmanKind::f1cubed_f5;
  throw std::invalid_argument("unknown Newman kind '" + std::string(s) + "' (expected f1f3 or f1cubed_f5)");
}

FamilyReport newman_check(NewmanKind kind, std::int64_t p, std::size_t order) {
  FamilyReport rep;
  rep.id = "newman_" + to_string(kind);
  rep.params.primes = {p};
  rep.modulus = 0;
  if (!is_prime_mod(p, 6, 1)) return inapplicable(rep, "p must be a prime = 1 mod 6");
  const bool cubed = kind == NewmanKind::f1cubed_f5;
  const std::int64_t shift_by = cubed ? (p - 1) / 3 : (p - 1) / 6;
  if (static_cast<std::size_t>(shift_by) >= order) return inapplicable(rep, "T too small for this p");
  const SeriesRing ring = SeriesRing::exact(order);
  const TruncatedSeries c = cubed ? mul(euler_product(1, 3, ring), euler_product(5, 1, ring))
                                  : mul(euler_product(1, 1, ring), euler_product(3, 1, ring));
  // eps multiplies the c(n/p - shift/p) term.
  Integer eps = cubed ? big(jacobi(5, p)) * big(p) : big(((p - 1) / 2) % 2 == 0 ? 1 : -1) * big(jacobi(3, p));
  const Integer seed = c.coeff(static_cast<std::size_t>(shift_by));
  rep.n_max = (static_cast<std::int64_t>(order) - 1 - shift_by) / p;
  rep.statement = std::string(cubed ? "t" : "c") + "(" + std::to_string(p) + "n+" + std::to_string(shift_by) + ") = " +
                  seed.get_str() + "*" + (cubed ? "t" : "c") + "(n) - " + eps.get_str() + "*" + (cubed ? "t" : "c") +
                  "((n-" + std::to_string(shift_by) + ")/" + std::to_string(p) + ")";
  for (std::int64_t n = 0; n <= rep.n_max; ++n) {
    const auto li = static_cast<std::size_t>(p * n + shift_by);
    Integer expected = seed * c.coeff(static_cast<std::size_t>(n));
    if (n >= shift_by && (n - shift_by) % p == 0) expected -= eps * c.coeff(static_cast<std::size_t>((n - shift_by) / p));
    ++rep.checked;
    const Integer got = c.coeff(li);
    if (got != expected) {
      rep.verdict = Verdict::fail;
      rep.counterexample = Counterexample{n, static_cast<std::int64_t>(li), got, expected};
      return rep;
    }
  }
  rep.verdict = Verdict::pass;
  return rep;
}

std::vector<std::int64_t> discover_newman_primes(NewmanKind kind, std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound <= 7) return out;
  const bool cubed = kind == NewmanKind::f1cubed_f5;
  const std::int64_t ell = cubed ? 5 : 3;
  const std::int64_t den = cubed ? 3 : 6;
  const auto s = bipartition_coeffs(ell, SeriesRing::modular(static_cast<std::size_t>(bound / den) + 1,
                                                              static_cast<std::uint64_t>(ell))).series;
  for (std::int64_t p = 7; p < bound; p += 6) {
    if (is_prime(p) && s.is_zero_at(static_cast<std::size_t>((p - 1) / den))) out.push_back(p);
  }
  return out;
}

namespace {

IdentityReport compare(std::string id, const TruncatedSeries& x, const TruncatedSeries& y) {
  IdentityReport rep;
  rep.id = std::move(id);
  rep.modulus = x.modulus();
  rep.order = x.order();
  for (std::size_t n = 0; n < x.order(); ++n) {
    if (x.coeff(n) != y.coeff(n)) {
      rep.mismatch = n;
      break;
    }
  }
  return rep;
}

}  // namespace

std::vector<IdentityReport> dictionary_identities(std::size_t order) {
  const SeriesRing r3 = SeriesRing::modular(order, 3);
  const SeriesRing r5 = SeriesRing::modular(order, 5);
  const auto b3 = bipartition_coeffs(3, r3).series;
  const auto b5 = bipartition_coeffs(5, r5).series;
  return {
      compare("B3=f1^4 mod 3", b3, euler_product(1, 4, r3)),
      compare("B5=f1^8 mod 5", b5, euler_product(1, 8, r5)),
      compare("B3=f1*f3 mod 3", b3, mul(euler_product(1, 1, r3), euler_product(3, 1, r3))),
      compare("B5=f1^3*f5 mod 5", b5, mul(euler_product(1, 3, r5), euler_product(5, 1, r5))),
  };
}

IdentityReport frobenius_identity(std::int64_t p, std::int64_t j, std::size_t order) {
  if (!is_prime(p) || j < 1) throw std::invalid_argument("frobenius_identity: need a prime p and j >= 1");
  const auto pj = ipow(p, static_cast<unsigned>(j));
  const SeriesRing ring = SeriesRing::modular(order, static_cast<std::uint64_t>(pj));
  return compare("f1^" + std::to_string(pj) + "=f" + std::to_string(p) + "^" + std::to_string(pj / p) + " mod " +
                     std::to_string(pj),
                 euler_product(1, pj, ring), euler_product(static_cast<std::size_t>(p), pj / p, ring));
}

DensityScan density_scan(std::int64_t ell, std::int64_t p, std::int64_t j, const std::vector<std::int64_t>& xs,
                         std::int64_t stride, std::size_t max_coefficients) {
  if (ell < 2) throw std::invalid_argument("density_scan: l must be >= 2");
  if (!is_prime(p)) throw std::invalid_argument("density_scan: p must be prime");
  if (j < 1) throw std::invalid_argument("density_scan: j must be >= 1");
  if (stride < 0) throw std::invalid_argument("density_scan: stride must be non-negative");
  DensityScan out;
  out.ell = ell;
  out.p = p;
  out.j = j;
  const int a = ell % p == 0 ? p_adic_valuation(ell, p) : 0;
  out.growth_condition = a > 0 && Integer(power(p, 2 * a)) >= big(ell);

  std::set<std::int64_t> points;
  for (std::int64_t x : xs) {
    if (x < 0) throw std::invalid_argument("density_scan: X must be non-negative");
    if (x > 0) points.insert(x);
  }
  if (points.empty()) return out;
  const std::int64_t top = *points.rbegin();
  if (stride > 0) {
    for (std::int64_t x = stride; x <= top; x += stride) points.insert(x);
  }
  if (static_cast<std::size_t>(top) + 1 > max_coefficients) {
    throw std::length_error("density scan needs " + std::to_string(top + 1) + " coefficients, cap is " +
                            std::to_string(max_coefficients));
  }
  const auto modulus = static_cast<std::uint64_t>(ipow(p, static_cast<unsigned>(j)));
  const auto s = bipartition_coeffs(ell, SeriesRing::modular(static_cast<std::size_t>(top) + 1, modulus)).series;
  std::int64_t count = 0;
  std::int64_t n = 0;
  for (std::int64_t x : points) {
    while (n < x) {
      ++n;
      if (s.is_zero_at(static_cast<std::size_t>(n))) ++count;
    }
    Rational f(big(count), big(x));
    f.canonicalize();
    out.points.push_back({x, count, f});
  }
  return out;
}

}  // namespace bipart
