#include "bipart/radu.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bipart/partitions.hpp"

namespace bipart {

namespace {

Integer big(std::int64_t v) {
  return Integer(static_cast<long>(v));
}

Integer igcd(const Integer& x, const Integer& y) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g;
}

bool divides(const Integer& d, const Integer& n) {
  return sgn(d) != 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

void validate_m(const Factorization& m) {
  if (m.empty()) throw std::invalid_argument("m must have at least one prime factor >= 5");
  std::int64_t prev = 0;
  for (const auto& [q, e] : m) {
    if (q < 5 || !is_prime(q)) throw std::invalid_argument("prime factors of m must be primes >= 5, got " + std::to_string(q));
    if (e < 1) throw std::invalid_argument("prime exponents of m must be >= 1");
    if (q <= prev) throw std::invalid_argument("prime factors of m must be distinct and increasing");
    prev = q;
  }
}

void validate_input(const RSInput& in) {
  if (in.p < 3 || !is_prime(in.p)) throw std::invalid_argument("p must be a prime >= 3");
  validate_m(in.m);
  const std::int64_t m = from_factorization(in.m);
  if (in.t < 0 || in.t >= m) throw std::invalid_argument("t must satisfy 0 <= t < m");
  if (in.u < 1) throw std::invalid_argument("u must be >= 1");
}

DeltaExponents bipartition_exponents(std::int64_t p) {
  return {{1, -2}, {p, 2}};
}

DeltaExponents cusp_weights(std::int64_t m, std::int64_t p) {
  return {{p, 2 * m * (p - 1)}};
}

// First (n, t') in n-major order with a nonzero coefficient, n in [n_lo, n_hi].
std::optional<Witness> scan(const TruncatedSeries& s, std::int64_t m, const std::vector<std::int64_t>& residues,
                            std::int64_t n_lo, std::int64_t n_hi) {
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    for (std::int64_t r : residues) {
      const auto idx = static_cast<std::size_t>(m * n + r);
      if (!s.is_zero_at(idx)) return Witness{r, n, s.coeff(idx)};
    }
  }
  return std::nullopt;
}

std::int64_t extended_limit(const RSContext& ctx, const VerifyOptions& opts) {
  if (opts.safety_factor <= 1) return ctx.nu_floor;
  return opts.safety_factor * std::max<std::int64_t>(ctx.nu_floor, 1);
}

}  // namespace

std::int64_t kappa(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("kappa: m must be positive");
  const std::int64_t r = m % 24;
  return gcd((r * r + 23) % 24, 24);
}

std::int64_t a_t(std::int64_t m, std::int64_t p, std::int64_t t) {
  if (t < 0 || t >= m) throw std::invalid_argument("a_t: t must satisfy 0 <= t < m");
  const Integer twelve_m = big(12) * big(m);
  const Integer g = igcd(-big(kappa(m)) * (big(12) * big(t) + big(p) - 1), twelve_m);
  return Integer(twelve_m / g).get_si();
}

int epsilon_p(std::int64_t m, std::int64_t p) {
  return m % p == 0 ? 0 : 1;
}

Rational p_hat(std::int64_t p) {
  Rational q(big(p) * big(p) - 1, 24);
  q.canonicalize();
  return q;
}

PSet p_set(std::int64_t m, std::int64_t p, std::int64_t t, SSet s_set) {
  if (m < 1) throw std::invalid_argument("p_set: m must be positive");
  if (t < 0 || t >= m) throw std::invalid_argument("p_set: t must satisfy 0 <= t < m");
  const std::int64_t modulus = 24 * m;
  std::vector<char> admissible(static_cast<std::size_t>(modulus), 0);
  for (std::int64_t x = 1; x < modulus; ++x) {
    if (gcd(x, modulus) != 1) continue;
    const std::int64_t s = s_set == SSet::squares ? static_cast<std::int64_t>((static_cast<__int128>(x) * x) % modulus) : x;
    admissible[static_cast<std::size_t>(s)] = 1;
  }
  PSet out;
  std::set<std::int64_t> seen;
  for (std::int64_t s = 1; s < modulus; ++s) {
    if (!admissible[static_cast<std::size_t>(s)]) continue;
    const std::int64_t numer = (s - 1) * (p - 1);
    if (numer % 12 != 0) {
      if (s_set == SSet::squares) {
        throw std::logic_error("p_set: non-integral shift for square s = " + std::to_string(s));
      }
      ++out.skipped_nonintegral;
      continue;
    }
    const std::int64_t shift = mod(numer / 12, m);
    seen.insert(mod(static_cast<std::int64_t>((static_cast<__int128>(t) * s) % m) + shift, m));
  }
  out.residues.assign(seen.begin(), seen.end());
  return out;
}

DeltaStarCheck delta_star_check(std::int64_t m, std::int64_t big_m, std::int64_t n, const DeltaExponents& r,
                                std::int64_t t) {
  DeltaStarCheck out;
  const std::int64_t k = kappa(m);
  const Integer mn = big(m) * big(n);

  out.a = true;
  for (const auto& [q, e] : factorize(m)) {
    if (n % q != 0) out.a = false;
  }

  out.b = true;
  Integer sum_r = 0;
  Integer sum_delta_r = 0;
  Integer sum_co = 0;
  int twos = 0;
  std::int64_t odd_part_mod8 = 1;
  for (const auto& [delta, rd] : r) {
    if (big_m % delta != 0) throw std::invalid_argument("delta_star_check: r must be indexed by divisors of M");
    if (rd == 0) continue;
    sum_r += big(rd);
    sum_delta_r += big(delta) * big(rd);
    if (!divides(big(delta), mn)) {
      out.b = false;
    } else {
      sum_co += big(rd) * (mn / big(delta));
    }
    const std::int64_t abs_r = rd < 0 ? -rd : rd;
    std::int64_t odd = delta;
    int v2 = 0;
    while (odd % 2 == 0) {
      odd /= 2;
      ++v2;
    }
    twos += v2 * static_cast<int>(abs_r);
    // odd^2 = 1 (mod 8)
    if (abs_r % 2 == 1) odd_part_mod8 = (odd_part_mod8 * (odd % 8)) % 8;
  }

  out.c = out.b && divides(big(24), big(k) * big(n) * sum_co);
  out.d = divides(big(8), big(k) * big(n) * sum_r);
  const Integer g = igcd(-big(24) * big(k) * big(t) - big(k) * sum_delta_r, big(24) * big(m));
  out.e = divides(Integer(big(24) * big(m) / g), big(n));
  if (m % 2 != 0) {
    out.f = true;
  } else {
    const bool first = (k * n) % 4 == 0 && (static_cast<std::int64_t>(twos) * n) % 8 == 0;
    const bool second = twos % 2 == 0 && mod((1 - odd_part_mod8) * mod(n, 8), 8) == 0;
    out.f = first || second;
  }
  return out;
}

Rational p_m_r(const SL2Matrix& gamma, std::int64_t m, std::int64_t big_m, const DeltaExponents& r,
               std::int64_t kappa_value) {
  if (big(gamma.a) * big(gamma.d) - big(gamma.b) * big(gamma.c) != 1) {
    throw std::invalid_argument("p_m_r: gamma must have determinant 1");
  }
  if (m < 1) throw std::invalid_argument("p_m_r: m must be positive");
  std::optional<Rational> best;
  const Integer mc = big(m) * big(gamma.c);
  for (std::int64_t lambda = 0; lambda < m; ++lambda) {
    Rational sum = 0;
    for (const auto& [delta, rd] : r) {
      if (big_m % delta != 0) throw std::invalid_argument("p_m_r: r must be indexed by divisors of M");
      if (rd == 0) continue;
      const Integer x = big(delta) * big(gamma.a) + big(delta) * big(kappa_value) * big(lambda) * big(gamma.c);
      const Integer g = igcd(x, mc);  // gcd(x, 0) = |x|
      sum += Rational(big(rd) * g * g, big(delta) * big(m));
    }
    sum /= 24;
    if (!best || sum < *best) best = sum;
  }
  best->canonicalize();
  return *best;
}

Rational p_star_a(const SL2Matrix& gamma, std::int64_t n, const DeltaExponents& a) {
  if (big(gamma.a) * big(gamma.d) - big(gamma.b) * big(gamma.c) != 1) {
    throw std::invalid_argument("p_star_a: gamma must have determinant 1");
  }
  Rational sum = 0;
  for (const auto& [delta, ad] : a) {
    if (n % delta != 0) throw std::invalid_argument("p_star_a: a must be indexed by divisors of N");
    const std::int64_t g = gcd(delta, gamma.c);
    sum += Rational(big(ad) * big(g) * big(g), big(delta));
  }
  sum /= 24;
  sum.canonicalize();
  return sum;
}

std::vector<SL2Matrix> double_coset_reps(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("double_coset_reps: N must be positive");
  if (!is_squarefree(n) && !(n % 2 == 0 && is_squarefree(n / 2))) {
    throw std::invalid_argument("double_coset_reps: neither N nor N/2 is squarefree");
  }
  std::vector<SL2Matrix> reps;
  for (std::int64_t delta : divisors(n)) reps.push_back({1, 0, delta, 1});
  return reps;
}

Integer gamma0_index(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("gamma0_index: N must be positive");
  Integer idx = big(n);
  for (const auto& [q, e] : factorize(n)) idx = idx / big(q) * big(q + 1);
  return idx;
}

std::int64_t nu_bound(const Factorization& mf, std::int64_t p) {
  validate_m(mf);
  const std::int64_t m = from_factorization(mf);
  Integer prod = epsilon_p(m, p) == 1 ? big(p + 1) : Integer(1);
  for (const auto& [q, e] : mf) prod *= big(q + 1);
  Rational value = Rational(big(m) * big(p - 1), 12) * Rational(prod - big(p)) - Rational(big(p - 1), big(12) * big(m));
  value.canonicalize();
  return floor(value).get_si();
}

Rational nu_general(std::int64_t m, std::int64_t big_m, std::int64_t n, const DeltaExponents& r,
                    const DeltaExponents& a, std::int64_t t_min) {
  Integer sum_r = 0, sum_delta_r = 0, sum_a = 0, sum_delta_a = 0;
  for (const auto& [delta, rd] : r) {
    if (big_m % delta != 0) throw std::invalid_argument("nu_general: r must be indexed by divisors of M");
    sum_r += big(rd);
    sum_delta_r += big(delta) * big(rd);
  }
  for (const auto& [delta, ad] : a) {
    if (n % delta != 0) throw std::invalid_argument("nu_general: a must be indexed by divisors of N");
    sum_a += big(ad);
    sum_delta_a += big(delta) * big(ad);
  }
  Rational nu = Rational((sum_r + sum_a) * gamma0_index(n) - sum_delta_a, 24) -
                Rational(sum_delta_r, big(24) * big(m)) - Rational(big(t_min), big(m));
  nu.canonicalize();
  return nu;
}

std::string to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::proved: return "proved";
    case VerificationStatus::counterexample: return "counterexample";
    case VerificationStatus::inapplicable: return "inapplicable";
  }
  return "unknown";
}

RSContext make_context(const RSInput& in, SSet s_set) {
  validate_input(in);
  RSContext ctx;
  ctx.m = from_factorization(in.m);
  ctx.kappa = kappa(ctx.m);
  ctx.p_hat = p_hat(in.p);
  ctx.epsilon_p = epsilon_p(ctx.m, in.p);
  ctx.big_m = in.p;
  ctx.r = bipartition_exponents(in.p);
  ctx.level = ctx.epsilon_p == 1 ? in.p : 1;
  for (const auto& [q, e] : in.m) ctx.level *= q;
  ctx.a_t = a_t(ctx.m, in.p, in.t);
  ctx.p_set = p_set(ctx.m, in.p, in.t, s_set);
  ctx.nu_floor = nu_bound(in.m, in.p);
  return ctx;
}

std::size_t required_coefficients(const RSContext& ctx, const VerifyOptions& opts) {
  const std::int64_t max_residue = ctx.p_set.residues.empty() ? 0 : ctx.p_set.residues.back();
  return static_cast<std::size_t>(ctx.m * extended_limit(ctx, opts) + max_residue + 1);
}

VerificationReport verify_congruence(const RSInput& in, const VerifyOptions& opts) {
  const RSContext ctx = make_context(in, opts.s_set);
  if (in.u == 1 || ctx.level % ctx.a_t != 0) return verify_congruence(in, opts, TruncatedSeries(SeriesRing::modular(1, 2)));
  const std::size_t need = required_coefficients(ctx, opts);
  if (need > opts.max_coefficients) {
    throw std::length_error("verification needs " + std::to_string(need) + " coefficients, cap is " +
                            std::to_string(opts.max_coefficients));
  }
  const auto series = bipartition_coeffs(in.p, SeriesRing::modular(need, static_cast<std::uint64_t>(in.u))).series;
  return verify_congruence(in, opts, series);
}

VerificationReport verify_congruence(const RSInput& in, const VerifyOptions& opts, const TruncatedSeries& bp_mod_u) {
  VerificationReport rep;
  rep.input = in;
  rep.context = make_context(in, opts.s_set);
  const RSContext& ctx = rep.context;
  if (in.p < 5) rep.warnings.push_back("the headline bound is stated for p >= 5; p = 3 relies on the supporting lemmas");
  if (opts.s_set == SSet::all_units && ctx.p_set.skipped_nonintegral > 0) {
    rep.warnings.push_back(std::to_string(ctx.p_set.skipped_nonintegral) + " units s skipped for a non-integral shift");
  }

  if (ctx.level % ctx.a_t != 0) {
    rep.status = VerificationStatus::inapplicable;
    rep.reason = "A_t = " + std::to_string(ctx.a_t) + " does not divide N = " + std::to_string(ctx.level);
    return rep;
  }

  rep.delta_star = delta_star_check(ctx.m, ctx.big_m, ctx.level, ctx.r, in.t);
  if (!rep.delta_star.ok()) throw std::logic_error("admissibility conditions failed for a constructed tuple");
  const DeltaExponents weights = cusp_weights(ctx.m, in.p);
  rep.cusp_bound_ok = true;
  for (const auto& g : double_coset_reps(ctx.level)) {
    if (p_m_r(g, ctx.m, ctx.big_m, ctx.r, ctx.kappa) + p_star_a(g, ctx.level, weights) < 0) rep.cusp_bound_ok = false;
  }
  if (!rep.cusp_bound_ok) throw std::logic_error("cusp lower bound failed for a constructed tuple");
  rep.nu_lemma = nu_general(ctx.m, ctx.big_m, ctx.level, ctx.r, weights, ctx.p_set.residues.front());

  if (in.u == 1) {
    rep.status = VerificationStatus::proved;
    rep.checked_n_max = ctx.nu_floor;
    rep.extended_n_max = extended_limit(ctx, opts);
    rep.reason = "every integer is divisible by 1";
    return rep;
  }

  if (bp_mod_u.modulus() != static_cast<std::uint64_t>(in.u)) {
    throw std::invalid_argument("verify_congruence: series modulus must equal u");
  }
  const std::int64_t ext = extended_limit(ctx, opts);
  const std::size_t need_base = static_cast<std::size_t>(ctx.m * ctx.nu_floor + ctx.p_set.residues.back() + 1);
  if (bp_mod_u.order() < need_base) throw std::invalid_argument("verify_congruence: series too short");

  rep.checked_n_max = ctx.nu_floor;
  rep.witness = scan(bp_mod_u, ctx.m, ctx.p_set.residues, 0, ctx.nu_floor);
  if (rep.witness) {
    rep.status = VerificationStatus::counterexample;
    return rep;
  }
  rep.status = VerificationStatus::proved;

  // Cross-check past the bound with whatever the series covers.
  const auto available = static_cast<std::int64_t>(bp_mod_u.order()) - ctx.p_set.residues.back() - 1;
  const std::int64_t ext_reach = std::min(ext, available / ctx.m);
  if (ext_reach < ext) rep.warnings.push_back("extended scan truncated to n = " + std::to_string(ext_reach));
  rep.extended_n_max = ext_reach;
  rep.extended_witness = scan(bp_mod_u, ctx.m, ctx.p_set.residues, ctx.nu_floor + 1, ext_reach);
  rep.extended_scan_ok = !rep.extended_witness.has_value();
  return rep;
}

std::vector<VerificationReport> search_families(std::int64_t p, const Factorization& m, std::int64_t u,
                                                const VerifyOptions& opts) {
  validate_m(m);
  const std::int64_t mv = from_factorization(m);
  // All t share nu; the longest series needed ends at the largest residue.
  RSContext probe = make_context({p, m, 0, u}, opts.s_set);
  probe.p_set.residues = {mv - 1};
  const std::size_t need = required_coefficients(probe, opts);
  if (u > 1 && need > opts.max_coefficients) {
    throw std::length_error("family search needs " + std::to_string(need) + " coefficients, cap is " +
                            std::to_string(opts.max_coefficients));
  }
  const TruncatedSeries series = u > 1 ? bipartition_coeffs(p, SeriesRing::modular(need, static_cast<std::uint64_t>(u))).series
                                       : TruncatedSeries(SeriesRing::modular(1, 2));

  std::vector<VerificationReport> reports;
  std::vector<char> covered(static_cast<std::size_t>(mv), 0);
  for (std::int64_t t = 0; t < mv; ++t) {
    if (covered[static_cast<std::size_t>(t)]) continue;
    VerificationReport rep = verify_congruence({p, m, t, u}, opts, series);
    for (std::int64_t r : rep.context.p_set.residues) covered[static_cast<std::size_t>(r)] = 1;
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace bipart
