#include "bipart/etaquotients.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>
#include <string>

#include "bipart/partitions.hpp"

namespace bipart {

namespace {

Integer big(std::int64_t v) {
  return Integer(static_cast<long>(v));
}

Rational rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(big(num), big(den));
  q.canonicalize();
  return q;
}

void validate_factorization(const Factorization& ell) {
  if (ell.empty()) throw std::invalid_argument("factorisation of l is empty");
  std::int64_t prev = 0;
  for (const auto& [p, a] : ell) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("every prime of l must be a prime >= 5, got " + std::to_string(p));
    if (a < 1) throw std::invalid_argument("prime exponents must be >= 1");
    if (p <= prev) throw std::invalid_argument("primes must be distinct and increasing");
    prev = p;
  }
}

}  // namespace

EtaQuotient::EtaQuotient(std::vector<EtaTerm> terms, std::int64_t level) : level_(level) {
  if (level < 1) throw std::invalid_argument("eta-quotient level must be positive");
  std::map<std::int64_t, std::int64_t> merged;
  for (const auto& t : terms) {
    if (t.delta < 1) throw std::invalid_argument("eta-quotient delta must be positive");
    if (level % t.delta != 0) {
      throw std::invalid_argument("delta " + std::to_string(t.delta) + " does not divide level " + std::to_string(level));
    }
    merged[t.delta] += t.exponent;
  }
  for (const auto& [delta, r] : merged) {
    if (r != 0) terms_.push_back({delta, r});
  }
}

std::int64_t EtaQuotient::support_lcm() const {
  std::int64_t l = 1;
  for (const auto& t : terms_) l = lcm(l, t.delta);
  return l;
}

EtaProfile profile(const EtaQuotient& eq) {
  EtaProfile p;
  Integer weighted = 0;
  Integer co_weighted = 0;
  Integer num = 1;
  Integer den = 1;
  for (const auto& t : eq.terms()) {
    p.weight_twice += t.exponent;
    weighted += big(t.delta) * big(t.exponent);
    co_weighted += big(eq.level() / t.delta) * big(t.exponent);
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), big(t.delta).get_mpz_t(), static_cast<unsigned long>(t.exponent < 0 ? -t.exponent : t.exponent));
    (t.exponent > 0 ? num : den) *= power;
  }
  p.prefactor = Rational(weighted, 24);
  p.prefactor.canonicalize();
  p.character_disc = Rational(num, den);
  p.character_disc.canonicalize();
  p.level_conditions_ok = p.integral_weight() && mpz_divisible_ui_p(weighted.get_mpz_t(), 24) != 0 &&
                          mpz_divisible_ui_p(co_weighted.get_mpz_t(), 24) != 0;
  return p;
}

int character_value(const EtaProfile& p, std::int64_t d) {
  if (d <= 0 || d % 2 == 0) throw std::invalid_argument("character_value: d must be odd and positive");
  return character_kronecker(p, d);
}

int character_kronecker(const EtaProfile& p, std::int64_t d) {
  if (!p.integral_weight()) throw std::invalid_argument("character undefined for half-integral weight");
  if (d <= 0) throw std::invalid_argument("character: d must be positive");
  // ((a/b)/d) = (a/d)(b/d) for a symbol with values in {-1, 0, 1}.
  const Integer sign = (p.weight() % 2 == 0) ? 1 : -1;
  return kronecker(sign * p.character_disc.get_num(), d) * kronecker(p.character_disc.get_den(), d);
}

std::optional<std::int64_t> min_level(std::span<const EtaTerm> terms, std::int64_t base) {
  if (base < 1) throw std::invalid_argument("min_level: base must be positive");
  Integer weighted = 0;
  for (const auto& t : terms) {
    if (base % t.delta != 0) throw std::invalid_argument("min_level: base must be a multiple of every delta");
    weighted += big(t.delta) * big(t.exponent);
  }
  if (mpz_divisible_ui_p(weighted.get_mpz_t(), 24) == 0) return std::nullopt;
  for (std::int64_t k = 1; k <= 24 * 24; ++k) {
    const std::int64_t n = base * k;
    Integer co_weighted = 0;
    for (const auto& t : terms) co_weighted += big(n / t.delta) * big(t.exponent);
    if (mpz_divisible_ui_p(co_weighted.get_mpz_t(), 24) != 0) return n;
  }
  return std::nullopt;
}

Rational cusp_order(const EtaQuotient& eq, std::int64_t d) {
  const std::int64_t n = eq.level();
  if (d < 1 || n % d != 0) throw std::invalid_argument("cusp_order: d must divide the level");
  const std::int64_t g = gcd(d, n / d);
  Rational sum = 0;
  for (const auto& t : eq.terms()) {
    const std::int64_t gd = gcd(d, t.delta);
    sum += Rational(big(gd) * big(gd) * big(t.exponent), big(g) * big(d) * big(t.delta));
  }
  Rational order = rational(n, 24) * sum;
  order.canonicalize();
  return order;
}

Rational cusp_order_at(const EtaQuotient& eq, std::int64_t c, std::int64_t d) {
  if (gcd(c, d) != 1) throw std::invalid_argument("cusp_order_at: gcd(c, d) must be 1");
  return cusp_order(eq, d);
}

HolomorphyReport holomorphy_report(const EtaQuotient& eq) {
  HolomorphyReport r;
  r.profile = profile(eq);
  r.holomorphic = true;
  for (std::int64_t d : divisors(eq.level())) {
    CuspCheck c{d, 1, cusp_order(eq, d), false};
    c.holomorphic = sgn(c.order) >= 0;
    r.holomorphic = r.holomorphic && c.holomorphic;
    r.cusps.push_back(std::move(c));
  }
  r.modular_form = r.profile.level_conditions_ok && r.holomorphic;
  return r;
}

TruncatedSeries expand(const EtaQuotient& eq, SeriesRing ring) {
  const EtaProfile p = profile(eq);
  if (p.prefactor.get_den() != 1 || sgn(p.prefactor) < 0) {
    throw std::invalid_argument("expand: leading exponent " + p.prefactor.get_str() + " is not a non-negative integer");
  }
  const Integer lead = p.prefactor.get_num();
  if (lead >= Integer(static_cast<unsigned long>(ring.order))) return TruncatedSeries(ring);
  TruncatedSeries s = TruncatedSeries::one(ring);
  for (const auto& t : eq.terms()) s = mul(s, euler_product(static_cast<std::size_t>(t.delta), t.exponent, ring));
  return shift(s, lead.get_ui());
}

EtaQuotient build_bijl(const Factorization& ell, std::size_t index, std::int64_t j) {
  validate_factorization(ell);
  if (index >= ell.size()) throw std::invalid_argument("build_bijl: prime index out of range");
  if (j < 1) throw std::invalid_argument("build_bijl: j must be positive");
  const std::int64_t l = from_factorization(ell);
  const auto [p, a] = ell[index];
  const std::int64_t pa = ipow(p, static_cast<unsigned>(a));
  const std::int64_t pj = ipow(p, static_cast<unsigned>(j));
  const std::int64_t paj = ipow(p, static_cast<unsigned>(a + j));
  return EtaQuotient({{24 * l, 2}, {24, paj - 2}, {24 * pa, -pj}}, 32 * 9 * l);
}

bool verify_bijl_congruence(const Factorization& ell, std::size_t index, std::int64_t j, std::size_t order) {
  const EtaQuotient eq = build_bijl(ell, index, j);
  const std::int64_t l = from_factorization(ell);
  const std::int64_t p = ell[index].first;
  const auto modulus = static_cast<std::uint64_t>(ipow(p, static_cast<unsigned>(j + 1)));
  const auto shift_by = static_cast<std::size_t>(2 * l - 2);
  if (order <= shift_by) return true;

  const SeriesRing ring = SeriesRing::modular(order, modulus);
  const TruncatedSeries lhs = expand(eq, ring);
  const std::size_t terms = (order - shift_by + 23) / 24;
  const TruncatedSeries rhs = bipartition_coeffs(l, SeriesRing::modular(terms, modulus)).series;
  for (std::size_t deg = 0; deg < order; ++deg) {
    Integer expected = 0;
    if (deg >= shift_by && (deg - shift_by) % 24 == 0) expected = rhs.coeff((deg - shift_by) / 24);
    if (lhs.coeff(deg) != expected) return false;
  }
  return true;
}

std::vector<EtaTerm> parse_eta_terms(std::string_view text) {
  std::vector<EtaTerm> terms;
  if (text.empty()) throw std::invalid_argument("eta spec is empty");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t star = text.find('*', pos);
    const std::string_view term = text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
    const std::size_t caret = term.find('^');
    if (caret == std::string_view::npos) throw std::invalid_argument("eta term '" + std::string(term) + "' must look like delta^r");
    EtaTerm t;
    const auto parse = [&](std::string_view s, std::int64_t& out) {
      const auto* first = s.data();
      const auto* last = s.data() + s.size();
      const auto res = std::from_chars(first, last, out);
      if (s.empty() || res.ec != std::errc() || res.ptr != last) {
        throw std::invalid_argument("eta term '" + std::string(term) + "': bad integer");
      }
    };
    parse(term.substr(0, caret), t.delta);
    parse(term.substr(caret + 1), t.exponent);
    if (t.delta < 1) throw std::invalid_argument("eta term '" + std::string(term) + "': delta must be positive");
    terms.push_back(t);
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return terms;
}

}  // namespace bipart
