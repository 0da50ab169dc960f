#pragma once

// Eta-quotients g(z) = prod eta(delta z)^{r_delta} on Gamma_0(N): weight,
// nebentypus, level conditions, orders of vanishing at cusps, and the
// holomorphic quotients B_{i,j,l} used for the density argument.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bipart/arith.hpp"
#include "bipart/qseries.hpp"

namespace bipart {

struct EtaTerm {
  std::int64_t delta = 1;
  std::int64_t exponent = 0;
  friend bool operator==(const EtaTerm&, const EtaTerm&) = default;
};

class EtaQuotient {
 public:
  // The empty quotient (constant 1) on level 1.
  EtaQuotient() = default;
  // Terms with equal delta are merged and zero exponents dropped; terms are
  // kept sorted by delta. Throws std::invalid_argument if some delta does
  // not divide level, or for non-positive delta/level.
  EtaQuotient(std::vector<EtaTerm> terms, std::int64_t level);

  const std::vector<EtaTerm>& terms() const { return terms_; }
  std::int64_t level() const { return level_; }
  // lcm of the deltas in the support (1 for the empty quotient).
  std::int64_t support_lcm() const;

 private:
  std::vector<EtaTerm> terms_;
  std::int64_t level_ = 1;
};

struct EtaProfile {
  std::int64_t weight_twice = 0;   // 2k = sum r_delta
  Rational prefactor;              // (1/24) sum delta r_delta, the leading q-exponent
  Rational character_disc = 1;     // s = prod delta^{r_delta}
  bool level_conditions_ok = false;  // integral weight, both sums = 0 mod 24

  bool integral_weight() const { return weight_twice % 2 == 0; }
  std::int64_t weight() const { return weight_twice / 2; }
};

EtaProfile profile(const EtaQuotient& eq);

// chi(d) = ((-1)^k s / d) for odd d > 0. Throws std::invalid_argument for
// even or non-positive d, or a half-integral weight.
int character_value(const EtaProfile& p, std::int64_t d);
// Same character extended to every d >= 1 with the Kronecker symbol at 2.
int character_kronecker(const EtaProfile& p, std::int64_t d);

// Smallest multiple N of `base` with sum delta r = 0 and sum (N/delta) r = 0
// (mod 24), searching N <= 576 base. nullopt when no such N exists.
std::optional<std::int64_t> min_level(std::span<const EtaTerm> terms, std::int64_t base);

// Order of vanishing at a cusp c/d of Gamma_0(N):
//   (N/24) sum gcd(d, delta)^2 r_delta / (gcd(d, N/d) d delta).
// Throws std::invalid_argument unless d | N.
Rational cusp_order(const EtaQuotient& eq, std::int64_t d);
// As above for an explicit cusp c/d; requires gcd(c, d) = 1.
Rational cusp_order_at(const EtaQuotient& eq, std::int64_t c, std::int64_t d);

struct CuspCheck {
  std::int64_t d = 1;
  std::int64_t c = 1;
  Rational order;
  bool holomorphic = false;
};

struct HolomorphyReport {
  EtaProfile profile;
  std::vector<CuspCheck> cusps;  // one per divisor d of N, c = 1
  bool holomorphic = false;      // every order >= 0
  // level_conditions_ok and holomorphic: g is a modular form of weight k on Gamma_0(N) with character chi.
  bool modular_form = false;
};

HolomorphyReport holomorphy_report(const EtaQuotient& eq);

// q^{prefactor} prod (q^delta; q^delta)^{r_delta} as a series. Requires a
// non-negative integral prefactor; throws std::invalid_argument otherwise.
TruncatedSeries expand(const EtaQuotient& eq, SeriesRing ring);

// eta^2(24 l z) eta^{p^{a+j}-2}(24 z) / eta^{p^j}(24 p^a z) on level 2^5 3^2 l,
// where (p, a) is entry `index` of the factorisation of l. Every prime must
// be >= 5 and every exponent >= 1.
EtaQuotient build_bijl(const Factorization& ell, std::size_t index, std::int64_t j);

// Checks B_{i,j,l} = sum B_l(n) q^{24n + 2l - 2} (mod p^{j+1}) for all
// degrees below `order`.
bool verify_bijl_congruence(const Factorization& ell, std::size_t index, std::int64_t j, std::size_t order);

// Parses "delta^r*delta^r*..." (r may be negative). Throws std::invalid_argument.
std::vector<EtaTerm> parse_eta_terms(std::string_view text);

}  // namespace bipart
