#pragma once

// Numerical checks of the Hecke, Newman and congruence-family statements for
// B_3 (mod 3) and B_5 (mod 5), plus density scans for B_l (mod p^j).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bipart/arith.hpp"
#include "bipart/qseries.hpp"

namespace bipart {

// --- Hecke operators ---------------------------------------------------------

// Coefficient n of the result is a(qn) + chi_q q^{k-1} a(n/q), the second term
// only when q | n. The result has order ceil(T/q). Requires an exact ring.
TruncatedSeries hecke_apply(const TruncatedSeries& a, std::int64_t q, int k, int chi_q);

struct HeckeReport {
  std::string series_id;
  std::int64_t q = 2;
  int k = 2;
  int chi_q = 1;
  std::size_t order = 0;              // T of the input stream
  Integer eigenvalue;                 // a(q), meaningful when !violation
  std::optional<std::int64_t> violation;  // first n with qn < T breaking T_q a = lambda a
  bool ok() const { return !violation.has_value(); }
};

// lambda = a(q); checks a(qn) + chi_q q^{k-1} a(n/q) = lambda a(n) for all n
// with qn < T. Requires a(1) = 1 and an exact ring.
HeckeReport check_eigenform(const TruncatedSeries& a, std::int64_t q, int k, int chi_q, std::string series_id = {});

// eta^power(delta z) as a q-series in an exact ring (support on n = delta power/24 mod delta).
TruncatedSeries eta_power_stream(std::int64_t delta, std::int64_t power, std::size_t order);

// --- families ------------------------------------------------------------------

enum class Verdict { pass, fail, inapplicable };
std::string to_string(Verdict v);

struct FamilyParams {
  std::vector<std::int64_t> primes;  // p_1..p_{k+1} for thm8/thm10; {p} otherwise
  std::int64_t k = 0;
  std::int64_t j = 1;
  std::int64_t r = 0;
};

struct Counterexample {
  std::int64_t n = 0;
  std::int64_t lhs_index = 0;
  Integer lhs;   // residue of the left side
  Integer rhs;   // residue the left side should equal
};

struct FamilyReport {
  std::string id;
  FamilyParams params;
  std::int64_t modulus = 3;
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  std::size_t checked = 0;  // values of n actually compared (side conditions may skip some)
  Verdict verdict = Verdict::inapplicable;
  std::optional<Counterexample> counterexample;
  std::string statement;
  std::string reason;
};

// Shares B_l (mod M) series between checks, growing them on demand.
class CoefficientCache {
 public:
  explicit CoefficientCache(std::size_t max_coefficients = 50'000'000) : cap_(max_coefficients) {}
  // Series with order >= `order`. Throws std::length_error above the cap.
  const TruncatedSeries& bipartitions(std::int64_t ell, std::uint64_t modulus, std::size_t order);

 private:
  std::size_t cap_;
  std::map<std::pair<std::int64_t, std::uint64_t>, TruncatedSeries> store_;
};

// Family ids: thm8 coro3 Newmann1 thm9 coro4 thm10 coro5 Newmann2 thm11 coro6.
const std::vector<std::string>& family_ids();

// Scans n = 0..n_max. Bad parameters give Verdict::inapplicable with a reason;
// an unknown id throws std::invalid_argument.
FamilyReport verify_family(std::string_view id, const FamilyParams& params, std::int64_t n_max, CoefficientCache& cache);
FamilyReport verify_family(std::string_view id, const FamilyParams& params, std::int64_t n_max);

// --- Newman recurrences --------------------------------------------------------

enum class NewmanKind { f1f3, f1cubed_f5 };
std::string to_string(NewmanKind k);
NewmanKind parse_newman_kind(std::string_view s);

// Checks the exact recurrence for c = f1 f3 (shift (p-1)/6) or t = f1^3 f5
// (shift (p-1)/3) for every n whose left index is below T. The report's
// modulus is 0 (exact).
FamilyReport newman_check(NewmanKind kind, std::int64_t p, std::size_t order);

// Primes p = 1 (mod 6) below `bound` with B_3((p-1)/6) = 0 (mod 3), resp.
// B_5((p-1)/3) = 0 (mod 5).
std::vector<std::int64_t> discover_newman_primes(NewmanKind kind, std::int64_t bound);

// --- series identities -----------------------------------------------------------

struct IdentityReport {
  std::string id;
  std::uint64_t modulus = 0;
  std::size_t order = 0;
  std::optional<std::size_t> mismatch;  // first differing degree
  bool ok() const { return !mismatch.has_value(); }
};

// B_3 = f1^4 and f1 f3 (mod 3); B_5 = f1^8 and f1^3 f5 (mod 5), to order T.
std::vector<IdentityReport> dictionary_identities(std::size_t order);
// f_k^{p^j} = f_{kp}^{p^{j-1}} (mod p^j) for k = 1.
IdentityReport frobenius_identity(std::int64_t p, std::int64_t j, std::size_t order);

// --- density -----------------------------------------------------------------------

struct DensityPoint {
  std::int64_t x = 0;
  std::int64_t divisible_count = 0;
  Rational fraction;
};

struct DensityScan {
  std::int64_t ell = 5;
  std::int64_t p = 5;
  std::int64_t j = 1;
  bool growth_condition = false;  // p^{2a} >= l for the exponent a of p in l (informational)
  std::vector<DensityPoint> points;
};

// For each X (and every multiple of `stride` up to max X when stride > 0),
// the fraction of 1 <= n <= X with B_l(n) = 0 (mod p^j). X = 0 entries are
// dropped. One series pass of order max X + 1.
DensityScan density_scan(std::int64_t ell, std::int64_t p, std::int64_t j, const std::vector<std::int64_t>& xs,
                         std::int64_t stride = 0, std::size_t max_coefficients = 50'000'000);

}  // namespace bipart
