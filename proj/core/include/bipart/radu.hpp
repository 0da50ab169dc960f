#pragma once

// Finite verification of congruences B_p(mn + t') = 0 (mod u) for p-regular
// bipartitions, via the finite-check lemma for eta-quotients
//   sum c_r(n) q^n = prod_{delta | M} (q^delta; q^delta)^{r_delta}.
//
// For sum B_p(n) q^n = f_p^2 / f_1^2 the data is M = p, r = (r_1 = -2, r_p = 2),
// N = p^{eps_p} p_1 ... p_g for m = p_1^{e_1} ... p_g^{e_g}. When A_t divides N,
// vanishing for every t' in P(t) and 0 <= n <= nu_bound implies vanishing for
// all n.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipart/arith.hpp"
#include "bipart/qseries.hpp"

namespace bipart {

// Exponent vector (r_delta) indexed by delta; absent deltas are zero.
using DeltaExponents = std::map<std::int64_t, std::int64_t>;

struct SL2Matrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
};

// --- closed-form parameters ------------------------------------------------

// gcd(m^2 - 1, 24): 24, 8, 3, 1 for gcd(m, 6) = 1, 3, 2, 6.
std::int64_t kappa(std::int64_t m);
// 12m / gcd(-kappa (12t + p - 1), 12m).
std::int64_t a_t(std::int64_t m, std::int64_t p, std::int64_t t);
// 1 if p does not divide m, else 0.
int epsilon_p(std::int64_t m, std::int64_t p);
// (p^2 - 1)/24, kept for reference; not integral at p = 3.
Rational p_hat(std::int64_t p);

enum class SSet {
  squares,    // s ranges over the squares of (Z/24m)^*
  all_units,  // s ranges over (Z/24m)^*; s with a non-integral shift are skipped
};

struct PSet {
  std::vector<std::int64_t> residues;  // sorted t' values
  std::size_t skipped_nonintegral = 0;
};

// P(t) = { ts + (s-1)(p-1)/12 mod m }. With SSet::squares every shift must be
// integral; a violation throws std::logic_error.
PSet p_set(std::int64_t m, std::int64_t p, std::int64_t t, SSet s_set = SSet::squares);

// --- admissibility and cusp data for general (m, M, N, r, t) ---------------

struct DeltaStarCheck {
  bool a = false;  // primes of m divide N
  bool b = false;  // delta | mN whenever r_delta != 0
  bool c = false;  // kappa N sum r_delta mN/delta = 0 (mod 24)
  bool d = false;  // kappa N sum r_delta = 0 (mod 8)
  bool e = false;  // 24m / gcd(-24 kappa t - kappa sum delta r_delta, 24m) divides N
  bool f = false;  // the 2 | m clause
  bool ok() const { return a && b && c && d && e && f; }
};

DeltaStarCheck delta_star_check(std::int64_t m, std::int64_t big_m, std::int64_t n, const DeltaExponents& r,
                                std::int64_t t);

// min over lambda in [0, m) of (1/24) sum r_delta gcd^2(delta a + delta kappa lambda c, mc) / (delta m),
// with gcd(x, 0) = |x|. Throws std::invalid_argument if det(gamma) != 1.
Rational p_m_r(const SL2Matrix& gamma, std::int64_t m, std::int64_t big_m, const DeltaExponents& r,
               std::int64_t kappa_value);
// (1/24) sum a_delta gcd^2(delta, c) / delta.
Rational p_star_a(const SL2Matrix& gamma, std::int64_t n, const DeltaExponents& a);

// [[1, 0], [delta, 1]] for each delta | N. Requires N or N/2 squarefree.
std::vector<SL2Matrix> double_coset_reps(std::int64_t n);

// [Gamma : Gamma_0(N)] = N prod_{q | N} (1 + 1/q).
Integer gamma0_index(std::int64_t n);

// floor( m(p-1)/12 ((p+1)^eps (p_1+1)...(p_g+1) - p) - (p-1)/(12m) ).
std::int64_t nu_bound(const Factorization& m, std::int64_t p);

// (1/24){(sum r + sum a)[Gamma:Gamma_0(N)] - sum delta a_delta} - (1/24m) sum delta r_delta - t_min/m.
Rational nu_general(std::int64_t m, std::int64_t big_m, std::int64_t n, const DeltaExponents& r,
                    const DeltaExponents& a, std::int64_t t_min);

// --- the verifier ----------------------------------------------------------

struct RSInput {
  std::int64_t p = 5;
  Factorization m;  // primes >= 5, distinct
  std::int64_t t = 0;
  std::int64_t u = 2;
};

struct RSContext {
  std::int64_t m = 1;
  std::int64_t kappa = 24;
  Rational p_hat;
  int epsilon_p = 1;
  std::int64_t big_m = 5;  // M = p
  DeltaExponents r;         // {1: -2, p: 2}
  std::int64_t level = 1;   // N
  std::int64_t a_t = 1;
  PSet p_set;
  std::int64_t nu_floor = 0;
};

struct VerifyOptions {
  SSet s_set = SSet::squares;
  std::int64_t safety_factor = 10;            // extended scan reaches safety_factor * nu_floor
  std::size_t max_coefficients = 10'000'000;  // refuse series longer than this
};

enum class VerificationStatus { proved, counterexample, inapplicable };

std::string to_string(VerificationStatus s);

struct Witness {
  std::int64_t residue = 0;  // t'
  std::int64_t n = 0;
  Integer value;             // B_p(mn + t') mod u
};

struct VerificationReport {
  RSInput input;
  RSContext context;
  VerificationStatus status = VerificationStatus::inapplicable;
  std::int64_t checked_n_max = -1;
  std::optional<Witness> witness;
  DeltaStarCheck delta_star;
  bool cusp_bound_ok = false;             // p_{m,r} + p*_a >= 0 on every double coset
  Rational nu_lemma;                      // nu from the general lemma with a_p = 2m(p-1)
  std::int64_t extended_n_max = -1;
  bool extended_scan_ok = true;           // false means a proved family failed past the bound
  std::optional<Witness> extended_witness;
  std::string reason;
  std::vector<std::string> warnings;
};

// Builds every derived quantity for the input. Throws std::invalid_argument
// on malformed input (p not a prime >= 3, bad factorisation, t out of range, u < 1).
RSContext make_context(const RSInput& in, SSet s_set = SSet::squares);

// Number of B_p coefficients needed to run `in` including the extended scan.
std::size_t required_coefficients(const RSContext& ctx, const VerifyOptions& opts);

// Runs the full check. Throws std::length_error if the coefficient budget
// would exceed opts.max_coefficients.
VerificationReport verify_congruence(const RSInput& in, const VerifyOptions& opts = {});
// Same, reading B_p(n) mod u from a precomputed series (modulus must be u).
VerificationReport verify_congruence(const RSInput& in, const VerifyOptions& opts, const TruncatedSeries& bp_mod_u);

// Sweeps t = 0..m-1, one report per P(t)-orbit (represented by its least t).
std::vector<VerificationReport> search_families(std::int64_t p, const Factorization& m, std::int64_t u,
                                                const VerifyOptions& opts = {});

}  // namespace bipart
