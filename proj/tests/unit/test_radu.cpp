#include <doctest.h>

#include <algorithm>

#include "bipart/partitions.hpp"
#include "bipart/radu.hpp"

using namespace bipart;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

const DeltaExponents kBip5{{1, -2}, {5, 2}};

}  // namespace

TEST_CASE("kappa by gcd(m, 6)") {
  CHECK(kappa(5) == 24);
  CHECK(kappa(3) == 8);
  CHECK(kappa(1) == 24);
  CHECK(kappa(2) == 3);
  CHECK(kappa(6) == 1);
  for (std::int64_t m = 1; m < 500; ++m) {
    const std::int64_t expect = std::vector<std::int64_t>{0, 24, 3, 8, 0, 0, 1}[static_cast<std::size_t>(gcd(m, 6))];
    CHECK(kappa(m) == expect);
  }
}

TEST_CASE("A_t examples") {
  CHECK(a_t(25, 3, 9) == 5);
  CHECK(a_t(7, 5, 0) == 7);
  CHECK(a_t(1, 13, 0) == 1);
  for (std::int64_t m : {5, 7, 25, 35}) {
    for (std::int64_t t = 0; t < m; ++t) CHECK((12 * m) % a_t(m, 5, t) == 0);
  }
  CHECK_THROWS_AS(a_t(5, 3, 5), std::invalid_argument);
}

TEST_CASE("epsilon and p-hat") {
  CHECK(epsilon_p(25, 3) == 1);
  CHECK(epsilon_p(35, 5) == 0);
  CHECK(p_hat(5) == 1);
  CHECK(p_hat(3) == q(1, 3));
}

TEST_CASE("P(t)") {
  CHECK(p_set(1, 5, 0).residues == std::vector<std::int64_t>{0});
  const auto p = p_set(25, 3, 9);
  CHECK(p.residues == std::vector<std::int64_t>{9, 24});
  for (std::int64_t r : p.residues) CHECK(r % 5 == 4);
  for (std::int64_t m : {5, 7, 25, 35}) {
    for (std::int64_t t = 0; t < m; ++t) {
      const auto s = p_set(m, 7, t).residues;
      CHECK(std::find(s.begin(), s.end(), t) != s.end());
      const auto all = p_set(m, 7, t, SSet::all_units).residues;
      for (std::int64_t r : s) CHECK(std::find(all.begin(), all.end(), r) != all.end());
    }
  }
}

TEST_CASE("strict s-mode skips non-integral shifts") {
  const auto strict = p_set(25, 3, 9, SSet::all_units);
  CHECK(strict.skipped_nonintegral > 0);
  CHECK(p_set(25, 13, 9, SSet::all_units).skipped_nonintegral == 0);
}

TEST_CASE("delta star examples") {
  const DeltaExponents r3{{1, -2}, {3, 2}};
  CHECK(delta_star_check(25, 3, 15, r3, 9).ok());
  const auto missing = delta_star_check(25, 3, 3, r3, 9);
  CHECK_FALSE(missing.a);
  CHECK_FALSE(missing.ok());
  CHECK_THROWS_AS(delta_star_check(25, 3, 15, {{2, 1}}, 9), std::invalid_argument);
}

TEST_CASE("delta star holds on every constructed tuple of the grid") {
  for (std::int64_t p : {3, 5, 7}) {
    for (const Factorization& mf : {Factorization{{5, 1}}, Factorization{{7, 1}}, Factorization{{5, 2}},
                                    Factorization{{5, 1}, {7, 1}}}) {
      const std::int64_t m = from_factorization(mf);
      for (std::int64_t t = 0; t < m; ++t) {
        const RSContext ctx = make_context({p, mf, t, 2});
        if (ctx.level % ctx.a_t != 0) continue;
        CHECK(delta_star_check(ctx.m, ctx.big_m, ctx.level, ctx.r, t).ok());
      }
    }
  }
}

TEST_CASE("p_m_r examples and bounds") {
  const SL2Matrix g1{1, 0, 1, 1};
  CHECK(p_m_r(g1, 7, 5, kBip5, kappa(7)) == q(-7, 15));
  CHECK(p_m_r(g1, 7, 5, kBip5, kappa(7)) >= q(-(5 - 1) * 7, 12 * 5));
  CHECK(p_m_r({1, 0, 0, 1}, 1, 5, kBip5, 24) == q(1, 3));
  CHECK(p_m_r({1, 0, 5, 1}, 7, 5, kBip5, kappa(7)) > 0);
  CHECK(p_m_r({1, 0, 10, 1}, 7, 5, kBip5, kappa(7)) > 0);
  CHECK_THROWS_AS(p_m_r({1, 1, 1, 1}, 7, 5, kBip5, 24), std::invalid_argument);
}

TEST_CASE("p_star_a examples") {
  const SL2Matrix g5{1, 0, 5, 1};
  CHECK(p_star_a(g5, 35, {}) == 0);
  const std::int64_t m = 7, p = 5;
  const DeltaExponents a{{p, 2 * m * (p - 1)}};
  CHECK(p_star_a(g5, 35, a) == q(m * (p - 1) * p, 12));
  CHECK(p_star_a({1, 0, 1, 1}, 35, a) == q(m * (p - 1), 12 * p));
}

TEST_CASE("cusp bounds over the grid") {
  for (std::int64_t p : {3, 5, 7}) {
    for (const Factorization& mf : {Factorization{{5, 1}}, Factorization{{7, 1}}, Factorization{{5, 2}},
                                    Factorization{{5, 1}, {7, 1}}}) {
      const RSContext ctx = make_context({p, mf, 0, 2});
      const DeltaExponents a{{p, 2 * ctx.m * (p - 1)}};
      for (const auto& g : double_coset_reps(ctx.level)) {
        const Rational v = p_m_r(g, ctx.m, ctx.big_m, ctx.r, ctx.kappa);
        CHECK(v >= q(-(p - 1) * ctx.m, 12 * p));
        CHECK(v + p_star_a(g, ctx.level, a) >= 0);
      }
    }
  }
}

TEST_CASE("double coset representatives and index") {
  CHECK(double_coset_reps(15).size() == 4);
  CHECK(double_coset_reps(6).size() == 4);
  CHECK(double_coset_reps(12).size() == 6);
  CHECK_THROWS_AS(double_coset_reps(36), std::invalid_argument);
  CHECK(gamma0_index(15) == 24);
  CHECK(gamma0_index(1) == 1);
  CHECK(gamma0_index(36) == 72);
}

TEST_CASE("nu bound") {
  CHECK(nu_bound({{7, 1}}, 5) == 100);
  CHECK(nu_bound({{5, 2}}, 3) == 87);
  CHECK_THROWS_AS(nu_bound({}, 5), std::invalid_argument);
  CHECK_THROWS_AS(nu_bound({{3, 1}}, 5), std::invalid_argument);
}

TEST_CASE("nu general") {
  CHECK(nu_general(7, 5, 35, {}, {}, 3) == q(-3, 7));
  // a = 0 along the bound's chain stays below the closed form.
  CHECK(bipart::floor(nu_general(7, 5, 35, kBip5, {}, 0)) <= 100);
  const Rational with_a = nu_general(7, 5, 35, kBip5, {{5, 2 * 7 * 4}}, 0);
  CHECK(bipart::floor(with_a) == nu_bound({{7, 1}}, 5));
}

TEST_CASE("verification of the mod 3 family on m = 25") {
  const auto rep = verify_congruence({3, {{5, 2}}, 9, 3});
  CHECK(rep.status == VerificationStatus::proved);
  CHECK(rep.context.nu_floor == 87);
  CHECK(rep.context.a_t == 5);
  CHECK(rep.context.level == 15);
  CHECK(rep.checked_n_max == 87);
  CHECK(rep.extended_n_max == 870);
  CHECK(rep.extended_scan_ok);
  CHECK(rep.cusp_bound_ok);
  CHECK(rep.delta_star.ok());
  CHECK(bipart::floor(rep.nu_lemma) == 87);
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("verification of m = 7, p = 5, t = 0") {
  const auto rep = verify_congruence({5, {{7, 1}}, 0, 5});
  REQUIRE(rep.status != VerificationStatus::proved);
  if (rep.status == VerificationStatus::counterexample) {
    REQUIRE(rep.witness.has_value());
    const auto b = bipartition_coeffs(5, SeriesRing::exact(static_cast<std::size_t>(7 * rep.witness->n + rep.witness->residue + 1))).series;
    Integer v = b.coeff(static_cast<std::size_t>(7 * rep.witness->n + rep.witness->residue));
    CHECK(v % 5 != 0);
  }
}

TEST_CASE("u = 1 is vacuous, bad inputs throw, caps apply") {
  CHECK(verify_congruence({5, {{7, 1}}, 3, 1}).status == VerificationStatus::proved);
  CHECK_THROWS_AS(verify_congruence({4, {{7, 1}}, 0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(verify_congruence({5, {}, 0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(verify_congruence({5, {{7, 1}}, 7, 5}), std::invalid_argument);
  CHECK_THROWS_AS(verify_congruence({5, {{7, 1}}, 0, 0}), std::invalid_argument);
  VerifyOptions small;
  small.max_coefficients = 100;
  CHECK_THROWS_AS(verify_congruence({3, {{5, 2}}, 9, 3}, small), std::length_error);
}

TEST_CASE("family search deduplicates by orbit") {
  const auto reps = search_families(3, {{5, 2}}, 3);
  bool found = false;
  std::vector<char> seen(25, 0);
  for (const auto& r : reps) {
    for (std::int64_t t : r.context.p_set.residues) {
      CHECK(seen[static_cast<std::size_t>(t)] == 0);
      seen[static_cast<std::size_t>(t)] = 1;
    }
    if (r.status == VerificationStatus::proved && r.input.t == 9) found = true;
    if (r.status == VerificationStatus::proved) CHECK(r.extended_scan_ok);
  }
  CHECK(found);
  CHECK_THROWS_AS(search_families(5, {}, 5), std::invalid_argument);
}
