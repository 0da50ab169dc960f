#include <doctest.h>

#include <random>

#include "bipart/qseries.hpp"
#include "oracles.hpp"

using namespace bipart;

namespace {

TruncatedSeries random_series(std::mt19937_64& rng, SeriesRing ring, double density = 1.0, bool unit_constant = false) {
  std::vector<Integer> c(ring.order);
  std::uniform_int_distribution<long> val(-1000, 1000);
  std::bernoulli_distribution keep(density);
  for (auto& x : c) {
    if (keep(rng)) x = val(rng);
  }
  if (unit_constant) c[0] = 1;
  return TruncatedSeries::from_integers(ring, std::move(c));
}

std::vector<std::int64_t> head(const TruncatedSeries& s, std::size_t n) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(s.coeff_i64(i));
  return out;
}

TruncatedSeries from_poly(SeriesRing ring, const oracle::Poly& p) {
  return TruncatedSeries::from_integers(ring, std::vector<Integer>(p.begin(), p.end()));
}

}  // namespace

TEST_CASE("ring validation") {
  CHECK_THROWS_AS(TruncatedSeries(SeriesRing::exact(0)), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedSeries(SeriesRing::modular(4, 1)), std::invalid_argument);
  CHECK_NOTHROW(TruncatedSeries(SeriesRing::modular(4, 2)));
}

TEST_CASE("coefficients are reduced into [0, M)") {
  const auto s = TruncatedSeries::from_coefficients(SeriesRing::modular(4, 5), {-1, 7, 5, -12});
  CHECK(head(s, 4) == std::vector<std::int64_t>{4, 2, 0, 3});
  CHECK_THROWS_AS(s.coeff(4), std::out_of_range);
}

TEST_CASE("euler product examples") {
  const auto f = euler_product(1, 1, SeriesRing::exact(16));
  CHECK(head(f, 16) == std::vector<std::int64_t>{1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1});
  CHECK(euler_product(1, 0, SeriesRing::exact(10)) == TruncatedSeries::one(SeriesRing::exact(10)));
  const auto f4 = euler_product(1, 4, SeriesRing::exact(5));
  CHECK(head(f4, 5) == std::vector<std::int64_t>{1, -4, 2, 8, -5});
}

TEST_CASE("euler product matches direct expansion for assorted delta and e") {
  for (std::size_t delta : {1u, 2u, 3u, 5u, 24u}) {
    for (std::int64_t e : {-5, -2, -1, 1, 2, 3, 8}) {
      const std::size_t t = 150;
      const auto expect = oracle::eta_product({{static_cast<long>(delta), e}}, t);
      CHECK(euler_product(delta, e, SeriesRing::exact(t)) == from_poly(SeriesRing::exact(t), expect));
      CHECK(euler_product(delta, e, SeriesRing::modular(t, 7)) == from_poly(SeriesRing::modular(t, 7), expect));
    }
  }
}

TEST_CASE("pentagonal sparsity up to T = 1000") {
  const std::size_t t = 1000;
  const auto f = euler_product(1, 1, SeriesRing::exact(t));
  std::vector<int> expect(t, 0);
  for (long k = 0;; ++k) {
    const long g1 = k * (3 * k - 1) / 2;
    const long g2 = k * (3 * k + 1) / 2;
    if (g1 >= static_cast<long>(t)) break;
    expect[static_cast<std::size_t>(g1)] = (k % 2 == 0) ? 1 : -1;
    if (g2 < static_cast<long>(t)) expect[static_cast<std::size_t>(g2)] = (k % 2 == 0) ? 1 : -1;
  }
  for (std::size_t n = 0; n < t; ++n) CHECK(f.coeff_i64(n) == expect[n]);
}

TEST_CASE("mul identities") {
  const SeriesRing r = SeriesRing::exact(20);
  std::mt19937_64 rng(1);
  const auto x = random_series(rng, r);
  CHECK(mul(x, TruncatedSeries::one(r)) == x);
  std::vector<Integer> ones(20, 1);
  const auto geo = TruncatedSeries::from_integers(r, ones);
  const auto one_minus_q = TruncatedSeries::from_coefficients(r, {1, -1});
  CHECK(mul(one_minus_q, geo) == TruncatedSeries::one(r));
  CHECK(mul(euler_product(1, 1, r), euler_product(1, -1, r)) == TruncatedSeries::one(r));
  CHECK_THROWS_AS(mul(x, TruncatedSeries::one(SeriesRing::exact(21))), std::invalid_argument);
}

TEST_CASE("invert examples") {
  const SeriesRing r = SeriesRing::exact(12);
  CHECK(invert(TruncatedSeries::one(r)) == TruncatedSeries::one(r));
  const auto inv = invert(TruncatedSeries::from_coefficients(r, {1, -1}));
  for (std::size_t n = 0; n < 12; ++n) CHECK(inv.coeff(n) == 1);
  const auto two_colour = invert(euler_product(1, 2, SeriesRing::modular(3, 3)));
  CHECK(head(two_colour, 3) == std::vector<std::int64_t>{1, 2, 2});
  CHECK_THROWS_AS(invert(TruncatedSeries::from_coefficients(r, {2, 1})), std::domain_error);
  CHECK_THROWS_AS(invert(TruncatedSeries::from_coefficients(SeriesRing::modular(4, 6), {3, 1})), std::domain_error);
  CHECK(invert(TruncatedSeries::from_coefficients(SeriesRing::modular(4, 7), {3, 1})).coeff(0) == 5);
}

TEST_CASE("pow examples") {
  const SeriesRing r = SeriesRing::exact(40);
  std::mt19937_64 rng(2);
  const auto x = random_series(rng, r);
  CHECK(pow(x, 1) == x);
  CHECK(pow(x, 0) == TruncatedSeries::one(r));
  CHECK(pow(euler_product(1, 1, r), 4) == euler_product(1, 4, r));
  const auto sq = pow(TruncatedSeries::from_coefficients(SeriesRing::exact(5), {1, 1}), 2);
  CHECK(head(sq, 5) == std::vector<std::int64_t>{1, 2, 1, 0, 0});
}

TEST_CASE("extract_ap examples") {
  const auto x = TruncatedSeries::from_coefficients(SeriesRing::exact(4), {1, 2, 3, 4});
  CHECK(extract_ap(x, 1, 0) == x);
  const auto odd = extract_ap(x, 2, 1);
  CHECK(odd.order() == 2);
  CHECK(head(odd, 2) == std::vector<std::int64_t>{2, 4});
  CHECK_THROWS_AS(extract_ap(x, 2, 2), std::invalid_argument);

  const SeriesRing r3 = SeriesRing::modular(60, 3);
  const auto f4 = euler_product(1, 4, r3);
  const auto b3 = from_poly(r3, oracle::bipartitions(3, 60));
  CHECK(extract_ap(f4, 1, 0) == b3);
}

TEST_CASE("extract_ap agrees with direct indexing") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_series(rng, SeriesRing::modular(97, 11));
    for (std::size_t m = 1; m < 9; ++m) {
      for (std::size_t t = 0; t < m; ++t) {
        const auto y = extract_ap(x, m, t);
        CHECK(y.order() == (97 - t + m - 1) / m);
        for (std::size_t n = 0; n < y.order(); ++n) CHECK(y.coeff(n) == x.coeff(m * n + t));
      }
    }
  }
}

TEST_CASE("reduce_mod") {
  CHECK(reduce_mod(TruncatedSeries(SeriesRing::exact(8)), 5) == TruncatedSeries(SeriesRing::modular(8, 5)));
  const auto f = euler_product(1, 1, SeriesRing::exact(30));
  const auto f2 = reduce_mod(f, 2);
  for (std::size_t n = 0; n < 30; ++n) CHECK(f2.coeff(n) == (f.coeff(n) == 0 ? 0 : 1));
  CHECK(reduce_mod(f2, 2) == f2);
  CHECK(reduce_mod(reduce_mod(f, 9), 3) == reduce_mod(f, 3));
  CHECK_THROWS_AS(reduce_mod(reduce_mod(f, 9), 2), std::invalid_argument);
}

TEST_CASE("freshman's dream for (p, j) in {(3,1),(3,2),(5,1),(5,2)}") {
  for (auto [p, j] : {std::pair{3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
    std::uint64_t pj = 1;
    for (int i = 0; i < j; ++i) pj *= static_cast<std::uint64_t>(p);
    const SeriesRing r = SeriesRing::modular(200, pj);
    CHECK(pow(euler_product(1, 1, r), pj) == euler_product(static_cast<std::size_t>(p), static_cast<std::int64_t>(pj) / p, r));
  }
}

TEST_CASE("invert is a two-sided inverse; mul commutes and associates") {
  std::mt19937_64 rng(4);
  for (SeriesRing r : {SeriesRing::exact(60), SeriesRing::modular(300, 5), SeriesRing::modular(200, 1'000'003),
                       SeriesRing::modular(80, 10'000'000'019ULL)}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_series(rng, r, 0.7, true);
      const auto y = random_series(rng, r, 0.3);
      const auto z = random_series(rng, r, 1.0);
      const auto xi = invert(x);
      CHECK(mul(x, xi) == TruncatedSeries::one(r));
      CHECK(mul(xi, x) == TruncatedSeries::one(r));
      CHECK(mul(x, y) == mul(y, x));
      CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
      CHECK(mul(divide(y, x), x) == y);
    }
  }
}

TEST_CASE("karatsuba and schoolbook agree") {
  std::mt19937_64 rng(5);
  for (std::size_t t : {1u, 2u, 47u, 48u, 49u, 100u, 257u, 1000u}) {
    for (std::uint64_t m : {2ULL, 3ULL, 5ULL, 65'521ULL, 4'294'967'291ULL}) {
      const SeriesRing r = SeriesRing::modular(t, m);
      const auto x = random_series(rng, r);
      const auto y = random_series(rng, r, 0.5);
      CHECK(detail::mul_karatsuba(x, y) == detail::mul_schoolbook(x, y));
    }
  }
}

TEST_CASE("newton and recurrence inversion agree") {
  std::mt19937_64 rng(6);
  for (SeriesRing r : {SeriesRing::exact(70), SeriesRing::modular(500, 3), SeriesRing::modular(333, 25),
                       SeriesRing::modular(64, 10'000'000'019ULL)}) {
    const auto x = random_series(rng, r, 0.5, true);
    CHECK(detail::invert_newton(x) == detail::invert_recurrence(x));
  }
}

TEST_CASE("shift, inflate, truncate, congruent") {
  const SeriesRing r = SeriesRing::exact(10);
  const auto x = TruncatedSeries::from_coefficients(r, {1, 2, 3});
  CHECK(head(shift(x, 2), 5) == std::vector<std::int64_t>{0, 0, 1, 2, 3});
  CHECK(head(inflate(x, 3, 10), 8) == std::vector<std::int64_t>{1, 0, 0, 2, 0, 0, 3, 0});
  CHECK(truncate(x, 2).order() == 2);
  CHECK_THROWS_AS(truncate(x, 11), std::invalid_argument);
  const auto y = TruncatedSeries::from_coefficients(r, {4, -1, 3});
  CHECK(congruent(x, y, 3));
  CHECK_FALSE(congruent(x, y, 5));
  CHECK(x.valuation() == 0);
  CHECK(shift(x, 4).valuation() == 4);
  CHECK(x.nonzero_count() == 3);
}
