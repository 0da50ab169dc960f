#include <doctest.h>

#include <cstdlib>

#include "bipart/arith.hpp"
#include "oracles.hpp"

using namespace bipart;

TEST_CASE("gcd examples and sign handling") {
  CHECK(gcd(0, 7) == 7);
  CHECK(gcd(24, 36) == 12);
  CHECK(gcd(2640, 300) == 60);
  CHECK(gcd(0, 0) == 0);
  CHECK(gcd(-24, 36) == 12);
  CHECK(gcd(24, -36) == 12);
  CHECK(lcm(4, 6) == 12);
}

TEST_CASE("gcd divides both and gcd * lcm = |ab|") {
  for (std::int64_t a = -40; a <= 40; ++a) {
    for (std::int64_t b = -40; b <= 40; ++b) {
      const std::int64_t g = gcd(a, b);
      CHECK(g >= 0);
      if (a == 0 && b == 0) continue;
      CHECK(a % g == 0);
      CHECK(b % g == 0);
      if (a != 0 && b != 0) CHECK(g * lcm(a, b) == std::llabs(a * b));
    }
  }
}

TEST_CASE("jacobi examples") {
  CHECK(jacobi(1, 15) == 1);
  CHECK(jacobi(3, 7) == -1);
  CHECK(jacobi(6, 3) == 0);
  CHECK_THROWS_AS(jacobi(3, 8), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, -7), std::invalid_argument);
}

TEST_CASE("jacobi of negative numerator follows (-1/n) = (-1)^((n-1)/2)") {
  for (std::int64_t n = 1; n < 100; n += 2) {
    CHECK(jacobi(-1, n) == (((n - 1) / 2) % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("jacobi is completely multiplicative in the numerator") {
  for (std::int64_t n = 1; n <= 99; n += 2) {
    for (std::int64_t a = -50; a <= 50; ++a) {
      for (std::int64_t b = -50; b <= 50; ++b) {
        if (jacobi(a * b, n) != jacobi(a, n) * jacobi(b, n)) {
          FAIL("multiplicativity fails at a=" << a << " b=" << b << " n=" << n);
        }
      }
    }
  }
}

TEST_CASE("jacobi matches Euler's criterion at primes") {
  for (std::int64_t p = 3; p <= 200; ++p) {
    if (!oracle::is_prime(p)) continue;
    for (std::int64_t a = -60; a <= 60; ++a) CHECK(jacobi(a, p) == oracle::euler_criterion(a, p));
  }
}

TEST_CASE("jacobi on big numerators agrees with the word version") {
  for (std::int64_t n = 1; n < 60; n += 2) {
    for (std::int64_t a = -30; a <= 30; ++a) CHECK(jacobi(Integer(static_cast<long>(a)), n) == jacobi(a, n));
  }
  Integer big_a("123456789012345678901234567890");
  CHECK(jacobi(big_a, 7) == jacobi(static_cast<std::int64_t>(mpz_fdiv_ui(big_a.get_mpz_t(), 7)), 7));
}

TEST_CASE("kronecker symbol at 2") {
  CHECK(kronecker(1, 2) == 1);
  CHECK(kronecker(7, 2) == 1);
  CHECK(kronecker(3, 2) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(4, 2) == 0);
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(5, 12) == kronecker(5, 4) * jacobi(5, 3));
}

TEST_CASE("p-adic valuation") {
  CHECK(p_adic_valuation(1, 5) == 0);
  CHECK(p_adic_valuation(50, 5) == 2);
  CHECK(p_adic_valuation(7200, 3) == 2);
  CHECK_THROWS_AS(p_adic_valuation(0, 5), std::invalid_argument);
}

TEST_CASE("factorisation round trip and divisors") {
  for (std::int64_t n = 1; n < 3000; ++n) {
    const auto f = factorize(n);
    CHECK(from_factorization(f) == n);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(oracle::is_prime(f[i].first));
      if (i > 0) CHECK(f[i - 1].first < f[i].first);
    }
  }
  CHECK(divisors(36) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 9, 12, 18, 36});
  CHECK(divisors(1) == std::vector<std::int64_t>{1});
  CHECK(squarefree_kernel(7200) == 30);
  CHECK(is_squarefree(15));
  CHECK_FALSE(is_squarefree(12));
}

TEST_CASE("primality agrees with trial division") {
  for (std::int64_t n = -5; n < 5000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
  CHECK(is_prime(1'000'000'007));
  CHECK_FALSE(is_prime(1'000'000'007LL * 3));
}

TEST_CASE("ipow, floor_div, mod, mod_inverse") {
  CHECK(ipow(5, 3) == 125);
  CHECK(ipow(7, 0) == 1);
  CHECK_THROWS_AS(ipow(10, 19), std::overflow_error);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(7, 2) == 3);
  CHECK(mod(-7, 5) == 3);
  std::uint64_t inv = 0;
  CHECK(mod_inverse(3, 7, inv));
  CHECK(inv == 5);
  CHECK_FALSE(mod_inverse(6, 9, inv));
}

TEST_CASE("rational floor and printing") {
  CHECK(bipart::floor(Rational(7, 2)) == 3);
  CHECK(bipart::floor(Rational(-7, 2)) == -4);
  CHECK(to_string(Rational(-7, 15)) == "-7/15");
  CHECK(to_string(Rational(4, 2)) == "2");
}
