#pragma once

// Elementary number theory used throughout the library: gcd/lcm, Jacobi and
// Kronecker symbols, valuations, trial-division factorisation and exact
// rational helpers on top of GMP.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace bipart {

using Integer = mpz_class;
using Rational = mpq_class;

// A prime-power factorisation, primes strictly increasing.
using Factorization = std::vector<std::pair<std::int64_t, int>>;

// gcd(|a|, |b|); gcd(0, 0) = 0.
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

// Jacobi symbol (a/n) for odd n >= 1. Negative a follows (-1/n) = (-1)^((n-1)/2).
// Throws std::invalid_argument for even or non-positive n.
int jacobi(std::int64_t a, std::int64_t n);
int jacobi(const Integer& a, std::int64_t n);

// Kronecker extension of the Jacobi symbol to any n >= 1, with
// (a/2) = 0 for even a, +1 for a = +-1 mod 8 and -1 for a = +-3 mod 8.
int kronecker(const Integer& a, std::int64_t n);

// Largest e with p^e | n. Throws std::invalid_argument for n == 0.
int p_adic_valuation(std::int64_t n, std::int64_t p);

bool is_prime(std::int64_t n);
Factorization factorize(std::int64_t n);
std::int64_t from_factorization(const Factorization& f);
// Product of the distinct primes dividing n.
std::int64_t squarefree_kernel(std::int64_t n);
bool is_squarefree(std::int64_t n);
// Positive divisors in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

// Checked integer power; throws std::overflow_error if the result leaves int64.
std::int64_t ipow(std::int64_t base, unsigned exp);

// Floor division and non-negative remainder for b > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod(std::int64_t a, std::int64_t b);

// Inverse of a modulo m if gcd(a, m) = 1.
bool mod_inverse(std::uint64_t a, std::uint64_t m, std::uint64_t& out);

Integer floor(const Rational& q);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace bipart
