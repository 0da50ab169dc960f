#include "bipart/arith.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bipart {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  // std::gcd on |INT64_MIN| is undefined; callers never get near it.
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::int64_t g = gcd(a, b);
  const std::int64_t x = (a < 0 ? -a : a) / g;
  const std::int64_t y = b < 0 ? -b : b;
  if (x > std::numeric_limits<std::int64_t>::max() / y) throw std::overflow_error("lcm overflow");
  return x * y;
}

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int jacobi(const Integer& a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n));
  return jacobi(r.get_si(), n);
}

int kronecker(const Integer& a, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("kronecker: modulus must be positive");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (mpz_even_p(a.get_mpz_t())) return 0;
    const unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), 8);
    if (r == 3 || r == 5) result = -result;
  }
  return result * jacobi(a, n);
}

int p_adic_valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::invalid_argument("p_adic_valuation: n must be nonzero");
  if (p < 2) throw std::invalid_argument("p_adic_valuation: p must be a prime");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::int64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

Factorization factorize(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    f.emplace_back(d, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::int64_t from_factorization(const Factorization& f) {
  std::int64_t n = 1;
  for (const auto& [p, e] : f) {
    const std::int64_t pe = ipow(p, static_cast<unsigned>(e));
    if (n > std::numeric_limits<std::int64_t>::max() / pe) throw std::overflow_error("factorization overflows int64");
    n *= pe;
  }
  return n;
}

std::int64_t squarefree_kernel(std::int64_t n) {
  std::int64_t k = 1;
  for (const auto& pe : factorize(n)) k *= pe.first;
  return k;
}

bool is_squarefree(std::int64_t n) {
  for (const auto& pe : factorize(n)) {
    if (pe.second > 1) return false;
  }
  return true;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t ipow(std::int64_t base, unsigned exp) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("ipow overflow");
  }
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t b) {
  const std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

bool mod_inverse(std::uint64_t a, std::uint64_t m, std::uint64_t& out) {
  if (m == 1) {
    out = 0;
    return true;
  }
  Integer inv;
  const Integer za = Integer(static_cast<unsigned long>(a));
  const Integer zm = Integer(static_cast<unsigned long>(m));
  if (mpz_invert(inv.get_mpz_t(), za.get_mpz_t(), zm.get_mpz_t()) == 0) return false;
  out = inv.get_ui();
  return true;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const Integer& z) {
  return z.get_str();
}

}  // namespace bipart
