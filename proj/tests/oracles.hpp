#pragma once

// Slow reference computations used only by the tests. Nothing here calls the
// library's series arithmetic.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Poly = std::vector<mpz_class>;

// prod over (delta, e) of prod_{n >= 1} (1 - q^{delta n})^e, truncated to T terms.
inline Poly eta_product(const std::vector<std::pair<long, long>>& factors, std::size_t t) {
  Poly c(t, 0);
  if (t == 0) return c;
  c[0] = 1;
  for (const auto& [delta, e] : factors) {
    for (std::size_t step = static_cast<std::size_t>(delta); step < t; step += static_cast<std::size_t>(delta)) {
      for (long rep = 0; rep < (e < 0 ? -e : e); ++rep) {
        if (e > 0) {
          // multiply by (1 - q^step)
          for (std::size_t i = t; i-- > step;) c[i] -= c[i - step];
        } else {
          // divide by (1 - q^step)
          for (std::size_t i = step; i < t; ++i) c[i] += c[i - step];
        }
      }
    }
  }
  return c;
}

// Ordered pairs of l-regular partitions by coin-change DP with two colours.
inline Poly bipartitions(long ell, std::size_t t) {
  Poly c(t, 0);
  if (t == 0) return c;
  c[0] = 1;
  for (std::size_t part = 1; part < t; ++part) {
    if (part % static_cast<std::size_t>(ell) == 0) continue;
    for (int colour = 0; colour < 2; ++colour) {
      for (std::size_t i = part; i < t; ++i) c[i] += c[i - part];
    }
  }
  return c;
}

inline long mod(const mpz_class& x, long m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

// a^((p-1)/2) mod p mapped to {-1, 0, 1}.
inline int euler_criterion(long a, long p) {
  mpz_class r;
  const mpz_class base = mod(mpz_class(a), p);
  mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), mpz_class(p).get_mpz_t());
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace oracle
