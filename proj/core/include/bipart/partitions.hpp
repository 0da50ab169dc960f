#pragma once

// Generating functions for l-regular partitions and bipartitions:
//   sum b_l(n) q^n = f_l / f_1,   sum B_l(n) q^n = f_l^2 / f_1^2,
// where f_k = prod_{m >= 1} (1 - q^{km}). l need not be prime.

#include <cstdint>

#include "bipart/qseries.hpp"

namespace bipart {

struct BipartitionStream {
  std::int64_t ell = 2;
  TruncatedSeries series;  // coefficient n is B_l(n), reduced when the ring is modular
};

// Throws std::invalid_argument for ell < 2.
BipartitionStream bipartition_coeffs(std::int64_t ell, SeriesRing ring);
TruncatedSeries regular_coeffs(std::int64_t ell, SeriesRing ring);

inline constexpr int kDefaultEnumerationCap = 40;

// Counts ordered pairs of l-regular partitions of total size n by walking
// every partition explicitly. Independent of the series code. Throws
// std::invalid_argument when n exceeds `cap`.
std::uint64_t brute_force_bipartitions(std::int64_t ell, int n, int cap = kDefaultEnumerationCap);
// Single-partition count b_l(n), same enumeration.
std::uint64_t brute_force_regular(std::int64_t ell, int n, int cap = kDefaultEnumerationCap);

}  // namespace bipart
