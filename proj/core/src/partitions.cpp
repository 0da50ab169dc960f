#include "bipart/partitions.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bipart {

namespace {

void check_ell(std::int64_t ell) {
  if (ell < 2) throw std::invalid_argument("ell must be >= 2, got " + std::to_string(ell));
}

// Visits every partition with parts <= max_part (none divisible by ell) and
// size <= budget, tallying one per partition at its size.
void enumerate(std::int64_t ell, int size, int budget, int max_part, std::vector<std::uint64_t>& tally) {
  ++tally[static_cast<std::size_t>(size)];
  for (int part = std::min(max_part, budget - size); part >= 1; --part) {
    if (part % ell == 0) continue;
    enumerate(ell, size + part, budget, part, tally);
  }
}

std::vector<std::uint64_t> regular_counts(std::int64_t ell, int n, int cap) {
  check_ell(ell);
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (n > cap) {
    throw std::invalid_argument("enumeration capped at n = " + std::to_string(cap) + ", got " + std::to_string(n));
  }
  std::vector<std::uint64_t> tally(static_cast<std::size_t>(n) + 1, 0);
  enumerate(ell, 0, n, n, tally);
  return tally;
}

}  // namespace

BipartitionStream bipartition_coeffs(std::int64_t ell, SeriesRing ring) {
  check_ell(ell);
  ring.validate();
  const TruncatedSeries f1 = euler_product(1, 1, ring);
  const TruncatedSeries fl2 = euler_product(static_cast<std::size_t>(ell), 2, ring);
  // Two sparse divisions by f_1 are far cheaper than inverting the dense f_1^2.
  return {ell, divide(divide(fl2, f1), f1)};
}

TruncatedSeries regular_coeffs(std::int64_t ell, SeriesRing ring) {
  check_ell(ell);
  ring.validate();
  return divide(euler_product(static_cast<std::size_t>(ell), 1, ring), euler_product(1, 1, ring));
}

std::uint64_t brute_force_regular(std::int64_t ell, int n, int cap) {
  return regular_counts(ell, n, cap).back();
}

std::uint64_t brute_force_bipartitions(std::int64_t ell, int n, int cap) {
  const auto r = regular_counts(ell, n, cap);
  std::uint64_t total = 0;
  for (int k = 0; k <= n; ++k) total += r[static_cast<std::size_t>(k)] * r[static_cast<std::size_t>(n - k)];
  return total;
}

}  // namespace bipart
