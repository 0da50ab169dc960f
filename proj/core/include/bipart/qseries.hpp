#pragma once

// Truncated formal power series in q over Z or Z/M.
//
// A series lives in degrees 0..T-1. Exact series (M = 0) and moduli above
// kWordModulusLimit use GMP integers; smaller moduli use machine-word
// residues in [0, M). Values are immutable: every operation returns a new
// series.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "bipart/arith.hpp"

namespace bipart {

// Largest modulus stored as machine-word residues.
inline constexpr std::uint64_t kWordModulusLimit = std::uint64_t{1} << 32;

struct SeriesRing {
  std::size_t order = 1;       // T: degrees 0..T-1 are kept.
  std::uint64_t modulus = 0;   // 0 for exact integers, otherwise M >= 2.

  static SeriesRing exact(std::size_t order) { return {order, 0}; }
  static SeriesRing modular(std::size_t order, std::uint64_t modulus) { return {order, modulus}; }

  bool is_exact() const { return modulus == 0; }
  bool word_backed() const { return modulus >= 2 && modulus <= kWordModulusLimit; }
  SeriesRing with_order(std::size_t t) const { return {t, modulus}; }

  // Throws std::invalid_argument unless T >= 1 and M != 1.
  void validate() const;

  friend bool operator==(const SeriesRing&, const SeriesRing&) = default;
};

class TruncatedSeries {
 public:
  // The zero series.
  explicit TruncatedSeries(SeriesRing ring);

  static TruncatedSeries one(SeriesRing ring);
  static TruncatedSeries monomial(SeriesRing ring, std::size_t degree, const Integer& c = 1);

  // Coefficients beyond the given list are zero; extra entries are dropped.
  static TruncatedSeries from_coefficients(SeriesRing ring, std::span<const Integer> coeffs);
  static TruncatedSeries from_coefficients(SeriesRing ring, std::initializer_list<std::int64_t> coeffs);
  // Takes residues already reduced into [0, M); ring must be word backed.
  static TruncatedSeries from_residues(SeriesRing ring, std::vector<std::uint64_t> residues);
  // Takes integers and reduces them when the ring is modular.
  static TruncatedSeries from_integers(SeriesRing ring, std::vector<Integer> values);

  const SeriesRing& ring() const { return ring_; }
  std::size_t order() const { return ring_.order; }
  std::uint64_t modulus() const { return ring_.modulus; }

  // Coefficient of q^n as an integer (a residue in [0, M) when modular).
  // Throws std::out_of_range for n >= T.
  Integer coeff(std::size_t n) const;
  // Signed coefficient; throws std::overflow_error if it does not fit.
  std::int64_t coeff_i64(std::size_t n) const;
  bool is_zero_at(std::size_t n) const;
  std::size_t nonzero_count() const;
  // Smallest degree with a nonzero coefficient, or order() if the series is zero.
  std::size_t valuation() const;

  bool word_backed() const { return ring_.word_backed(); }
  std::span<const std::uint64_t> residues() const { return words_; }
  std::span<const Integer> integers() const { return big_; }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  SeriesRing ring_;
  std::vector<std::uint64_t> words_;
  std::vector<Integer> big_;
};

// Ring operations. Binary operations require identical rings and throw
// std::invalid_argument on mismatch.
TruncatedSeries add(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries sub(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries negate(const TruncatedSeries& x);
TruncatedSeries scale(const TruncatedSeries& x, const Integer& c);
TruncatedSeries mul(const TruncatedSeries& x, const TruncatedSeries& y);
// Requires a unit constant term (+-1 exactly, or invertible mod M).
TruncatedSeries invert(const TruncatedSeries& x);
// x / y, same unit requirement on y's constant term.
TruncatedSeries divide(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries pow(const TruncatedSeries& x, std::uint64_t e);

// Multiply by q^k, dropping what falls past T.
TruncatedSeries shift(const TruncatedSeries& x, std::size_t k);
// Substitute q -> q^step into a ring of the given order.
TruncatedSeries inflate(const TruncatedSeries& x, std::size_t step, std::size_t order);
// Keep only degrees below `order` (order <= T).
TruncatedSeries truncate(const TruncatedSeries& x, std::size_t order);
// Coefficients x(m n + t), n = 0..ceil((T - t)/m) - 1. Requires t < min(m, T).
TruncatedSeries extract_ap(const TruncatedSeries& x, std::size_t m, std::size_t t);
// Reduce into Z/M. x must be exact or have a modulus divisible by M.
TruncatedSeries reduce_mod(const TruncatedSeries& x, std::uint64_t m);

// (q^delta; q^delta)_inf^e truncated at ring.order, no q-prefactor.
TruncatedSeries euler_product(std::size_t delta, std::int64_t e, SeriesRing ring);

// True when x and y agree coefficientwise modulo m over min(T_x, T_y) degrees.
bool congruent(const TruncatedSeries& x, const TruncatedSeries& y, std::uint64_t m);

namespace detail {
// Individual algorithms, exposed so tests can cross-check them.
TruncatedSeries mul_schoolbook(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries mul_karatsuba(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries invert_recurrence(const TruncatedSeries& x);
TruncatedSeries invert_newton(const TruncatedSeries& x);
}  // namespace detail

}  // namespace bipart
