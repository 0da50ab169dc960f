#include "bipart/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace bipart {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::size_t kKaratsubaBase = 48;

void require_same_ring(const TruncatedSeries& x, const TruncatedSeries& y, const char* op) {
  if (!(x.ring() == y.ring())) throw std::invalid_argument(std::string(op) + ": ring mismatch");
}

Integer reduce(Integer v, std::uint64_t m) {
  if (m != 0) mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
  return v;
}

std::uint64_t to_residue(const Integer& v, std::uint64_t m) {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m));
}

std::vector<std::pair<std::size_t, std::uint64_t>> word_support(std::span<const std::uint64_t> c) {
  std::vector<std::pair<std::size_t, std::uint64_t>> nz;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) nz.emplace_back(i, c[i]);
  }
  return nz;
}

std::vector<std::size_t> big_support(std::span<const Integer> c) {
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) != 0) nz.push_back(i);
  }
  return nz;
}

// Pads with zeros or truncates to the requested order.
TruncatedSeries resized(const TruncatedSeries& x, std::size_t order) {
  const SeriesRing ring = x.ring().with_order(order);
  if (x.word_backed()) {
    std::vector<std::uint64_t> w(order, 0);
    const auto src = x.residues();
    std::copy_n(src.begin(), std::min(order, src.size()), w.begin());
    return TruncatedSeries::from_residues(ring, std::move(w));
  }
  std::vector<Integer> b(order);
  const auto src = x.integers();
  std::copy_n(src.begin(), std::min(order, src.size()), b.begin());
  return TruncatedSeries::from_integers(ring, std::move(b));
}

// Full product of a[0..n) and b[0..n) modulo m into out[0..2n-1).
void karatsuba(const std::uint64_t* a, const std::uint64_t* b, std::size_t n, std::uint64_t* out,
               std::uint64_t m) {
  if (n <= kKaratsubaBase) {
    std::vector<u128> acc(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) acc[i + j] += static_cast<u128>(a[i]) * b[j];
    }
    for (std::size_t k = 0; k + 1 < 2 * n; ++k) out[k] = static_cast<std::uint64_t>(acc[k] % m);
    return;
  }
  const std::size_t h = n / 2;
  const std::size_t hi = n - h;
  std::vector<std::uint64_t> z0(2 * h - 1), z2(2 * hi - 1), z1(2 * hi - 1);
  karatsuba(a, b, h, z0.data(), m);
  karatsuba(a + h, b + h, hi, z2.data(), m);
  std::vector<std::uint64_t> sa(hi), sb(hi);
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = (a[h + i] + (i < h ? a[i] : 0)) % m;
    sb[i] = (b[h + i] + (i < h ? b[i] : 0)) % m;
  }
  karatsuba(sa.data(), sb.data(), hi, z1.data(), m);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = (z1[i] + m - z0[i]) % m;
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = (z1[i] + m - z2[i]) % m;
  std::fill(out, out + 2 * n - 1, 0);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = (out[i + 2 * h] + z2[i]) % m;
  for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] = (out[i + h] + z1[i]) % m;
}

bool prefer_schoolbook(std::size_t sparse_nnz, std::size_t order) {
  if (order <= 2 * kKaratsubaBase) return true;
  const double t = static_cast<double>(order);
  return static_cast<double>(sparse_nnz) * t <= 4.0 * std::pow(t, 1.585);
}

std::size_t max_bits(std::span<const Integer> c) {
  std::size_t bits = 0;
  for (const auto& v : c) {
    if (sgn(v) != 0) bits = std::max<std::size_t>(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
  }
  return bits;
}

i128 to_i128(const Integer& v) {
  // Caller guarantees |v| < 2^63.
  return static_cast<i128>(v.get_si());
}

Integer from_i128(i128 v) {
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

TruncatedSeries divide_recurrence(const TruncatedSeries& num, const TruncatedSeries& den) {
  require_same_ring(num, den, "divide");
  const SeriesRing ring = num.ring();
  const std::size_t order = ring.order;
  if (ring.word_backed()) {
    const std::uint64_t m = ring.modulus;
    const auto d = den.residues();
    std::uint64_t inv0 = 0;
    if (!mod_inverse(d[0], m, inv0)) throw std::domain_error("invert: constant term is not a unit");
    std::vector<std::pair<std::size_t, std::uint64_t>> tail;
    for (std::size_t k = 1; k < order; ++k) {
      if (d[k] != 0) tail.emplace_back(k, m - d[k]);
    }
    const auto nm = num.residues();
    std::vector<std::uint64_t> y(order, 0);
    for (std::size_t n = 0; n < order; ++n) {
      u128 acc = nm[n];
      for (const auto& [k, negv] : tail) {
        if (k > n) break;
        acc += static_cast<u128>(negv) * y[n - k];
      }
      const std::uint64_t r = static_cast<std::uint64_t>(acc % m);
      y[n] = static_cast<std::uint64_t>(static_cast<u128>(r) * inv0 % m);
    }
    return TruncatedSeries::from_residues(ring, std::move(y));
  }
  const auto d = den.integers();
  Integer inv0;
  if (ring.is_exact()) {
    if (d[0] != 1 && d[0] != -1) throw std::domain_error("invert: constant term is not a unit");
    inv0 = d[0];
  } else {
    const Integer zm(static_cast<unsigned long>(ring.modulus));
    if (mpz_invert(inv0.get_mpz_t(), d[0].get_mpz_t(), zm.get_mpz_t()) == 0) {
      throw std::domain_error("invert: constant term is not a unit");
    }
  }
  std::vector<std::size_t> tail;
  for (std::size_t k = 1; k < order; ++k) {
    if (sgn(d[k]) != 0) tail.push_back(k);
  }
  const auto nm = num.integers();
  std::vector<Integer> y(order);
  Integer acc;
  for (std::size_t n = 0; n < order; ++n) {
    acc = nm[n];
    for (std::size_t k : tail) {
      if (k > n) break;
      mpz_submul(acc.get_mpz_t(), d[k].get_mpz_t(), y[n - k].get_mpz_t());
    }
    y[n] = reduce(acc * inv0, ring.modulus);
  }
  return TruncatedSeries::from_integers(ring, std::move(y));
}

TruncatedSeries pentagonal(SeriesRing ring) {
  std::vector<Integer> c(ring.order);
  c[0] = 1;
  for (std::int64_t k = 1;; ++k) {
    const auto g1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
    if (g1 >= ring.order) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[g1] += sign;
    const auto g2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
    if (g2 < ring.order) c[g2] += sign;
  }
  return TruncatedSeries::from_integers(ring, std::move(c));
}

}  // namespace

void SeriesRing::validate() const {
  if (order < 1) throw std::invalid_argument("series ring: truncation order must be >= 1");
  if (modulus == 1) throw std::invalid_argument("series ring: modulus 1 is not allowed");
}

TruncatedSeries::TruncatedSeries(SeriesRing ring) : ring_(ring) {
  ring_.validate();
  if (ring_.word_backed()) {
    words_.assign(ring_.order, 0);
  } else {
    big_.assign(ring_.order, Integer(0));
  }
}

TruncatedSeries TruncatedSeries::one(SeriesRing ring) {
  return monomial(ring, 0, 1);
}

TruncatedSeries TruncatedSeries::monomial(SeriesRing ring, std::size_t degree, const Integer& c) {
  TruncatedSeries s(ring);
  if (degree >= ring.order) return s;
  if (s.word_backed()) {
    s.words_[degree] = to_residue(c, ring.modulus);
  } else {
    s.big_[degree] = reduce(c, ring.modulus);
  }
  return s;
}

TruncatedSeries TruncatedSeries::from_coefficients(SeriesRing ring, std::span<const Integer> coeffs) {
  std::vector<Integer> v(ring.order);
  std::copy_n(coeffs.begin(), std::min(coeffs.size(), ring.order), v.begin());
  return from_integers(ring, std::move(v));
}

TruncatedSeries TruncatedSeries::from_coefficients(SeriesRing ring, std::initializer_list<std::int64_t> coeffs) {
  std::vector<Integer> v(ring.order);
  std::size_t i = 0;
  for (std::int64_t c : coeffs) {
    if (i >= ring.order) break;
    v[i++] = Integer(static_cast<long>(c));
  }
  return from_integers(ring, std::move(v));
}

TruncatedSeries TruncatedSeries::from_residues(SeriesRing ring, std::vector<std::uint64_t> residues) {
  ring.validate();
  if (!ring.word_backed()) throw std::invalid_argument("from_residues: ring is not word backed");
  if (residues.size() != ring.order) throw std::invalid_argument("from_residues: length must equal T");
  for (auto r : residues) {
    if (r >= ring.modulus) throw std::invalid_argument("from_residues: residue out of range");
  }
  TruncatedSeries s(ring.with_order(1));
  s.ring_ = ring;
  s.words_ = std::move(residues);
  return s;
}

TruncatedSeries TruncatedSeries::from_integers(SeriesRing ring, std::vector<Integer> values) {
  ring.validate();
  values.resize(ring.order);
  TruncatedSeries s(ring.with_order(1));
  s.ring_ = ring;
  if (ring.word_backed()) {
    s.words_.resize(ring.order);
    s.big_.clear();
    for (std::size_t i = 0; i < ring.order; ++i) s.words_[i] = to_residue(values[i], ring.modulus);
    return s;
  }
  if (!ring.is_exact()) {
    for (auto& v : values) v = reduce(std::move(v), ring.modulus);
  }
  s.big_ = std::move(values);
  return s;
}

Integer TruncatedSeries::coeff(std::size_t n) const {
  if (n >= ring_.order) {
    throw std::out_of_range("coefficient " + std::to_string(n) + " beyond truncation " + std::to_string(ring_.order));
  }
  if (word_backed()) return Integer(static_cast<unsigned long>(words_[n]));
  return big_[n];
}

std::int64_t TruncatedSeries::coeff_i64(std::size_t n) const {
  const Integer c = coeff(n);
  if (!c.fits_slong_p()) throw std::overflow_error("coefficient does not fit in int64");
  return c.get_si();
}

bool TruncatedSeries::is_zero_at(std::size_t n) const {
  if (n >= ring_.order) throw std::out_of_range("coefficient index beyond truncation");
  return word_backed() ? words_[n] == 0 : sgn(big_[n]) == 0;
}

std::size_t TruncatedSeries::nonzero_count() const {
  if (word_backed()) return static_cast<std::size_t>(std::count_if(words_.begin(), words_.end(), [](auto w) { return w != 0; }));
  return static_cast<std::size_t>(std::count_if(big_.begin(), big_.end(), [](const Integer& v) { return sgn(v) != 0; }));
}

std::size_t TruncatedSeries::valuation() const {
  for (std::size_t n = 0; n < ring_.order; ++n) {
    if (!is_zero_at(n)) return n;
  }
  return ring_.order;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.ring_ == b.ring_ && a.words_ == b.words_ && a.big_ == b.big_;
}

TruncatedSeries add(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "add");
  const SeriesRing ring = x.ring();
  if (ring.word_backed()) {
    std::vector<std::uint64_t> r(ring.order);
    const auto a = x.residues();
    const auto b = y.residues();
    for (std::size_t i = 0; i < ring.order; ++i) r[i] = (a[i] + b[i]) % ring.modulus;
    return TruncatedSeries::from_residues(ring, std::move(r));
  }
  std::vector<Integer> r(ring.order);
  for (std::size_t i = 0; i < ring.order; ++i) r[i] = x.integers()[i] + y.integers()[i];
  return TruncatedSeries::from_integers(ring, std::move(r));
}

TruncatedSeries negate(const TruncatedSeries& x) {
  return scale(x, -1);
}

TruncatedSeries sub(const TruncatedSeries& x, const TruncatedSeries& y) {
  return add(x, negate(y));
}

TruncatedSeries scale(const TruncatedSeries& x, const Integer& c) {
  const SeriesRing ring = x.ring();
  if (ring.word_backed()) {
    const std::uint64_t cr = to_residue(c, ring.modulus);
    std::vector<std::uint64_t> r(ring.order);
    const auto a = x.residues();
    for (std::size_t i = 0; i < ring.order; ++i) r[i] = static_cast<std::uint64_t>(static_cast<u128>(a[i]) * cr % ring.modulus);
    return TruncatedSeries::from_residues(ring, std::move(r));
  }
  std::vector<Integer> r(ring.order);
  for (std::size_t i = 0; i < ring.order; ++i) r[i] = x.integers()[i] * c;
  return TruncatedSeries::from_integers(ring, std::move(r));
}

namespace detail {

TruncatedSeries mul_schoolbook(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "mul");
  const SeriesRing ring = x.ring();
  const std::size_t order = ring.order;
  if (ring.word_backed()) {
    auto sx = word_support(x.residues());
    auto sy = word_support(y.residues());
    const bool x_sparser = sx.size() <= sy.size();
    const auto& sparse = x_sparser ? sx : sy;
    const auto dense = x_sparser ? y.residues() : x.residues();
    std::vector<u128> acc(order, 0);
    for (const auto& [i, v] : sparse) {
      const std::size_t len = order - i;
      u128* out = acc.data() + i;
      for (std::size_t j = 0; j < len; ++j) out[j] += static_cast<u128>(v * dense[j]);
    }
    std::vector<std::uint64_t> r(order);
    for (std::size_t k = 0; k < order; ++k) r[k] = static_cast<std::uint64_t>(acc[k] % ring.modulus);
    return TruncatedSeries::from_residues(ring, std::move(r));
  }

  const auto xs = x.integers();
  const auto ys = y.integers();
  auto sx = big_support(xs);
  auto sy = big_support(ys);
  const bool x_sparser = sx.size() <= sy.size();
  const auto& sparse_idx = x_sparser ? sx : sy;
  const auto& dense_idx = x_sparser ? sy : sx;
  const auto sparse = x_sparser ? xs : ys;
  const auto dense = x_sparser ? ys : xs;

  // Small coefficients: accumulate in 128-bit integers.
  const std::size_t bits_s = max_bits(sparse);
  const std::size_t bits_d = max_bits(dense);
  const std::size_t terms = std::max<std::size_t>(1, sparse_idx.size());
  const auto log_terms = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(terms) + 1)));
  if (bits_s <= 62 && bits_d <= 62 && bits_s + bits_d + log_terms <= 125) {
    std::vector<i128> acc(order, 0);
    std::vector<i128> dv(order, 0);
    for (std::size_t j : dense_idx) dv[j] = to_i128(dense[j]);
    for (std::size_t i : sparse_idx) {
      const i128 v = to_i128(sparse[i]);
      for (std::size_t j : dense_idx) {
        if (i + j >= order) break;
        acc[i + j] += v * dv[j];
      }
    }
    std::vector<Integer> r(order);
    for (std::size_t k = 0; k < order; ++k) r[k] = from_i128(acc[k]);
    return TruncatedSeries::from_integers(ring, std::move(r));
  }

  std::vector<Integer> acc(order);
  for (std::size_t i : sparse_idx) {
    for (std::size_t j : dense_idx) {
      if (i + j >= order) break;
      mpz_addmul(acc[i + j].get_mpz_t(), sparse[i].get_mpz_t(), dense[j].get_mpz_t());
    }
  }
  return TruncatedSeries::from_integers(ring, std::move(acc));
}

TruncatedSeries mul_karatsuba(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "mul");
  const SeriesRing ring = x.ring();
  if (!ring.word_backed()) return mul_schoolbook(x, y);
  const std::size_t n = ring.order;
  std::vector<std::uint64_t> full(2 * n - 1);
  karatsuba(x.residues().data(), y.residues().data(), n, full.data(), ring.modulus);
  full.resize(n);
  return TruncatedSeries::from_residues(ring, std::move(full));
}

TruncatedSeries invert_recurrence(const TruncatedSeries& x) {
  return divide_recurrence(TruncatedSeries::one(x.ring()), x);
}

TruncatedSeries invert_newton(const TruncatedSeries& x) {
  const SeriesRing ring = x.ring();
  TruncatedSeries y = invert_recurrence(resized(x, 1));
  std::size_t prec = 1;
  while (prec < ring.order) {
    const std::size_t next = std::min(2 * prec, ring.order);
    const TruncatedSeries xn = resized(x, next);
    const TruncatedSeries yn = resized(y, next);
    // y <- y + y (1 - x y)
    const TruncatedSeries err = sub(TruncatedSeries::one(xn.ring()), mul(xn, yn));
    y = add(yn, mul(yn, err));
    prec = next;
  }
  return y;
}

}  // namespace detail

TruncatedSeries mul(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "mul");
  if (!x.word_backed()) return detail::mul_schoolbook(x, y);
  const std::size_t nnz = std::min(x.nonzero_count(), y.nonzero_count());
  if (prefer_schoolbook(nnz, x.order())) return detail::mul_schoolbook(x, y);
  return detail::mul_karatsuba(x, y);
}

TruncatedSeries invert(const TruncatedSeries& x) {
  if (prefer_schoolbook(x.nonzero_count(), x.order())) return detail::invert_recurrence(x);
  return detail::invert_newton(x);
}

TruncatedSeries divide(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "divide");
  if (prefer_schoolbook(y.nonzero_count(), y.order())) return divide_recurrence(x, y);
  return mul(x, invert(y));
}

TruncatedSeries pow(const TruncatedSeries& x, std::uint64_t e) {
  TruncatedSeries result = TruncatedSeries::one(x.ring());
  TruncatedSeries base = x;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

TruncatedSeries shift(const TruncatedSeries& x, std::size_t k) {
  const SeriesRing ring = x.ring();
  if (ring.word_backed()) {
    std::vector<std::uint64_t> r(ring.order, 0);
    const auto a = x.residues();
    for (std::size_t i = 0; i + k < ring.order; ++i) r[i + k] = a[i];
    return TruncatedSeries::from_residues(ring, std::move(r));
  }
  std::vector<Integer> r(ring.order);
  const auto a = x.integers();
  for (std::size_t i = 0; i + k < ring.order; ++i) r[i + k] = a[i];
  return TruncatedSeries::from_integers(ring, std::move(r));
}

TruncatedSeries inflate(const TruncatedSeries& x, std::size_t step, std::size_t order) {
  if (step == 0) throw std::invalid_argument("inflate: step must be positive");
  const SeriesRing ring = x.ring().with_order(order);
  ring.validate();
  // Degrees that would need coefficients beyond x's truncation are unknown.
  if ((order + step - 1) / step > x.order()) throw std::invalid_argument("inflate: source series too short");
  if (ring.word_backed()) {
    std::vector<std::uint64_t> r(order, 0);
    const auto a = x.residues();
    for (std::size_t n = 0; n * step < order; ++n) r[n * step] = a[n];
    return TruncatedSeries::from_residues(ring, std::move(r));
  }
  std::vector<Integer> r(order);
  const auto a = x.integers();
  for (std::size_t n = 0; n * step < order; ++n) r[n * step] = a[n];
  return TruncatedSeries::from_integers(ring, std::move(r));
}

TruncatedSeries truncate(const TruncatedSeries& x, std::size_t order) {
  if (order > x.order()) throw std::invalid_argument("truncate: cannot extend a series");
  return resized(x, order);
}

TruncatedSeries extract_ap(const TruncatedSeries& x, std::size_t m, std::size_t t) {
  if (m == 0) throw std::invalid_argument("extract_ap: modulus must be positive");
  if (t >= m) throw std::invalid_argument("extract_ap: residue must be < m");
  if (t >= x.order()) throw std::out_of_range("extract_ap: residue beyond truncation");
  const std::size_t order = (x.order() - t + m - 1) / m;
  const SeriesRing ring = x.ring().with_order(order);
  if (ring.word_backed()) {
    std::vector<std::uint64_t> r(order);
    const auto a = x.residues();
    for (std::size_t n = 0; n < order; ++n) r[n] = a[m * n + t];
    return TruncatedSeries::from_residues(ring, std::move(r));
  }
  std::vector<Integer> r(order);
  const auto a = x.integers();
  for (std::size_t n = 0; n < order; ++n) r[n] = a[m * n + t];
  return TruncatedSeries::from_integers(ring, std::move(r));
}

TruncatedSeries reduce_mod(const TruncatedSeries& x, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("reduce_mod: modulus must be >= 2");
  if (!x.ring().is_exact() && x.modulus() % m != 0) {
    throw std::invalid_argument("reduce_mod: modulus " + std::to_string(m) + " does not divide " +
                                std::to_string(x.modulus()));
  }
  const SeriesRing ring = SeriesRing::modular(x.order(), m);
  if (x.word_backed()) {
    std::vector<std::uint64_t> r(x.residues().begin(), x.residues().end());
    for (auto& v : r) v %= m;
    return TruncatedSeries::from_residues(ring, std::move(r));
  }
  std::vector<Integer> r(x.integers().begin(), x.integers().end());
  return TruncatedSeries::from_integers(ring, std::move(r));
}

TruncatedSeries euler_product(std::size_t delta, std::int64_t e, SeriesRing ring) {
  ring.validate();
  if (delta == 0) throw std::invalid_argument("euler_product: delta must be positive");
  if (e == 0) return TruncatedSeries::one(ring);
  const SeriesRing compressed = ring.with_order((ring.order + delta - 1) / delta);
  TruncatedSeries base = pentagonal(compressed);
  if (e < 0) base = invert(base);
  const auto mag = static_cast<std::uint64_t>(e < 0 ? -e : e);
  TruncatedSeries powered = mag == 1 ? base : pow(base, mag);
  if (delta == 1) return powered;
  return inflate(powered, delta, ring.order);
}

bool congruent(const TruncatedSeries& x, const TruncatedSeries& y, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("congruent: modulus must be positive");
  const std::size_t n = std::min(x.order(), y.order());
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = x.coeff(i) - y.coeff(i);
    if (mpz_fdiv_ui(d.get_mpz_t(), static_cast<unsigned long>(m)) != 0) return false;
  }
  return true;
}

}  // namespace bipart
