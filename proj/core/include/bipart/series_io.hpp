#pragma once

// Text forms of a truncated series:
//   CSV  - one "degree,coefficient" line per degree 0..T-1
//   JSON - {"T": T, "M": M, "coeffs": [c0, c1, ...]}
// JSON coefficients that do not fit a signed 64-bit integer are written as
// decimal strings; the reader accepts either form.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "bipart/qseries.hpp"

namespace bipart {

void write_csv(std::ostream& out, const TruncatedSeries& s);
// T is one past the largest degree seen; missing degrees are zero.
// Throws std::invalid_argument on malformed lines.
TruncatedSeries read_csv(std::istream& in, std::uint64_t modulus = 0);

std::string to_json(const TruncatedSeries& s);
TruncatedSeries from_json(const std::string& text);

}  // namespace bipart
