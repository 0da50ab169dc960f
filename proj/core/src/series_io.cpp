#include "bipart/series_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace bipart {

void write_csv(std::ostream& out, const TruncatedSeries& s) {
  for (std::size_t n = 0; n < s.order(); ++n) out << n << ',' << s.coeff(n).get_str() << '\n';
}

TruncatedSeries read_csv(std::istream& in, std::uint64_t modulus) {
  std::vector<Integer> coeffs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("csv line " + std::to_string(lineno) + ": missing comma");
    std::size_t degree = 0;
    try {
      std::size_t used = 0;
      degree = std::stoull(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad degree");
    }
    Integer c;
    if (c.set_str(line.substr(comma + 1), 10) != 0) {
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad coefficient");
    }
    if (degree >= coeffs.size()) coeffs.resize(degree + 1);
    coeffs[degree] = c;
  }
  if (coeffs.empty()) throw std::invalid_argument("csv: no coefficients");
  const SeriesRing ring{coeffs.size(), modulus};
  return TruncatedSeries::from_integers(ring, std::move(coeffs));
}

std::string to_json(const TruncatedSeries& s) {
  nlohmann::json j;
  j["T"] = s.order();
  j["M"] = s.modulus();
  auto arr = nlohmann::json::array();
  for (std::size_t n = 0; n < s.order(); ++n) {
    const Integer c = s.coeff(n);
    if (c.fits_slong_p()) {
      arr.push_back(static_cast<std::int64_t>(c.get_si()));
    } else {
      arr.push_back(c.get_str());
    }
  }
  j["coeffs"] = std::move(arr);
  return j.dump();
}

TruncatedSeries from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("series json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("T") || !j.contains("M") || !j.contains("coeffs")) {
    throw std::invalid_argument("series json: expected keys T, M, coeffs");
  }
  const auto order = j.at("T").get<std::size_t>();
  const auto modulus = j.at("M").get<std::uint64_t>();
  const auto& arr = j.at("coeffs");
  if (!arr.is_array() || arr.size() != order) throw std::invalid_argument("series json: coeffs length must equal T");
  std::vector<Integer> coeffs(order);
  for (std::size_t n = 0; n < order; ++n) {
    const auto& v = arr[n];
    if (v.is_number_integer()) {
      coeffs[n] = v.is_number_unsigned() ? Integer(static_cast<unsigned long>(v.get<std::uint64_t>()))
                                         : Integer(static_cast<long>(v.get<std::int64_t>()));
    } else if (v.is_string()) {
      if (coeffs[n].set_str(v.get<std::string>(), 10) != 0) throw std::invalid_argument("series json: bad coefficient");
    } else {
      throw std::invalid_argument("series json: coefficient must be an integer or decimal string");
    }
  }
  return TruncatedSeries::from_integers(SeriesRing{order, modulus}, std::move(coeffs));
}

}  // namespace bipart
