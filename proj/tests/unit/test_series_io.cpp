#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "bipart/qseries.hpp"
#include "bipart/series_io.hpp"

using namespace bipart;

TEST_CASE("csv round trip") {
  const auto f = euler_product(1, 3, SeriesRing::exact(40));
  std::stringstream ss;
  write_csv(ss, f);
  CHECK(read_csv(ss) == f);

  const auto g = euler_product(1, 3, SeriesRing::modular(40, 7));
  std::stringstream ss2;
  write_csv(ss2, g);
  CHECK(read_csv(ss2, 7) == g);
}

TEST_CASE("csv reader rejects junk") {
  std::stringstream bad("0,1\nx,2\n");
  CHECK_THROWS_AS(read_csv(bad), std::invalid_argument);
  std::stringstream sparse("0,1\n5,-2\n");
  const auto s = read_csv(sparse);
  CHECK(s.order() == 6);
  CHECK(s.coeff(5) == -2);
  CHECK(s.coeff(3) == 0);
}

TEST_CASE("json round trip, including coefficients beyond int64") {
  const auto f = euler_product(1, -40, SeriesRing::exact(120));
  const std::string text = to_json(f);
  CHECK(from_json(text) == f);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["T"] == 120);
  CHECK(doc["M"] == 0);
  CHECK(doc["coeffs"][0] == 1);
  CHECK(doc["coeffs"][119].is_string());

  const auto g = euler_product(2, 5, SeriesRing::modular(30, 11));
  CHECK(from_json(to_json(g)) == g);
  CHECK_THROWS(from_json("{\"T\": 2}"));
}
