#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qet/closedform.hpp"
#include "qet/sweep.hpp"

using namespace qet;
using namespace qet::sweep;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.t_steps = 4;
  c.b_steps = 3;
  c.quantities = {Quantity::kExtract, Quantity::kConcurrence, Quantity::kDiscord};
  return c;
}

std::string flag_of(const SweepConfig& c) {
  try {
    c.validate();
  } catch (const ConfigError& e) {
    return e.flag();
  }
  return {};
}

}  // namespace

TEST_CASE("quantity names round trip") {
  for (std::string_view name : quantity_names()) {
    const auto q = parse_quantity(name);
    REQUIRE(q.has_value());
    CHECK(to_string(*q) == name);
  }
  CHECK_FALSE(parse_quantity("entropy").has_value());
  CHECK(quantity_names().size() == 6);
}

TEST_CASE("grid endpoints") {
  const SweepConfig c = small_config();
  CHECK(c.t_at(0) == c.t_min);
  CHECK(c.t_at(c.t_steps - 1) == c.t_max);
  CHECK(c.b_at(0) == c.b_min);
  CHECK(c.b_at(c.b_steps - 1) == c.b_max);
}

TEST_CASE("config validation names the flag") {
  SweepConfig c = small_config();
  CHECK(flag_of(c).empty());
  c.t_steps = 1;
  CHECK(flag_of(c) == "--t-steps");
  c = small_config();
  c.b_steps = kMaxSteps + 1;
  CHECK(flag_of(c) == "--b-steps");
  c = small_config();
  c.t_min = 0.0;
  CHECK(flag_of(c) == "--t-min");
  c = small_config();
  c.t_max = c.t_min;
  CHECK(flag_of(c) == "--t-max");
  c = small_config();
  c.b_min = -1.0;
  CHECK(flag_of(c) == "--b-min");
  c = small_config();
  c.alpha = std::numeric_limits<double>::quiet_NaN();
  CHECK(flag_of(c) == "--alpha");
  c = small_config();
  c.quantities.clear();
  CHECK(flag_of(c) == "--quantity");
}

TEST_CASE("rows are T-major and independent of the thread count") {
  const SweepConfig c = small_config();
  const auto one = run(c, 1);
  const auto three = run(c, 3);
  REQUIRE(one.size() == 12);
  REQUIRE(three.size() == 12);
  for (std::size_t k = 0; k < one.size(); ++k) {
    CHECK(one[k].t == c.t_at(static_cast<int>(k / 3)));
    CHECK(one[k].b == c.b_at(static_cast<int>(k % 3)));
    CHECK(one[k].values == three[k].values);
  }
  const ModelParams p{.b = one[5].b, .alpha = c.alpha, .temperature = one[5].t};
  CHECK(one[5].values[0] == doctest::Approx(-closedform::evaluate(p).delta_tel_min));
  CHECK(one[5].values[1] == doctest::Approx(closedform::concurrence(p)));
}

TEST_CASE("csv layout") {
  SweepConfig c = small_config();
  c.quantities = {Quantity::kNegativity, Quantity::kThetaOpt};
  std::ostringstream out;
  write_csv(out, c, run(c, 1));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "T,B,alpha,negativity,theta_opt");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows == 12);
}

TEST_CASE("value formatting") {
  CHECK(format_value(-0.0) == "0");
  CHECK(format_value(0.1) == "0.10000000000000001");
  CHECK(format_value(1.2) == "1.2");
  for (double v : {1.0 / 3.0, -2.5e-300, 6.02e23, 0.0590169943749474}) {
    const std::string s = format_value(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("unwritable output") {
  SweepConfig c = small_config();
  c.output_path = "/nonexistent-dir/out.csv";
  CHECK_THROWS_AS(write_csv_file(c, run(c, 1)), ConfigError);
}
