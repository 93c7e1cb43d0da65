#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qet/verify.hpp"

using namespace qet::verify;

TEST_CASE("recorder semantics") {
  std::vector<CheckResult> sink;
  Recorder r("demo", Options{2.0}, sink);
  CHECK(r.check("a", "below", 1.5, 1.0));
  CHECK_FALSE(r.check("b", "equal is a failure", 2.0, 1.0));
  CHECK_FALSE(r.check("c", "nan", std::nan(""), 1.0));
  CHECK(r.expect("d", "ok", true));
  CHECK_FALSE(r.expect("e", "not ok", false));
  CHECK(r.count("f", "none", 0));
  CHECK_FALSE(r.count("g", "some", 3));
  REQUIRE(sink.size() == 7);
  CHECK(sink[0].tolerance == 2.0);
  CHECK(sink[0].module == "demo");
  CHECK(sink[6].measured == 3.0);
  CHECK(format_check(sink[0]).rfind("PASS", 0) == 0);
  CHECK(format_check(sink[1]).rfind("FAIL", 0) == 0);
}

TEST_CASE("module suites pass at the default scale") {
  for (std::string_view m : module_names()) {
    CAPTURE(m);
    for (const CheckResult& c : run_module(m)) {
      CAPTURE(c.id);
      CHECK(c.passed);
    }
  }
  CHECK_THROWS_AS(run_module("nope"), std::invalid_argument);
}

TEST_CASE("zero tolerance scale fails every check") {
  for (const CheckResult& c : run_module("qmatrix", Options{0.0})) CHECK_FALSE(c.passed);
}

TEST_CASE("criterion numbering") {
  CHECK_THROWS(run_criterion(0));
  CHECK_THROWS(run_criterion(kCriterionCount + 1));
  const CriterionResult r = run_criterion(5);
  CHECK(r.number == 5);
  CHECK(r.passed());
  CHECK_FALSE(r.title.empty());
}
