#include <doctest.h>

#include "qfock/json_io.hpp"
#include "qfock/random.hpp"

using namespace qfock;

namespace {

double sup_diff(const StepFunction& a, const StepFunction& b) {
  Refinement r = common_refinement(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < r.cells.size(); ++i)
    m = std::max(m, std::abs(r.valuesA[i] - r.valuesB[i]));
  return m;
}

}  // namespace

TEST_CASE("complex round trip") {
  Complex z(1.25, -0.5);
  CHECK(complex_from_json(to_json(z)) == z);
  // Missing fields default to zero.
  CHECK(complex_from_json(Json::object()) == Complex(0.0));
}

TEST_CASE("step function round trip") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    StepFunction f = random_step_function(rng);
    StepFunction g = step_function_from_json(to_json(f));
    CHECK(g.dimension() == f.dimension());
    CHECK(sup_diff(f, g) == 0.0);
  }
}

TEST_CASE("operator grammar round trip") {
  Rng rng(15);
  std::vector<OperatorSpec> ops;
  ops.push_back(OperatorSpec::mult(random_on_partition(rng, 4)));
  ops.push_back(OperatorSpec::average(Cell(0.0, 1.0)));
  ops.push_back(OperatorSpec::scalar_exp(Complex(-0.3, 0.7)));
  ops.push_back(random_gauge_rearrange(rng));

  StepFunction probe = random_on_partition(rng, 4);
  for (const OperatorSpec& t : ops) {
    OperatorSpec back = operator_from_json(to_json(t));
    CHECK(sup_diff(apply(t, probe), apply(back, probe)) == 0.0);
  }

  CHECK_THROWS_AS(operator_from_json(Json{{"op", "bogus"}}), DomainError);
}

TEST_CASE("hermitian matrix serialization") {
  Rng rng(18);
  HermitianMatrix m = random_psd(rng, 3);
  Json j = to_json(m);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  CHECK(complex_from_json(j[0][1]) == m(0, 1));
  CHECK(complex_from_json(j[1][0]) == m(1, 0));
}

TEST_CASE("span round trip preserves the norm") {
  CouplingConstant c(1.0);
  Rng rng(20);
  FockSpan xi({Complex(0.5, -0.25), Complex(1.0)},
              {random_step_function(rng), random_step_function(rng)}, c);
  FockSpan back = span_from_json(to_json(xi), c);
  CHECK(span_norm(back) == doctest::Approx(span_norm(xi)).epsilon(1e-14));
}

TEST_CASE("canonical digest is stable and key-order independent") {
  Json a{{"x", 1}, {"y", Json::array({1, 2, 3})}};
  Json b{{"y", Json::array({1, 2, 3})}, {"x", 1}};
  CHECK(canonical_digest(a) == canonical_digest(b));
  CHECK(canonical_digest_hex(a).size() == 16);

  Json mutated = a;
  mutated["x"] = 2;
  CHECK(canonical_digest(a) != canonical_digest(mutated));
}
