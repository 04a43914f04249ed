#include <doctest.h>

#include <random>

#include "qfock/random.hpp"
#include "qfock/testfn.hpp"

using namespace qfock;

namespace {

double support_of(const Refinement& r, const std::vector<bool>& present) {
  double m = 0.0;
  for (std::size_t i = 0; i < r.cells.size(); ++i)
    if (present[i]) m += r.cells[i].measure();
  return m;
}

double listed_measure(const StepFunction& f) {
  double m = 0.0;
  for (const Cell& c : f.cells()) m += c.measure();
  return m;
}

}  // namespace

TEST_CASE("cell geometry") {
  Cell c(0.0, 2.0);
  CHECK(c.measure() == doctest::Approx(2.0));
  CHECK(c.contains({1.5}));
  CHECK_FALSE(c.contains({2.0}));  // half-open
  CHECK(c.overlap(Cell(1.0, 3.0)) == doctest::Approx(1.0));
  CHECK(c.overlap(Cell(5.0, 6.0)) == 0.0);

  Cell sq({0.0, 0.0}, {1.0, 1.0});
  CHECK(sq.measure() == doctest::Approx(1.0));
  CHECK(sq.overlap(Cell({0.5, 0.5}, {1.5, 1.5})) == doctest::Approx(0.25));

  CHECK_THROWS_AS(Cell(1.0, 1.0), DomainError);  // empty interior
}

TEST_CASE("step function construction rejects overlapping cells") {
  std::vector<Cell> cells{Cell(0.0, 1.0), Cell(0.5, 1.5)};
  std::vector<Complex> values{0.1, 0.2};
  CHECK_THROWS_AS(StepFunction(1, cells, values), DomainError);
}

TEST_CASE("refinement of identical grids pairs values") {
  StepFunction f = StepFunction::constant(0.3);
  StepFunction g = StepFunction::constant(0.7);
  Refinement r = common_refinement(f, g);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.valuesA[0] == Complex(0.3));
  CHECK(r.valuesB[0] == Complex(0.7));
}

TEST_CASE("refinement of offset intervals gives three cells") {
  StepFunction f = StepFunction::indicator(Cell(0.0, 1.0));
  StepFunction g = StepFunction::indicator(Cell(0.5, 1.5));
  Refinement r = common_refinement(f, g);
  CHECK(r.cells.size() == 3);
  double total = 0.0;
  for (const Cell& c : r.cells) total += c.measure();
  CHECK(total == doctest::Approx(1.5));
}

TEST_CASE("refinement of offset unit squares gives seven rectangles") {
  StepFunction f(2, {Cell({0.0, 0.0}, {1.0, 1.0})}, {Complex(1.0)});
  StepFunction g(2, {Cell({0.5, 0.5}, {1.5, 1.5})}, {Complex(1.0)});
  Refinement r = common_refinement(f, g);
  CHECK(r.cells.size() == 7);
  double total = 0.0;
  for (const Cell& c : r.cells) total += c.measure();
  CHECK(total == doctest::Approx(1.75));
}

TEST_CASE("refinement preserves each input's listed measure") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    StepFunction f = random_step_function(rng);
    StepFunction g = random_step_function(rng);
    Refinement r = common_refinement(f, g);
    CHECK(support_of(r, r.presentA) == doctest::Approx(listed_measure(f)).epsilon(1e-12));
    CHECK(support_of(r, r.presentB) == doctest::Approx(listed_measure(g)).epsilon(1e-12));
  }
}

TEST_CASE("pointwise algebra") {
  Rng rng(7);
  StepFunction f = random_step_function(rng);

  SUBCASE("conj is an involution") {
    StepFunction ff = f.conj().conj();
    REQUIRE(ff.cell_count() == f.cell_count());
    for (std::size_t i = 0; i < f.cell_count(); ++i)
      CHECK(ff.values()[i] == f.values()[i]);
  }
  SUBCASE("pow of a constant") {
    StepFunction p = StepFunction::constant(0.4).pow(3);
    CHECK(p.at({0.5}).real() == doctest::Approx(0.064));
    CHECK(p.at({0.5}).imag() == 0.0);
  }
  SUBCASE("pow(f, 1) == f") {
    StepFunction p = f.pow(1);
    for (std::size_t i = 0; i < f.cell_count(); ++i)
      CHECK(std::abs(p.values()[i] - f.values()[i]) == 0.0);
  }
  SUBCASE("mul of indicators is the intersection indicator") {
    StepFunction prod = mul(StepFunction::indicator(Cell(0.0, 1.0)),
                            StepFunction::indicator(Cell(0.5, 1.5)));
    CHECK(prod.at({0.75}) == Complex(1.0));
    CHECK(prod.at({0.25}) == Complex(0.0));
    CHECK(prod.at({1.25}) == Complex(0.0));
    CHECK(prod.support_measure() == doctest::Approx(0.5));
  }
}

TEST_CASE("inner_pow closed cases") {
  StepFunction f = StepFunction::constant(0.4);
  CHECK(inner_pow(f, f, 1).real() == doctest::Approx(0.16));
  CHECK(inner_pow(f, f, 2).real() == doctest::Approx(0.0256));

  // First slot is conjugated: <i 0.3 chi_[0,2), 0.2 chi_[0,1)> = -0.06i.
  StepFunction a(1, {Cell(0.0, 2.0)}, {Complex(0.0, 0.3)});
  StepFunction b(1, {Cell(0.0, 1.0)}, {Complex(0.2, 0.0)});
  Complex v = inner_pow(a, b, 1);
  CHECK(v.real() == doctest::Approx(0.0));
  CHECK(v.imag() == doctest::Approx(-0.06));
}

TEST_CASE("inner_pow properties on random inputs") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    StepFunction f = random_step_function(rng);
    StepFunction g = random_step_function(rng);
    for (unsigned k = 1; k <= 8; ++k) {
      Complex lhs = inner_pow(f, g, k);
      // Agreement with inner of the pointwise powers.
      Complex rhs = inner_pow(f.pow(k), g.pow(k), 1);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
      // Hermitian symmetry.
      CHECK(std::abs(lhs - std::conj(inner_pow(g, f, k))) <= 1e-14);
      // Cauchy-Schwarz + Hoelder majorant.
      double cap = std::pow(f.norm_inf(), k - 1) * std::pow(g.norm_inf(), k - 1) *
                   f.norm_p(2.0) * g.norm_p(2.0);
      CHECK(std::abs(lhs) <= cap + 1e-12);
    }
  }
}

TEST_CASE("norms") {
  CHECK(StepFunction::zero().norm_inf() == 0.0);
  CHECK(StepFunction::zero().norm_p(2.0) == 0.0);

  StepFunction f(1, {Cell(0.0, 4.0)}, {Complex(0.4)});
  CHECK(f.norm_inf() == doctest::Approx(0.4));
  CHECK(f.norm_p(2.0) == doctest::Approx(0.8));

  StepFunction g(1, {Cell(0.0, 1.0), Cell(2.0, 4.0)}, {Complex(0.3), Complex(-0.4)});
  CHECK(g.norm_inf() == doctest::Approx(0.4));
  CHECK(g.norm_p(2.0) == doctest::Approx(std::sqrt(0.41)));
}

TEST_CASE("zero-value cells are kept but invisible to norms") {
  StepFunction f(1, {Cell(0.0, 1.0), Cell(1.0, 2.0)}, {Complex(0.0), Complex(0.25)});
  CHECK(f.cell_count() == 2);
  CHECK(f.support_measure() == doctest::Approx(1.0));
  CHECK(f.norm_inf() == doctest::Approx(0.25));
  CHECK(f.norm2_sq() == doctest::Approx(0.0625));
}

TEST_CASE("dimension mismatch is rejected") {
  StepFunction f1(1);
  StepFunction f2(2);
  CHECK_THROWS_AS(common_refinement(f1, f2), DimensionMismatch);
  CHECK_THROWS_AS(inner_pow(f1, f2, 1), DimensionMismatch);
}
