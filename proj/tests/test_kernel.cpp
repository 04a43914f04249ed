#include <doctest.h>

#include <cmath>

#include "qfock/kernel.hpp"
#include "qfock/nparticle.hpp"
#include "qfock/operators.hpp"
#include "qfock/random.hpp"

using namespace qfock;

TEST_CASE("coupling constant must be positive") {
  CHECK_THROWS_AS(CouplingConstant(0.0), DomainError);
  CHECK_THROWS_AS(CouplingConstant(-1.0), DomainError);
}

TEST_CASE("existence boundary is strict at one half") {
  CHECK(qexp_exists(StepFunction::zero()));
  CHECK(qexp_exists(StepFunction::constant(0.4)));
  CHECK(qexp_exists(StepFunction::constant(0.499999)));
  CHECK_FALSE(qexp_exists(StepFunction::constant(0.5)));
  CHECK_FALSE(qexp_exists(StepFunction::constant(0.7)));
}

TEST_CASE("kernel closed values") {
  CouplingConstant c(1.0);
  StepFunction f = StepFunction::constant(0.4);

  SUBCASE("vacuum against anything is 1") {
    KernelValue kv = kernel(StepFunction::zero(), f, c);
    CHECK(kv.value.real() == doctest::Approx(1.0));
    CHECK(kv.value.imag() == doctest::Approx(0.0));
    CHECK(std::abs(kv.log_value) <= 1e-15);
  }
  SUBCASE("constant 0.4 gives (1-0.64)^{-1/2} = 5/3") {
    KernelValue kv = kernel(f, f, c);
    CHECK(kv.value.real() == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(std::exp(kv.log_value) - kv.value) <= 1e-12 * std::abs(kv.value));
  }
  SUBCASE("half-support cross kernel gives 0.36^{-1/4}") {
    StepFunction half = StepFunction::indicator(Cell(0.0, 0.5), 0.4);
    KernelValue kv = kernel(half, f, c);
    CHECK(kv.value.real() == doctest::Approx(std::pow(0.36, -0.25)).epsilon(1e-14));
  }
  SUBCASE("domain error at the boundary") {
    CHECK_THROWS_AS(kernel(StepFunction::constant(0.5), f, c), DomainError);
    CHECK_THROWS_AS(kernel(f, StepFunction::constant(0.5), c), DomainError);
  }
}

TEST_CASE("kernel hermitian symmetry on random inputs") {
  Rng rng(5);
  CouplingConstant c(1.3);
  for (int trial = 0; trial < 20; ++trial) {
    StepFunction f = random_step_function(rng);
    StepFunction g = random_step_function(rng);
    Complex fg = kernel(f, g, c).value;
    Complex gf = kernel(g, f, c).value;
    CHECK(std::abs(fg - std::conj(gf)) <= 1e-13 * std::abs(fg));
  }
}

TEST_CASE("gauge invariance of the kernel") {
  Rng rng(9);
  CouplingConstant c(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    StepFunction f = random_on_partition(rng, 4);
    StepFunction g = random_on_partition(rng, 4);
    // Same real phase applied to both slots cancels cellwise.
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    std::vector<Complex> phases;
    for (int i = 0; i < 4; ++i) phases.emplace_back(ang(rng), 0.0);
    OperatorSpec gauge = OperatorSpec::gauge(StepFunction(1, unit_partition(4), phases));
    Complex before = kernel(f, g, c).value;
    Complex after = kernel(apply(gauge, f), apply(gauge, g), c).value;
    CHECK(std::abs(before - after) <= 1e-13 * std::abs(before));
  }
}

TEST_CASE("measure additivity: splitting a cell leaves the kernel unchanged") {
  CouplingConstant c(2.0);
  StepFunction whole(1, {Cell(0.0, 2.0)}, {Complex(0.3, 0.1)});
  StepFunction split(1, {Cell(0.0, 1.0), Cell(1.0, 2.0)}, {Complex(0.3, 0.1), Complex(0.3, 0.1)});
  StepFunction g = StepFunction::constant(0.2, 0.0, 2.0);
  Complex a = kernel(whole, g, c).value;
  Complex b = kernel(split, g, c).value;
  CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
}

TEST_CASE("Taylor coefficients of t -> kernel(t f, g) match the n-particle values") {
  // <Psi(tf), Psi(g)> = sum_n t^n I_n(f,g)/(n!)^2 for real t, so the n-th
  // derivative at 0 equals I_n/n!. Checked by Richardson-extrapolated central
  // differences at orders 1..3.
  CouplingConstant c(1.0);
  StepFunction f = StepFunction::constant(0.35);
  StepFunction g(1, {Cell(0.0, 1.0)}, {Complex(0.25, 0.1)});

  auto h = [&](double t) { return kernel(f.scaled(t), g, c).value; };

  auto deriv = [&](unsigned order, double step) -> Complex {
    switch (order) {
      case 1:
        return (h(step) - h(-step)) / (2.0 * step);
      case 2:
        return (h(step) - 2.0 * h(0.0) + h(-step)) / (step * step);
      default:
        return (h(2.0 * step) - 2.0 * h(step) + 2.0 * h(-step) - h(-2.0 * step)) /
               (2.0 * step * step * step);
    }
  };

  for (unsigned n = 1; n <= 3; ++n) {
    const double step = 0.05;
    Complex d1 = deriv(n, step);
    Complex d2 = deriv(n, step / 2.0);
    Complex extrap = (4.0 * d2 - d1) / 3.0;  // central stencils are O(step^2)
    Complex d3 = deriv(n, step / 4.0);
    Complex extrap2 = (4.0 * d3 - d2) / 3.0;
    Complex best = (16.0 * extrap2 - extrap) / 15.0;
    Complex expected = inner_n_recursive(f, g, c, n).value;
    for (unsigned k = 1; k <= n; ++k) expected /= double(k);
    CHECK(std::abs(best - expected) <= 1e-6 * std::abs(expected));
  }
}

TEST_CASE("kernel gram matrices") {
  CouplingConstant c(1.0);

  SUBCASE("single function gives a 1x1 positive matrix") {
    HermitianMatrix g = kernel_gram({StepFunction::constant(0.3)}, c);
    CHECK(g.order() == 1);
    CHECK(g(0, 0).real() > 0.0);
    CHECK(g(0, 0).imag() == doctest::Approx(0.0));
  }
  SUBCASE("the averaging-counterexample pair") {
    StepFunction f1 = StepFunction::indicator(Cell(0.0, 0.5), 0.4);
    StepFunction f2 = StepFunction::constant(0.4);
    HermitianMatrix a = kernel_gram({f1, f2}, c);
    const double q = std::pow(0.36, -0.25);  // 1.29099...
    CHECK(a(0, 0).real() == doctest::Approx(q).epsilon(1e-12));
    CHECK(a(0, 1).real() == doctest::Approx(q).epsilon(1e-12));
    CHECK(a(1, 0).real() == doctest::Approx(q).epsilon(1e-12));
    CHECK(a(1, 1).real() == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("distinct random functions give a positive definite gram") {
    Rng rng(77);
    std::vector<StepFunction> fs;
    for (int i = 0; i < 5; ++i) fs.push_back(random_step_function(rng));
    HermitianMatrix g = kernel_gram(fs, c);
    EigenDecomposition e = eig_hermitian(g);
    CHECK(e.values.front() > 0.0);
  }
}
