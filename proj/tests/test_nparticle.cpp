#include <doctest.h>

#include <cmath>

#include "qfock/nparticle.hpp"
#include "qfock/random.hpp"

using namespace qfock;

TEST_CASE("partition enumeration counts") {
  CHECK(enumerate_partitions(0).size() == 1);  // the empty multiset
  CHECK(enumerate_partitions(0).front().multiplicities.empty());
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(4).size() == 5);
  CHECK(enumerate_partitions(12).size() == 77);
  for (const PartitionMultiset& p : enumerate_partitions(9)) CHECK(p.total() == 9);
}

TEST_CASE("n = 0 and n = 1 closed cases") {
  CouplingConstant c(1.7);
  Rng rng(3);
  StepFunction f = random_step_function(rng);
  StepFunction g = random_step_function(rng);

  CHECK(inner_n_recursive(f, g, c, 0).value == Complex(1.0));
  CHECK(inner_n_partition(f, g, c, 0).value == Complex(1.0));

  Complex expected = 2.0 * c.c * inner(f, g);
  CHECK(std::abs(inner_n_recursive(f, g, c, 1).value - expected) <= 1e-14);
  CHECK(std::abs(inner_n_partition(f, g, c, 1).value - expected) <= 1e-14);
}

TEST_CASE("n = 2 hand-expanded value 0.6144") {
  CouplingConstant c(1.0);
  StepFunction f = StepFunction::constant(0.4);
  // 8 c^2 <f,g>^2 + 16 c <f^2,g^2> = 8(0.16)^2 + 16(0.0256)
  CHECK(inner_n_recursive(f, f, c, 2).value.real() == doctest::Approx(0.6144).epsilon(1e-12));
  CHECK(inner_n_partition(f, f, c, 2).value.real() == doctest::Approx(0.6144).epsilon(1e-12));
}

TEST_CASE("recursion and partition sum agree on random inputs") {
  Rng rng(21);
  CouplingConstant c(0.8);
  for (int trial = 0; trial < 10; ++trial) {
    StepFunction f = random_step_function(rng);
    StepFunction g = random_step_function(rng);
    for (unsigned n = 0; n <= 12; ++n) {
      Complex a = inner_n_recursive(f, g, c, n).value;
      Complex b = inner_n_partition(f, g, c, n).value;
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1e-300, std::max(std::abs(a), std::abs(b))));
    }
  }
}

TEST_CASE("constant-function closed form via rising factorial") {
  for (double u : {0.1, 0.3, 0.45}) {
    for (double cv : {0.5, 1.0, 2.0}) {
      CouplingConstant c(cv);
      StepFunction f = StepFunction::constant(u);
      double expected = 1.0;  // n! 4^n (c/2)_n u^{2n}, built incrementally
      for (unsigned n = 1; n <= 15; ++n) {
        expected *= double(n) * 4.0 * (cv / 2.0 + double(n - 1)) * u * u;
        Complex got = inner_n_recursive(f, f, c, n).value;
        CHECK(std::abs(got - expected) <= 1e-10 * expected);
      }
    }
  }
}

TEST_CASE("positivity and scaling covariance") {
  Rng rng(33);
  CouplingConstant c(1.0);
  StepFunction f = random_step_function(rng);
  StepFunction g = random_step_function(rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Complex l1(u(rng), u(rng)), l2(u(rng), u(rng));
  for (unsigned n = 0; n <= 10; ++n) {
    Complex diag = inner_n_recursive(f, f, c, n).value;
    CHECK(std::abs(diag.imag()) <= 1e-12 * std::max(1.0, std::abs(diag)));
    CHECK(diag.real() >= 0.0);

    Complex base = inner_n_recursive(f, g, c, n).value;
    Complex scaledv = inner_n_recursive(f.scaled(l1), g.scaled(l2), c, n).value;
    Complex factor = std::pow(std::conj(l1) * l2, double(n));
    CHECK(std::abs(scaledv - factor * base) <=
          1e-10 * std::max(1e-300, std::abs(factor * base)));
  }
}

TEST_CASE("ifs_inner is the partition sum") {
  CouplingConstant c(1.0);
  StepFunction f = StepFunction::constant(0.4);
  CHECK(ifs_inner(f, f, c, 5).value == inner_n_partition(f, f, c, 5).value);
}

TEST_CASE("series kernel reconstruction") {
  CouplingConstant c(1.0);

  SUBCASE("vacuum series is exactly 1") {
    SeriesKernel sk = series_kernel(StepFunction::zero(), StepFunction::zero(), c, 10);
    CHECK(sk.value == Complex(1.0));
    CHECK(sk.tail.bound == 0.0);
  }
  SUBCASE("constant 0.4 at N = 40 reproduces 5/3 within the bound") {
    StepFunction f = StepFunction::constant(0.4);
    SeriesKernel sk = series_kernel(f, f, c, 40);
    double err = std::abs(sk.value - Complex(5.0 / 3.0));
    CHECK(err <= sk.tail.bound);
    CHECK(err <= 1e-8 * (5.0 / 3.0));
    CHECK(sk.tail.ratio_at_N < 1.0);
  }
  SUBCASE("near the boundary the ratio approaches 1") {
    StepFunction f = StepFunction::constant(0.499);
    CHECK(series_ratio_limit(f, f) == doctest::Approx(4.0 * 0.499 * 0.499));
    SeriesKernel sk = series_kernel(f, f, c, 60);
    CHECK(sk.tail.ratio_at_N > 0.99);
    CHECK(sk.tail.ratio_at_N < 1.0);
  }
  SUBCASE("outside the radius the series is rejected") {
    StepFunction f = StepFunction::constant(0.5);
    CHECK_THROWS_AS(series_kernel(f, f, c, 10), DomainError);
    CHECK(series_ratio_limit(f, f) >= 1.0);
  }
}

TEST_CASE("norm growth inequality") {
  CHECK(norm_growth_check(StepFunction::zero(), CouplingConstant(1.0), 10));
  CHECK(norm_growth_check(StepFunction::constant(0.4), CouplingConstant(1.0), 20));
  CHECK(norm_growth_check(StepFunction::constant(0.49), CouplingConstant(2.0), 30));
}
