#include "qfock/kernel.hpp"

#include <cassert>
#include <cmath>

namespace qfock {

bool qexp_exists(const StepFunction& f) { return f.norm_inf() < 0.5; }

KernelValue kernel(const StepFunction& f, const StepFunction& g,
                   const CouplingConstant& c) {
  if (f.dimension() != g.dimension())
    throw DimensionMismatch("kernel: dimension mismatch");
  if (!qexp_exists(f) || !qexp_exists(g))
    throw DomainError("kernel: quadratic exponential vector requires ||f||_inf < 1/2");

  Refinement r = common_refinement(f, g);
  Complex log_sum = 0.0;
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    if (!r.presentA[i] || !r.presentB[i]) continue;
    Complex z = 1.0 - 4.0 * std::conj(r.valuesA[i]) * r.valuesB[i];
    assert(z.real() > 0.0);
    log_sum += r.cells[i].measure() * std::log(z);
  }
  KernelValue out;
  out.log_value = -0.5 * c.c * log_sum;
  out.value = std::exp(out.log_value);
  return out;
}

HermitianMatrix kernel_gram(const std::vector<StepFunction>& fs,
                            const CouplingConstant& c) {
  if (fs.empty()) throw DomainError("kernel_gram: empty function list");
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (!qexp_exists(fs[i]))
      throw DomainError("kernel_gram: function " + std::to_string(i) +
                        " has ||f||_inf >= 1/2");
  HermitianMatrix g(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j)
    for (std::size_t i = 0; i <= j; ++i)
      g.set(i, j, kernel(fs[i], fs[j], c).value);
  return g;
}

}  // namespace qfock
