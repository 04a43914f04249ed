#ifndef QFOCK_KERNEL_HPP
#define QFOCK_KERNEL_HPP

#include "qfock/linalg.hpp"
#include "qfock/testfn.hpp"

namespace qfock {

/// Coupling constant c > 0 of the commutation relations.
struct CouplingConstant {
  double c = 1.0;
  CouplingConstant() = default;
  CouplingConstant(double value) : c(value) {
    if (!(c > 0.0)) throw DomainError("CouplingConstant: requires c > 0");
  }
};

/// Whether the quadratic exponential vector of f exists: ||f||_inf < 1/2,
/// strictly, with no tolerance slack.
bool qexp_exists(const StepFunction& f);

struct KernelValue {
  Complex value;
  Complex log_value;  // principal-branch logarithm of value
};

/// Closed-form kernel <Psi(f), Psi(g)> = exp(-(c/2) * sum_cells |cell| * Log(1 - 4 conj(u) v)).
///
/// Principal-branch Log is safe without branch tracking: |4 conj(u) v| < 1 on
/// every cell, so 1 - 4 conj(u) v stays in the open unit disk around 1 and has
/// positive real part. An assertion guards this.
KernelValue kernel(const StepFunction& f, const StepFunction& g,
                   const CouplingConstant& c);

/// Gram matrix of kernel values; entry (i,j) = kernel(fs[i], fs[j], c).
/// Assembled as exp(log) per entry to avoid overflow for large c * measure.
HermitianMatrix kernel_gram(const std::vector<StepFunction>& fs,
                            const CouplingConstant& c);

}  // namespace qfock

#endif
