#ifndef QFOCK_FOCKSPAN_HPP
#define QFOCK_FOCKSPAN_HPP

#include <cstdint>
#include <optional>

#include "qfock/kernel.hpp"
#include "qfock/linalg.hpp"
#include "qfock/operators.hpp"

namespace qfock {

/// Finite linear combination sum_i alpha_i Psi(f_i) of quadratic exponential
/// vectors. The vacuum Phi is the span with f = 0.
struct FockSpan {
  std::vector<Complex> coefficients;
  std::vector<StepFunction> functions;
  CouplingConstant c;

  FockSpan(std::vector<Complex> coeffs, std::vector<StepFunction> fns,
           CouplingConstant coupling);

  static FockSpan vacuum(CouplingConstant coupling, std::size_t dimension = 1);
};

double span_norm(const FockSpan& span);

/// Gamma_2(T) on a span: coefficients unchanged, functions mapped by T.
FockSpan gamma2_apply(const OperatorSpec& t, const FockSpan& span);

struct LoewnerReport {
  bool psd_A_minus_B = false;
  double min_eigenvalue = 0.0;
  Complex determinant;
  std::optional<std::vector<Complex>> witness_vector;  // v with v^H (A-B) v < 0
};

/// Reports whether B <= A in the Loewner order via the eigenvalues of A - B.
LoewnerReport loewner_leq(const HermitianMatrix& b, const HermitianMatrix& a,
                          double tol = 1e-10);

struct CounterexampleReport {
  HermitianMatrix A;  // Gram of {lambda chi_[0,1/2), lambda chi_[0,1)}
  HermitianMatrix B;  // Gram of the averaged pair
  LoewnerReport report;
};

/// The two-vector span on which Gamma_2 of the unit-window averaging operator
/// fails to contract, for any lambda in (0, 1/2).
CounterexampleReport counterexample(double lambda, const CouplingConstant& c);

struct WitnessSearchResult {
  std::optional<FockSpan> witness;
  std::uint64_t seed = 0;
  unsigned trials_run = 0;
};

/// Samples seeded random admissible spans and returns the first with
/// ||Gamma_2(T) xi|| > ||xi|| (1 + 1e-10), if any.
WitnessSearchResult contraction_witness_search(const OperatorSpec& t,
                                               const CouplingConstant& c,
                                               unsigned trials,
                                               std::uint64_t rng_seed);

/// Gamma_2(e^{z 1}) = e^{z H0} on a span; requires Re z <= 0.
FockSpan semigroup_apply(Complex z, const FockSpan& span);

/// Verifies the n-particle component scales by e^{itn} under the gauge
/// rotation f -> e^{it} f, i.e. I_n(e^{it} f, f) = e^{-itn} I_n(f, f).
bool h0_eigencheck(const StepFunction& f, const CouplingConstant& c, unsigned n,
                   double t, double tol = 1e-10);

/// Verified Schur-product ordering: given 0 <= A <= B and 0 <= C <= D
/// (checked; PreconditionFailed otherwise), asserts A o C <= B o D.
bool schur_order_check(const HermitianMatrix& a, const HermitianMatrix& b,
                       const HermitianMatrix& cc, const HermitianMatrix& d,
                       double tol = 1e-10);

}  // namespace qfock

#endif
