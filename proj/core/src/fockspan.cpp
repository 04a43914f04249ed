#include "qfock/fockspan.hpp"

#include <cmath>

#include "qfock/nparticle.hpp"
#include "qfock/random.hpp"

namespace qfock {

FockSpan::FockSpan(std::vector<Complex> coeffs, std::vector<StepFunction> fns,
                   CouplingConstant coupling)
    : coefficients(std::move(coeffs)), functions(std::move(fns)), c(coupling) {
  if (coefficients.empty() || coefficients.size() != functions.size())
    throw DimensionMismatch("FockSpan: need equally many coefficients and functions, >= 1");
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].dimension() != functions.front().dimension())
      throw DimensionMismatch("FockSpan: mixed dimensions");
    if (!qexp_exists(functions[i]))
      throw DomainError("FockSpan: function " + std::to_string(i) +
                        " has ||f||_inf >= 1/2");
  }
}

FockSpan FockSpan::vacuum(CouplingConstant coupling, std::size_t dimension) {
  return FockSpan({Complex(1.0)}, {StepFunction::zero(dimension)}, coupling);
}

double span_norm(const FockSpan& span) {
  HermitianMatrix g = kernel_gram(span.functions, span.c);
  const std::size_t n = span.coefficients.size();
  Complex q = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      q += std::conj(span.coefficients[i]) * g(i, j) * span.coefficients[j];
  return std::sqrt(std::max(0.0, q.real()));
}

FockSpan gamma2_apply(const OperatorSpec& t, const FockSpan& span) {
  if (!is_well_defined_gamma2(t))
    throw DomainError("gamma2_apply: T is not a sup-norm contraction");
  std::vector<StepFunction> mapped;
  mapped.reserve(span.functions.size());
  for (const StepFunction& f : span.functions) mapped.push_back(apply(t, f));
  return FockSpan(span.coefficients, std::move(mapped), span.c);
}

LoewnerReport loewner_leq(const HermitianMatrix& b, const HermitianMatrix& a,
                          double tol) {
  if (a.order() != b.order()) throw DimensionMismatch("loewner_leq: order mismatch");
  HermitianMatrix diff = a - b;
  PsdReport psd = is_psd(diff, tol);
  LoewnerReport rep;
  rep.psd_A_minus_B = psd.psd;
  rep.min_eigenvalue = psd.min_eigenvalue;
  rep.determinant = det(diff);
  if (!psd.psd) rep.witness_vector = psd.witness;
  return rep;
}

CounterexampleReport counterexample(double lambda, const CouplingConstant& c) {
  if (!(lambda > 0.0 && lambda < 0.5))
    throw DomainError("counterexample: requires 0 < lambda < 1/2");
  StepFunction f1 = StepFunction::constant(lambda, 0.0, 0.5);
  StepFunction f2 = StepFunction::constant(lambda, 0.0, 1.0);
  OperatorSpec t = OperatorSpec::average(Cell(0.0, 1.0));
  HermitianMatrix a = kernel_gram({f1, f2}, c);
  HermitianMatrix b = kernel_gram({apply(t, f1), apply(t, f2)}, c);
  LoewnerReport rep = loewner_leq(b, a);
  return CounterexampleReport{std::move(a), std::move(b), std::move(rep)};
}

WitnessSearchResult contraction_witness_search(const OperatorSpec& t,
                                               const CouplingConstant& c,
                                               unsigned trials,
                                               std::uint64_t rng_seed) {
  if (!is_well_defined_gamma2(t))
    throw DomainError("contraction_witness_search: T is not a sup-norm contraction");
  Rng rng(rng_seed);
  std::uniform_int_distribution<unsigned> span_size(2, 4);
  WitnessSearchResult result;
  result.seed = rng_seed;
  for (unsigned trial = 0; trial < trials; ++trial) {
    result.trials_run = trial + 1;
    unsigned l = span_size(rng);
    std::vector<StepFunction> fns, mapped;
    for (unsigned i = 0; i < l; ++i) fns.push_back(random_step_function(rng, 6, 0.45));
    try {
      // Include T of a sample in the tuple: if T has fixed points (e.g. an
      // averaging projection), this plants one, which is where dilation lives
      // (the counterexample's Tf2 = f2 structure).
      fns.push_back(apply(t, fns.front()));
      for (const StepFunction& f : fns) mapped.push_back(apply(t, f));
    } catch (const Error&) {
      continue;  // sample outside T's geometric domain (e.g. unmapped support)
    }
    // Gamma_2(T) dilates some combination of these exponential vectors iff
    // G_before - G_after fails to be PSD; the minimal eigenvector then gives
    // the dilating coefficients directly.
    HermitianMatrix before_gram = kernel_gram(fns, c);
    HermitianMatrix after_gram = kernel_gram(mapped, c);
    PsdReport psd = is_psd(before_gram - after_gram);
    if (psd.psd || !psd.witness) continue;
    FockSpan xi(*psd.witness, fns, c);
    double before = span_norm(xi);
    double after = span_norm(gamma2_apply(t, xi));
    if (after > before * (1.0 + 1e-10)) {
      result.witness = std::move(xi);
      return result;
    }
  }
  return result;
}

FockSpan semigroup_apply(Complex z, const FockSpan& span) {
  if (z.real() > 0.0)
    throw DomainError("semigroup_apply: requires Re z <= 0");
  return gamma2_apply(OperatorSpec::scalar_exp(z), span);
}

bool h0_eigencheck(const StepFunction& f, const CouplingConstant& c, unsigned n,
                   double t, double tol) {
  if (!qexp_exists(f)) throw DomainError("h0_eigencheck: requires ||f||_inf < 1/2");
  StepFunction rotated = apply(OperatorSpec::scalar_exp(Complex(0.0, t)), f);
  Complex lhs = inner_n_recursive(rotated, f, c, n).value;
  Complex base = inner_n_recursive(f, f, c, n).value;
  Complex rhs = std::exp(Complex(0.0, -t * double(n))) * base;
  return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs));
}

bool schur_order_check(const HermitianMatrix& a, const HermitianMatrix& b,
                       const HermitianMatrix& cc, const HermitianMatrix& d,
                       double tol) {
  if (!is_psd(a, tol).psd) throw PreconditionFailed("schur_order_check: A is not PSD");
  if (!is_psd(b - a, tol).psd)
    throw PreconditionFailed("schur_order_check: A <= B fails");
  if (!is_psd(cc, tol).psd) throw PreconditionFailed("schur_order_check: C is not PSD");
  if (!is_psd(d - cc, tol).psd)
    throw PreconditionFailed("schur_order_check: C <= D fails");
  return is_psd(hadamard(b, d) - hadamard(a, cc), tol).psd;
}

}  // namespace qfock
