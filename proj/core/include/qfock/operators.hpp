#ifndef QFOCK_OPERATORS_HPP
#define QFOCK_OPERATORS_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfock/testfn.hpp"

namespace qfock {

/// Measure-preserving injective cell map: the discrete *-endomorphism
/// T1(chi_I) = chi_{tau(I)}. Sources and targets are each pairwise disjoint
/// and measures match per pair.
struct CellMap {
  std::vector<std::pair<Cell, Cell>> pairs;  // (source, target)

  CellMap() = default;
  explicit CellMap(std::vector<std::pair<Cell, Cell>> p);

  static CellMap identity(const std::vector<Cell>& cells);
  /// Bijective iff the targets cover the same partition as the sources
  /// (equal total measure and every target equals some source region is NOT
  /// required; the working partition is the source list).
  bool surjective_onto_sources() const;
};

struct OperatorSpec;

struct MultOp { StepFunction phi; };                    // f -> phi * f
struct GaugeOp { StepFunction alpha; };                 // f -> e^{i alpha} f, alpha real
struct RearrangeOp {
  CellMap map;
  bool drop_unmapped = false;  // default: support outside sources is an error
};
struct AverageOp { Cell window; };                      // f -> (int_W f) chi_W
struct ScalarExpOp { Complex z; };                      // f -> e^z f
struct ComposeOp { std::vector<OperatorSpec> items; };  // applied right-to-left

struct OperatorSpec {
  std::variant<MultOp, GaugeOp, RearrangeOp, AverageOp, ScalarExpOp, ComposeOp> op;

  static OperatorSpec mult(StepFunction phi);
  static OperatorSpec gauge(StepFunction alpha);
  static OperatorSpec rearrange(CellMap map, bool drop_unmapped = false);
  static OperatorSpec average(Cell window);
  static OperatorSpec scalar_exp(Complex z);
  static OperatorSpec compose(std::vector<OperatorSpec> items);
};

/// One-particle action of T.
StepFunction apply(const OperatorSpec& t, const StepFunction& f);

/// Structural test of the section-3 condition: Gamma_2(T) is well defined on
/// all exponential vectors iff T is a ||.||_inf contraction.
bool is_well_defined_gamma2(const OperatorSpec& t);

struct MomentCheckResult {
  bool ok = true;
  unsigned failing_k = 0;
  std::size_t failing_sample = 0;
  double residual = 0.0;
};

/// Verifies <(Tf)^k, (Tg)^k> == <f^k, g^k> for all k <= K across the samples,
/// tolerance 1e-10. Necessary-and-sufficient proxy for Gamma_2 isometry on
/// spans of the sampled exponential vectors.
MomentCheckResult moment_isometry_check(
    const OperatorSpec& t,
    const std::vector<std::pair<StepFunction, StepFunction>>& samples,
    unsigned K);

/// T restricted to a fixed partition basis: column j is T(chi_{basis[j]}).
struct DiscreteOperator {
  std::vector<Cell> basis;
  std::vector<StepFunction> columns;
};

/// Build the discrete matrix of T on a partition basis.
DiscreteOperator discretize(const OperatorSpec& t, const std::vector<Cell>& basis);

enum class IsometryLemma { C, D, E, FG };

struct NotIsometryWitness {
  IsometryLemma lemma;
  std::vector<std::size_t> cell_indices;
  double residual = 0.0;
};

struct IsometryDecomposition {
  StepFunction alpha;  // real-valued phase function on the union of targets
  CellMap tau;
};

struct DecomposeResult {
  std::optional<IsometryDecomposition> decomposition;
  std::optional<NotIsometryWitness> witness;
  bool ok() const { return decomposition.has_value(); }
};

/// Constructive inverse of the structure theorem in the discrete model:
/// if every column is unimodular on its support, supports are measure-matched
/// with their basis cells and pairwise disjoint, and phases are consistent,
/// returns (alpha, tau) with Gauge(alpha) o Rearrange(tau) reproducing every
/// column; otherwise the first violated lemma as witness.
DecomposeResult decompose_isometry(const DiscreteOperator& t);

struct Classification {
  bool well_defined = false;
  bool isometry = false;
  bool unitary = false;
  bool contraction_sufficient = false;
  bool necessary_ok = false;
  std::vector<std::string> evidence;
};

Classification classify(
    const OperatorSpec& t,
    const std::vector<std::pair<StepFunction, StepFunction>>& samples,
    unsigned K);

}  // namespace qfock

#endif
