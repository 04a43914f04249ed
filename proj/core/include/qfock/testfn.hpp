#ifndef QFOCK_TESTFN_HPP
#define QFOCK_TESTFN_HPP

#include <complex>
#include <vector>

#include "qfock/errors.hpp"

namespace qfock {

using Complex = std::complex<double>;

/// Axis-aligned half-open hyperrectangle [lower, upper) in R^d.
struct Cell {
  std::vector<double> lower;
  std::vector<double> upper;

  Cell() = default;
  Cell(std::vector<double> lo, std::vector<double> hi);
  Cell(double lo, double hi);  // 1-d convenience

  std::size_t dim() const { return lower.size(); }
  double measure() const;
  bool contains(const std::vector<double>& x) const;

  /// Lebesgue measure of the intersection with another cell (0 if disjoint).
  double overlap(const Cell& other) const;

  /// Split into `parts` boxes along axis 0 with the given measure fractions
  /// (fractions must sum to 1 up to rounding).
  std::vector<Cell> split_by_fractions(const std::vector<double>& fractions) const;
};

/// A simple function on R^d: finitely many pairwise disjoint cells, one
/// complex value per cell, identically zero elsewhere. The computational
/// model of the test-function algebra L^2 \cap L^infty.
///
/// Cells with value 0 are kept (they can matter as the domain of a cell
/// rearrangement) but are invisible to norms and integrals.
class StepFunction {
public:
  explicit StepFunction(std::size_t dimension = 1);
  StepFunction(std::size_t dimension, std::vector<Cell> cells,
               std::vector<Complex> values);

  static StepFunction zero(std::size_t dimension = 1) { return StepFunction(dimension); }
  static StepFunction indicator(const Cell& c, Complex value = 1.0);
  /// Constant value on a single 1-d cell [lo, hi).
  static StepFunction constant(double value, double lo = 0.0, double hi = 1.0);

  std::size_t dimension() const { return dim_; }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<Complex>& values() const { return values_; }

  /// Value at a point (0 outside every cell).
  Complex at(const std::vector<double>& x) const;

  double norm_inf() const;
  double norm_p(double p) const;
  double norm2_sq() const;

  StepFunction conj() const;
  StepFunction pow(unsigned k) const;
  StepFunction scaled(Complex factor) const;

  /// Total measure of the cells carrying a nonzero value.
  double support_measure() const;

private:
  std::size_t dim_;
  std::vector<Cell> cells_;
  std::vector<Complex> values_;
};

/// Common refinement of two step functions: a partition on which both are
/// constant, covering the union of their listed cells. present* records
/// whether the refined box lies inside a listed cell of the corresponding
/// input (a listed zero-value cell is "present").
struct Refinement {
  std::size_t dimension = 1;
  std::vector<Cell> cells;
  std::vector<Complex> valuesA;
  std::vector<Complex> valuesB;
  std::vector<bool> presentA;
  std::vector<bool> presentB;
};

Refinement common_refinement(const StepFunction& f, const StepFunction& g);

StepFunction mul(const StepFunction& f, const StepFunction& g);

/// integral of conj(f)^k * g^k, i.e. the quantity <f^k, g^k>.
Complex inner_pow(const StepFunction& f, const StepFunction& g, unsigned k);

inline Complex inner(const StepFunction& f, const StepFunction& g) {
  return inner_pow(f, g, 1);
}

}  // namespace qfock

#endif
