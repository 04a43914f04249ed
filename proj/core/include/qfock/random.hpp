#ifndef QFOCK_RANDOM_HPP
#define QFOCK_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qfock/linalg.hpp"
#include "qfock/operators.hpp"
#include "qfock/testfn.hpp"

namespace qfock {

using Rng = std::mt19937_64;

/// Random 1-d step function: up to max_cells disjoint cells in [0, 4) with
/// complex values of modulus <= max_abs.
inline StepFunction random_step_function(Rng& rng, unsigned max_cells = 10,
                                         double max_abs = 0.45) {
  std::uniform_int_distribution<unsigned> ncells(1, max_cells);
  std::uniform_real_distribution<double> gap(0.01, 0.3);
  std::uniform_real_distribution<double> width(0.05, 0.4);
  std::uniform_real_distribution<double> mod(0.0, max_abs);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);

  unsigned n = ncells(rng);
  std::vector<Cell> cells;
  std::vector<Complex> values;
  double x = 0.0;
  for (unsigned i = 0; i < n; ++i) {
    x += gap(rng);
    double w = width(rng);
    cells.emplace_back(x, x + w);
    x += w;
    values.push_back(std::polar(mod(rng), ang(rng)));
  }
  return StepFunction(1, std::move(cells), std::move(values));
}

/// Unit-cell partition {[0,1), ..., [n-1,n)}.
inline std::vector<Cell> unit_partition(unsigned n) {
  std::vector<Cell> cells;
  for (unsigned i = 0; i < n; ++i) cells.emplace_back(double(i), double(i + 1.0));
  return cells;
}

/// Random Gauge o Rearrange isometry on a unit-cell partition: a random
/// permutation of the cells composed with a random real phase function.
inline OperatorSpec random_gauge_rearrange(Rng& rng, unsigned n_cells = 4) {
  std::vector<Cell> basis = unit_partition(n_cells);
  std::vector<unsigned> perm(n_cells);
  for (unsigned i = 0; i < n_cells; ++i) perm[i] = i;
  for (unsigned i = n_cells; i > 1; --i) {
    std::uniform_int_distribution<unsigned> pick(0, i - 1);
    std::swap(perm[i - 1], perm[pick(rng)]);
  }
  std::vector<std::pair<Cell, Cell>> pairs;
  for (unsigned i = 0; i < n_cells; ++i) pairs.emplace_back(basis[i], basis[perm[i]]);

  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  std::vector<Complex> phases;
  for (unsigned i = 0; i < n_cells; ++i) phases.emplace_back(ang(rng), 0.0);
  StepFunction alpha(1, basis, std::move(phases));
  return OperatorSpec::compose(
      {OperatorSpec::gauge(std::move(alpha)), OperatorSpec::rearrange(CellMap(std::move(pairs)))});
}

/// Random step function supported on the unit-cell partition (constant per
/// cell), suitable as input to a Rearrange on that partition.
inline StepFunction random_on_partition(Rng& rng, unsigned n_cells,
                                        double max_abs = 0.45) {
  std::uniform_real_distribution<double> mod(0.0, max_abs);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  std::vector<Cell> cells = unit_partition(n_cells);
  std::vector<Complex> values;
  for (unsigned i = 0; i < n_cells; ++i) values.push_back(std::polar(mod(rng), ang(rng)));
  return StepFunction(1, std::move(cells), std::move(values));
}

/// Random Hermitian PSD matrix G = M^H M, entries scaled to O(1).
inline HermitianMatrix random_psd(Rng& rng, std::size_t order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> m(order * order);
  for (auto& v : m) v = Complex(u(rng), u(rng));
  std::vector<Complex> g(order * order, Complex(0.0));
  for (std::size_t j = 0; j < order; ++j)
    for (std::size_t i = 0; i < order; ++i) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < order; ++k)
        s += std::conj(m[i * order + k]) * m[j * order + k];
      g[j * order + i] = s / double(order);
    }
  return HermitianMatrix(order, std::move(g));
}

}  // namespace qfock

#endif
