#include "qfock/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qfock {

namespace {

void sorted_unique(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return a == b; }),
           xs.end());
}

}  // namespace

Cell::Cell(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.empty())
    throw DimensionMismatch("Cell: lower/upper length mismatch");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] < upper[i]))
      throw DomainError("Cell: requires lower[i] < upper[i]");
}

Cell::Cell(double lo, double hi) : Cell(std::vector<double>{lo}, std::vector<double>{hi}) {}

double Cell::measure() const {
  double m = 1.0;
  for (std::size_t i = 0; i < lower.size(); ++i) m *= upper[i] - lower[i];
  return m;
}

bool Cell::contains(const std::vector<double>& x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (x[i] < lower[i] || x[i] >= upper[i]) return false;
  return true;
}

double Cell::overlap(const Cell& other) const {
  if (other.dim() != dim()) throw DimensionMismatch("Cell::overlap: dimension mismatch");
  double m = 1.0;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    double lo = std::max(lower[i], other.lower[i]);
    double hi = std::min(upper[i], other.upper[i]);
    if (lo >= hi) return 0.0;
    m *= hi - lo;
  }
  return m;
}

std::vector<Cell> Cell::split_by_fractions(const std::vector<double>& fractions) const {
  std::vector<Cell> out;
  double x = lower[0];
  const double width = upper[0] - lower[0];
  double acc = 0.0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    acc += fractions[i];
    double next = (i + 1 == fractions.size()) ? upper[0] : lower[0] + acc * width;
    if (next <= x) throw DomainError("Cell::split_by_fractions: empty piece");
    Cell piece = *this;
    piece.lower[0] = x;
    piece.upper[0] = next;
    out.push_back(std::move(piece));
    x = next;
  }
  return out;
}

StepFunction::StepFunction(std::size_t dimension) : dim_(dimension) {
  if (dimension == 0) throw DomainError("StepFunction: dimension must be positive");
}

StepFunction::StepFunction(std::size_t dimension, std::vector<Cell> cells,
                           std::vector<Complex> values)
    : dim_(dimension), cells_(std::move(cells)), values_(std::move(values)) {
  if (dimension == 0) throw DomainError("StepFunction: dimension must be positive");
  if (cells_.size() != values_.size())
    throw DomainError("StepFunction: cells/values length mismatch");
  for (const Cell& c : cells_)
    if (c.dim() != dim_)
      throw DimensionMismatch("StepFunction: cell dimension mismatch");
  // Overlapping input cells are a construction error, not silently merged.
  for (std::size_t i = 0; i < cells_.size(); ++i)
    for (std::size_t j = i + 1; j < cells_.size(); ++j)
      if (cells_[i].overlap(cells_[j]) > 0.0)
        throw DomainError("StepFunction: cells must be pairwise disjoint");
}

StepFunction StepFunction::indicator(const Cell& c, Complex value) {
  return StepFunction(c.dim(), {c}, {value});
}

StepFunction StepFunction::constant(double value, double lo, double hi) {
  return indicator(Cell(lo, hi), value);
}

Complex StepFunction::at(const std::vector<double>& x) const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].contains(x)) return values_[i];
  return 0.0;
}

double StepFunction::norm_inf() const {
  double m = 0.0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double StepFunction::norm_p(double p) const {
  if (p < 1.0) throw DomainError("norm_p: requires p >= 1");
  double s = 0.0;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    s += cells_[i].measure() * std::pow(std::abs(values_[i]), p);
  return std::pow(s, 1.0 / p);
}

double StepFunction::norm2_sq() const {
  double s = 0.0;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    s += cells_[i].measure() * std::norm(values_[i]);
  return s;
}

StepFunction StepFunction::conj() const {
  std::vector<Complex> vs(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) vs[i] = std::conj(values_[i]);
  return StepFunction(dim_, cells_, std::move(vs));
}

StepFunction StepFunction::pow(unsigned k) const {
  if (k == 0) throw DomainError("StepFunction::pow: requires k >= 1");
  std::vector<Complex> vs(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    Complex p = 1.0;
    for (unsigned j = 0; j < k; ++j) p *= values_[i];
    vs[i] = p;
  }
  return StepFunction(dim_, cells_, std::move(vs));
}

StepFunction StepFunction::scaled(Complex factor) const {
  std::vector<Complex> vs(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) vs[i] = factor * values_[i];
  return StepFunction(dim_, cells_, std::move(vs));
}

double StepFunction::support_measure() const {
  double m = 0.0;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (values_[i] != Complex(0.0)) m += cells_[i].measure();
  return m;
}

Refinement common_refinement(const StepFunction& f, const StepFunction& g) {
  if (f.dimension() != g.dimension())
    throw DimensionMismatch("common_refinement: dimension mismatch");
  const std::size_t d = f.dimension();

  // Per-axis breakpoints from every listed cell of both inputs.
  std::vector<std::vector<double>> breaks(d);
  for (const StepFunction* fn : {&f, &g})
    for (const Cell& c : fn->cells())
      for (std::size_t i = 0; i < d; ++i) {
        breaks[i].push_back(c.lower[i]);
        breaks[i].push_back(c.upper[i]);
      }
  for (auto& b : breaks) sorted_unique(b);

  Refinement out;
  out.dimension = d;
  if (f.cells().empty() && g.cells().empty()) return out;

  // Odometer over grid boxes; keep boxes inside some listed cell.
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> center(d);
  for (;;) {
    bool valid = true;
    for (std::size_t i = 0; i < d; ++i)
      if (idx[i] + 1 >= breaks[i].size()) { valid = false; break; }
    if (valid) {
      Cell box;
      box.lower.resize(d);
      box.upper.resize(d);
      for (std::size_t i = 0; i < d; ++i) {
        box.lower[i] = breaks[i][idx[i]];
        box.upper[i] = breaks[i][idx[i] + 1];
        center[i] = 0.5 * (box.lower[i] + box.upper[i]);
      }
      bool inA = false, inB = false;
      Complex va = 0.0, vb = 0.0;
      for (std::size_t i = 0; i < f.cells().size(); ++i)
        if (f.cells()[i].contains(center)) { inA = true; va = f.values()[i]; break; }
      for (std::size_t i = 0; i < g.cells().size(); ++i)
        if (g.cells()[i].contains(center)) { inB = true; vb = g.values()[i]; break; }
      if (inA || inB) {
        out.cells.push_back(std::move(box));
        out.valuesA.push_back(va);
        out.valuesB.push_back(vb);
        out.presentA.push_back(inA);
        out.presentB.push_back(inB);
      }
    }
    // advance odometer
    std::size_t axis = 0;
    for (;;) {
      if (axis == d) return out;
      if (++idx[axis] + 1 < std::max<std::size_t>(breaks[axis].size(), 1)) break;
      idx[axis] = 0;
      ++axis;
    }
  }
}

StepFunction mul(const StepFunction& f, const StepFunction& g) {
  Refinement r = common_refinement(f, g);
  std::vector<Cell> cells;
  std::vector<Complex> values;
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    if (r.presentA[i] && r.presentB[i]) {
      cells.push_back(r.cells[i]);
      values.push_back(r.valuesA[i] * r.valuesB[i]);
    }
  }
  return StepFunction(f.dimension(), std::move(cells), std::move(values));
}

Complex inner_pow(const StepFunction& f, const StepFunction& g, unsigned k) {
  if (k == 0) throw DomainError("inner_pow: requires k >= 1");
  Refinement r = common_refinement(f, g);
  Complex s = 0.0;
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    if (!r.presentA[i] || !r.presentB[i]) continue;
    Complex term = std::conj(r.valuesA[i]) * r.valuesB[i];
    Complex p = 1.0;
    for (unsigned j = 0; j < k; ++j) p *= term;
    s += r.cells[i].measure() * p;
  }
  return s;
}

}  // namespace qfock
