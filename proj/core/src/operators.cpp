#include "qfock/operators.hpp"

#include <algorithm>
#include <cmath>

namespace qfock {

namespace {

constexpr double kUnimodularTol = 1e-10;
constexpr double kMeasureTol = 1e-12;

double total_source_measure(const CellMap& m) {
  double s = 0.0;
  for (const auto& [src, dst] : m.pairs) s += src.measure();
  return s;
}

}  // namespace

CellMap::CellMap(std::vector<std::pair<Cell, Cell>> p) : pairs(std::move(p)) {
  for (const auto& [src, dst] : pairs) {
    if (src.dim() != dst.dim())
      throw DimensionMismatch("CellMap: source/target dimension mismatch");
    double ms = src.measure(), mt = dst.measure();
    if (std::abs(ms - mt) > kMeasureTol * std::max(1.0, ms))
      throw DomainError("CellMap: pair is not measure-preserving");
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (pairs[i].first.overlap(pairs[j].first) > 0.0)
        throw DomainError("CellMap: sources must be pairwise disjoint");
      if (pairs[i].second.overlap(pairs[j].second) > 0.0)
        throw DomainError("CellMap: targets must be pairwise disjoint");
    }
}

CellMap CellMap::identity(const std::vector<Cell>& cells) {
  std::vector<std::pair<Cell, Cell>> p;
  p.reserve(cells.size());
  for (const Cell& c : cells) p.emplace_back(c, c);
  return CellMap(std::move(p));
}

bool CellMap::surjective_onto_sources() const {
  double total = total_source_measure(*this);
  double covered = 0.0;
  for (const auto& [src1, dst] : pairs)
    for (const auto& [src2, dst2] : pairs) {
      (void)dst2;
      covered += dst.overlap(src2);
      (void)src1;
    }
  return std::abs(covered - total) <= kMeasureTol * std::max(1.0, total);
}

OperatorSpec OperatorSpec::mult(StepFunction phi) { return {MultOp{std::move(phi)}}; }

OperatorSpec OperatorSpec::gauge(StepFunction alpha) {
  for (const Complex& v : alpha.values())
    if (v.imag() != 0.0)
      throw DomainError("Gauge: alpha must be real-valued");
  return {GaugeOp{std::move(alpha)}};
}

OperatorSpec OperatorSpec::rearrange(CellMap map, bool drop_unmapped) {
  return {RearrangeOp{std::move(map), drop_unmapped}};
}

OperatorSpec OperatorSpec::average(Cell window) {
  if (!(window.measure() > 0.0)) throw DomainError("Average: window must have positive measure");
  return {AverageOp{std::move(window)}};
}

OperatorSpec OperatorSpec::scalar_exp(Complex z) { return {ScalarExpOp{z}}; }

OperatorSpec OperatorSpec::compose(std::vector<OperatorSpec> items) {
  return {ComposeOp{std::move(items)}};
}

namespace {

StepFunction apply_gauge(const StepFunction& alpha, const StepFunction& f) {
  Refinement r = common_refinement(alpha, f);
  std::vector<Cell> cells;
  std::vector<Complex> values;
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    if (!r.presentB[i]) continue;  // outside f: stays zero
    double a = r.presentA[i] ? r.valuesA[i].real() : 0.0;
    cells.push_back(r.cells[i]);
    values.push_back(r.valuesB[i] * std::exp(Complex(0.0, a)));
  }
  return StepFunction(f.dimension(), std::move(cells), std::move(values));
}

StepFunction apply_rearrange(const RearrangeOp& op, const StepFunction& f) {
  // Support outside the sources is unmapped.
  for (std::size_t i = 0; i < f.cells().size(); ++i) {
    if (f.values()[i] == Complex(0.0)) continue;
    double covered = 0.0;
    for (const auto& [src, dst] : op.map.pairs) covered += f.cells()[i].overlap(src);
    double m = f.cells()[i].measure();
    if (covered < m * (1.0 - kMeasureTol) && !op.drop_unmapped)
      throw UnmappedSupport("Rearrange: support of f extends outside the source cells");
  }

  std::vector<Cell> cells;
  std::vector<Complex> values;
  for (const auto& [src, dst] : op.map.pairs) {
    Refinement r = common_refinement(f, StepFunction::indicator(src));
    bool any_present = false;
    bool have_value = false;
    Complex v = 0.0;
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      if (!r.presentB[i]) continue;  // box outside src
      Complex box_value = r.presentA[i] ? r.valuesA[i] : Complex(0.0);
      any_present = any_present || r.presentA[i];
      if (!have_value) {
        v = box_value;
        have_value = true;
      } else if (box_value != v) {
        throw DomainError("Rearrange: f is not constant on a source cell; refine first");
      }
    }
    if (any_present) {
      cells.push_back(dst);
      values.push_back(v);
    }
  }
  return StepFunction(f.dimension(), std::move(cells), std::move(values));
}

StepFunction apply_average(const AverageOp& op, const StepFunction& f) {
  if (op.window.dim() != f.dimension())
    throw DimensionMismatch("Average: window dimension mismatch");
  Complex integral = 0.0;
  Refinement r = common_refinement(f, StepFunction::indicator(op.window));
  for (std::size_t i = 0; i < r.cells.size(); ++i)
    if (r.presentA[i] && r.presentB[i])
      integral += r.cells[i].measure() * r.valuesA[i];
  return StepFunction::indicator(op.window, integral);
}

}  // namespace

StepFunction apply(const OperatorSpec& t, const StepFunction& f) {
  return std::visit(
      [&](const auto& op) -> StepFunction {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, MultOp>) {
          return mul(op.phi, f);
        } else if constexpr (std::is_same_v<T, GaugeOp>) {
          return apply_gauge(op.alpha, f);
        } else if constexpr (std::is_same_v<T, RearrangeOp>) {
          return apply_rearrange(op, f);
        } else if constexpr (std::is_same_v<T, AverageOp>) {
          return apply_average(op, f);
        } else if constexpr (std::is_same_v<T, ScalarExpOp>) {
          return f.scaled(std::exp(op.z));
        } else {
          StepFunction g = f;
          for (auto it = op.items.rbegin(); it != op.items.rend(); ++it)
            g = apply(*it, g);
          return g;
        }
      },
      t.op);
}

bool is_well_defined_gamma2(const OperatorSpec& t) {
  return std::visit(
      [&](const auto& op) -> bool {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, MultOp>) {
          return op.phi.norm_inf() <= 1.0;
        } else if constexpr (std::is_same_v<T, GaugeOp>) {
          return true;
        } else if constexpr (std::is_same_v<T, RearrangeOp>) {
          return true;
        } else if constexpr (std::is_same_v<T, AverageOp>) {
          // |(Tf)(x)| = |int_W f| <= ||f||_inf |W|: sup-norm contraction iff |W| <= 1.
          return op.window.measure() <= 1.0 + kMeasureTol;
        } else if constexpr (std::is_same_v<T, ScalarExpOp>) {
          return op.z.real() <= 0.0;
        } else {
          return std::all_of(op.items.begin(), op.items.end(), is_well_defined_gamma2);
        }
      },
      t.op);
}

MomentCheckResult moment_isometry_check(
    const OperatorSpec& t,
    const std::vector<std::pair<StepFunction, StepFunction>>& samples,
    unsigned K) {
  if (K < 1) throw DomainError("moment_isometry_check: requires K >= 1");
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& [f, g] = samples[s];
    StepFunction tf = apply(t, f);
    StepFunction tg = apply(t, g);
    for (unsigned k = 1; k <= K; ++k) {
      Complex lhs = inner_pow(tf, tg, k);
      Complex rhs = inner_pow(f, g, k);
      double resid = std::abs(lhs - rhs);
      if (resid > 1e-10 * std::max(1.0, std::abs(rhs)))
        return MomentCheckResult{false, k, s, resid};
    }
  }
  return MomentCheckResult{};
}

DiscreteOperator discretize(const OperatorSpec& t, const std::vector<Cell>& basis) {
  DiscreteOperator d;
  d.basis = basis;
  d.columns.reserve(basis.size());
  for (const Cell& c : basis) d.columns.push_back(apply(t, StepFunction::indicator(c)));
  return d;
}

DecomposeResult decompose_isometry(const DiscreteOperator& t) {
  if (t.basis.size() != t.columns.size())
    throw DimensionMismatch("decompose_isometry: basis/columns size mismatch");

  struct Support {
    std::vector<Cell> cells;
    std::vector<Complex> values;  // unimodular
    double measure = 0.0;
  };
  std::vector<Support> supports(t.columns.size());

  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    const StepFunction& col = t.columns[j];
    for (std::size_t i = 0; i < col.cells().size(); ++i) {
      double mag = std::abs(col.values()[i]);
      if (mag <= kUnimodularTol) continue;  // zero cell
      if (std::abs(mag - 1.0) > kUnimodularTol)
        return {std::nullopt,
                NotIsometryWitness{IsometryLemma::C, {j}, std::abs(mag - 1.0)}};
      supports[j].cells.push_back(col.cells()[i]);
      supports[j].values.push_back(col.values()[i]);
      supports[j].measure += col.cells()[i].measure();
    }
    double mb = t.basis[j].measure();
    double resid = std::abs(supports[j].measure - mb);
    if (resid > kMeasureTol * std::max(1.0, mb))
      return {std::nullopt, NotIsometryWitness{IsometryLemma::D, {j}, resid}};
  }

  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = i + 1; j < supports.size(); ++j) {
      double ov = 0.0;
      for (const Cell& a : supports[i].cells)
        for (const Cell& b : supports[j].cells) ov += a.overlap(b);
      if (ov > kMeasureTol)
        return {std::nullopt, NotIsometryWitness{IsometryLemma::E, {i, j}, ov}};
    }

  // Assemble the global phase; a region receiving two distinct phases would
  // violate the union-consistency lemmas.
  std::vector<Cell> alpha_cells;
  std::vector<Complex> alpha_values;
  std::vector<std::pair<Cell, Cell>> pairs;
  for (std::size_t j = 0; j < supports.size(); ++j) {
    const Support& sup = supports[j];
    if (sup.cells.empty()) continue;
    std::vector<double> fractions(sup.cells.size());
    for (std::size_t i = 0; i < sup.cells.size(); ++i)
      fractions[i] = sup.cells[i].measure() / sup.measure;
    std::vector<Cell> pieces = t.basis[j].split_by_fractions(fractions);
    for (std::size_t i = 0; i < sup.cells.size(); ++i) {
      pairs.emplace_back(pieces[i], sup.cells[i]);
      double phase = std::arg(sup.values[i]);
      for (std::size_t a = 0; a < alpha_cells.size(); ++a)
        if (alpha_cells[a].overlap(sup.cells[i]) > kMeasureTol &&
            std::abs(alpha_values[a].real() - phase) > kUnimodularTol)
          return {std::nullopt,
                  NotIsometryWitness{IsometryLemma::FG, {j, a},
                                     std::abs(alpha_values[a].real() - phase)}};
      alpha_cells.push_back(sup.cells[i]);
      alpha_values.push_back(phase);
    }
  }

  std::size_t d = t.basis.empty() ? 1 : t.basis.front().dim();
  IsometryDecomposition dec{
      StepFunction(d, std::move(alpha_cells), std::move(alpha_values)),
      CellMap(std::move(pairs))};
  return {std::move(dec), std::nullopt};
}

namespace {

bool structural_unitary(const OperatorSpec& t) {
  return std::visit(
      [&](const auto& op) -> bool {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, GaugeOp>) {
          return true;
        } else if constexpr (std::is_same_v<T, RearrangeOp>) {
          return op.map.surjective_onto_sources();
        } else if constexpr (std::is_same_v<T, ScalarExpOp>) {
          return std::abs(std::abs(std::exp(op.z)) - 1.0) <= kMeasureTol;
        } else if constexpr (std::is_same_v<T, ComposeOp>) {
          return std::all_of(op.items.begin(), op.items.end(), structural_unitary);
        } else {
          return false;
        }
      },
      t.op);
}

/// Structural match against the M_phi T_1 contraction form.
bool structural_contraction(const OperatorSpec& t) {
  return std::visit(
      [&](const auto& op) -> bool {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, MultOp>) {
          return op.phi.norm_inf() <= 1.0;
        } else if constexpr (std::is_same_v<T, GaugeOp>) {
          return true;
        } else if constexpr (std::is_same_v<T, RearrangeOp>) {
          return true;
        } else if constexpr (std::is_same_v<T, ScalarExpOp>) {
          return op.z.real() <= 0.0;
        } else if constexpr (std::is_same_v<T, ComposeOp>) {
          return std::all_of(op.items.begin(), op.items.end(), structural_contraction);
        } else {
          return false;  // Average is not of the M_phi T_1 form
        }
      },
      t.op);
}

/// L^2 and L^infty contractivity, the necessary condition.
bool l2_linf_contraction(const OperatorSpec& t) {
  return std::visit(
      [&](const auto& op) -> bool {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, MultOp>) {
          return op.phi.norm_inf() <= 1.0;
        } else if constexpr (std::is_same_v<T, GaugeOp>) {
          return true;
        } else if constexpr (std::is_same_v<T, RearrangeOp>) {
          return true;
        } else if constexpr (std::is_same_v<T, AverageOp>) {
          // Cauchy-Schwarz gives ||Tf||_2 <= |W| ||f||_2 and the sup bound
          // gives ||Tf||_inf <= |W| ||f||_inf.
          return op.window.measure() <= 1.0 + kMeasureTol;
        } else if constexpr (std::is_same_v<T, ScalarExpOp>) {
          return op.z.real() <= 0.0;
        } else {
          return std::all_of(op.items.begin(), op.items.end(), l2_linf_contraction);
        }
      },
      t.op);
}

}  // namespace

Classification classify(
    const OperatorSpec& t,
    const std::vector<std::pair<StepFunction, StepFunction>>& samples,
    unsigned K) {
  Classification c;
  c.well_defined = is_well_defined_gamma2(t);
  MomentCheckResult mc = moment_isometry_check(t, samples, K);
  c.isometry = c.well_defined && mc.ok;
  c.unitary = c.isometry && structural_unitary(t);
  c.contraction_sufficient = structural_contraction(t);
  c.necessary_ok = l2_linf_contraction(t);
  if (!c.well_defined) c.evidence.push_back("not a sup-norm contraction");
  if (!mc.ok)
    c.evidence.push_back("moment mismatch at k=" + std::to_string(mc.failing_k) +
                         " sample=" + std::to_string(mc.failing_sample) +
                         " residual=" + std::to_string(mc.residual));
  if (c.contraction_sufficient)
    c.evidence.push_back("matches the Mult o Rearrange contraction form");
  if (!c.necessary_ok)
    c.evidence.push_back("fails L2/Linf contractivity (necessary condition)");
  return c;
}

}  // namespace qfock
