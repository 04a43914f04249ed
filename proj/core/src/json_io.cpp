#include "qfock/json_io.hpp"

#include <iomanip>
#include <sstream>

namespace qfock {

Json to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  return Complex(j.value("re", 0.0), j.value("im", 0.0));
}

Json to_json(const Cell& c) {
  return Json{{"lo", c.lower}, {"hi", c.upper}};
}

Cell cell_from_json(const Json& j) {
  return Cell(j.at("lo").get<std::vector<double>>(),
              j.at("hi").get<std::vector<double>>());
}

Json to_json(const StepFunction& f) {
  Json cells = Json::array();
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    Json c = to_json(f.cells()[i]);
    c["re"] = f.values()[i].real();
    c["im"] = f.values()[i].imag();
    cells.push_back(std::move(c));
  }
  return Json{{"dim", f.dimension()}, {"cells", std::move(cells)}};
}

StepFunction step_function_from_json(const Json& j) {
  std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<Cell> cells;
  std::vector<Complex> values;
  for (const Json& c : j.at("cells")) {
    cells.push_back(cell_from_json(c));
    values.push_back(Complex(c.value("re", 0.0), c.value("im", 0.0)));
  }
  return StepFunction(dim, std::move(cells), std::move(values));
}

Json to_json(const OperatorSpec& t) {
  return std::visit(
      [](const auto& op) -> Json {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, MultOp>) {
          return Json{{"op", "mult"}, {"phi", to_json(op.phi)}};
        } else if constexpr (std::is_same_v<T, GaugeOp>) {
          return Json{{"op", "gauge"}, {"alpha", to_json(op.alpha)}};
        } else if constexpr (std::is_same_v<T, RearrangeOp>) {
          Json pairs = Json::array();
          for (const auto& [src, dst] : op.map.pairs)
            pairs.push_back(Json{{"src", to_json(src)}, {"dst", to_json(dst)}});
          return Json{{"op", "rearrange"},
                      {"pairs", std::move(pairs)},
                      {"drop_unmapped", op.drop_unmapped}};
        } else if constexpr (std::is_same_v<T, AverageOp>) {
          return Json{{"op", "average"}, {"window", to_json(op.window)}};
        } else if constexpr (std::is_same_v<T, ScalarExpOp>) {
          return Json{{"op", "scalar_exp"}, {"re", op.z.real()}, {"im", op.z.imag()}};
        } else {
          Json items = Json::array();
          for (const OperatorSpec& item : op.items) items.push_back(to_json(item));
          return Json{{"op", "compose"}, {"items", std::move(items)}};
        }
      },
      t.op);
}

OperatorSpec operator_from_json(const Json& j) {
  const std::string kind = j.at("op").get<std::string>();
  if (kind == "mult") return OperatorSpec::mult(step_function_from_json(j.at("phi")));
  if (kind == "gauge") return OperatorSpec::gauge(step_function_from_json(j.at("alpha")));
  if (kind == "rearrange") {
    std::vector<std::pair<Cell, Cell>> pairs;
    for (const Json& p : j.at("pairs"))
      pairs.emplace_back(cell_from_json(p.at("src")), cell_from_json(p.at("dst")));
    return OperatorSpec::rearrange(CellMap(std::move(pairs)),
                                   j.value("drop_unmapped", false));
  }
  if (kind == "average") return OperatorSpec::average(cell_from_json(j.at("window")));
  if (kind == "scalar_exp")
    return OperatorSpec::scalar_exp(Complex(j.value("re", 0.0), j.value("im", 0.0)));
  if (kind == "compose") {
    std::vector<OperatorSpec> items;
    for (const Json& item : j.at("items")) items.push_back(operator_from_json(item));
    return OperatorSpec::compose(std::move(items));
  }
  throw DomainError("operator_from_json: unknown op kind '" + kind + "'");
}

Json to_json(const HermitianMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.order(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.order(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const FockSpan& span) {
  Json coeffs = Json::array();
  for (const Complex& a : span.coefficients) coeffs.push_back(to_json(a));
  Json fns = Json::array();
  for (const StepFunction& f : span.functions) fns.push_back(to_json(f));
  return Json{{"coefficients", std::move(coeffs)}, {"functions", std::move(fns)}};
}

FockSpan span_from_json(const Json& j, const CouplingConstant& c) {
  std::vector<Complex> coeffs;
  for (const Json& a : j.at("coefficients")) coeffs.push_back(complex_from_json(a));
  std::vector<StepFunction> fns;
  for (const Json& f : j.at("functions")) fns.push_back(step_function_from_json(f));
  return FockSpan(std::move(coeffs), std::move(fns), c);
}

std::uint64_t canonical_digest(const Json& j) {
  const std::string s = j.dump();  // nlohmann objects iterate in sorted key order
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonical_digest_hex(const Json& j) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << canonical_digest(j);
  return os.str();
}

}  // namespace qfock
