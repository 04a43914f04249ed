// qfock: command-line front end for the quadratic Fock space toolkit.
// JSON in, JSON out; every error path yields structured JSON on stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qfock/fockspan.hpp"
#include "qfock/json_io.hpp"
#include "qfock/kernel.hpp"
#include "qfock/nparticle.hpp"
#include "qfock/operators.hpp"
#include "qfock/random.hpp"
#include "qfock/selftest.hpp"

namespace {

using qfock::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

double default_tol() {
  if (const char* env = std::getenv("QFOCK_TOL")) return std::atof(env);
  return 1e-10;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qfock::Error("cannot open input file: " + path);
  Json j;
  in >> j;
  return j;
}

qfock::StepFunction load_step_function(const std::string& path) {
  return qfock::step_function_from_json(load_json(path));
}

class Timer {
public:
  void start(const std::string& stage) {
    stage_ = stage;
    t0_ = std::chrono::steady_clock::now();
  }
  void stop() {
    timings_[stage_] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
            .count();
  }
  Json to_json() const {
    Json j = Json::object();
    for (const auto& [k, v] : timings_) j[k] = v;
    return j;
  }

private:
  std::string stage_;
  std::chrono::steady_clock::time_point t0_;
  std::map<std::string, double> timings_;
};

void emit_report(const std::string& command, const Json& inputs, const Json& outputs,
                 const Timer& timer, std::optional<std::uint64_t> seed = std::nullopt) {
  Json report{{"command", command},
              {"inputs_digest", qfock::canonical_digest_hex(inputs)},
              {"outputs", outputs},
              {"timings_ms", timer.to_json()}};
  if (seed) report["seed"] = *seed;
  std::cout << report.dump(2) << "\n";
}

std::string gram_csv(const qfock::HermitianMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) {
      if (j) os << ",";
      qfock::Complex v = m(i, j);
      os << v.real();
      if (v.imag() != 0.0) os << (v.imag() >= 0 ? "+" : "") << v.imag() << "i";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the quadratic Fock space"};
  app.require_subcommand(1);

  std::string f_path, g_path, op_path, basis_path, span_path, format = "json";
  double c_value = 1.0, lambda = 0.4, z_re = 0.0, z_im = 0.0, check_t = 0.0;
  unsigned n_value = 0, big_n = 40, samples = 10, moment_k = 8, trials = 200;
  std::uint64_t seed = 0;
  int check_n = -1;

  auto* cmd_kernel = app.add_subcommand("kernel", "Exponential-vector kernel <Psi(f), Psi(g)>");
  cmd_kernel->add_option("--f", f_path, "step function JSON")->required();
  cmd_kernel->add_option("--g", g_path, "step function JSON")->required();
  cmd_kernel->add_option("--c", c_value, "coupling constant");

  auto* cmd_gram = app.add_subcommand("gram", "Gram matrix of kernel values");
  cmd_gram->add_option("--functions", f_path, "JSON array of step functions")->required();
  cmd_gram->add_option("--c", c_value, "coupling constant");
  cmd_gram->add_option("--format", format, "json or csv");

  auto* cmd_nmoment = app.add_subcommand("nmoment", "n-particle inner product, both methods");
  cmd_nmoment->add_option("--f", f_path)->required();
  cmd_nmoment->add_option("--g", g_path)->required();
  cmd_nmoment->add_option("--c", c_value);
  cmd_nmoment->add_option("--n", n_value)->required();

  auto* cmd_conv = app.add_subcommand("convergence", "Series reconstruction with tail bound");
  cmd_conv->add_option("--f", f_path)->required();
  cmd_conv->add_option("--g", g_path)->required();
  cmd_conv->add_option("--c", c_value);
  cmd_conv->add_option("--N", big_n, "truncation order");
  cmd_conv->add_option("--format", format, "json or csv");

  auto* cmd_classify = app.add_subcommand("classify", "Classify Gamma_2(T)");
  cmd_classify->add_option("--op", op_path, "operator JSON")->required();
  cmd_classify->add_option("--c", c_value);
  cmd_classify->add_option("--seed", seed, "sampling seed")->required();
  cmd_classify->add_option("--samples", samples, "number of sample pairs");
  cmd_classify->add_option("--K", moment_k, "max moment order");

  auto* cmd_decomp = app.add_subcommand("decompose", "Structure-theorem decomposition on a basis");
  cmd_decomp->add_option("--op", op_path)->required();
  cmd_decomp->add_option("--basis", basis_path, "JSON array of cells")->required();

  auto* cmd_counter = app.add_subcommand("counterexample", "Averaging-operator span dilation");
  cmd_counter->add_option("--lambda", lambda);
  cmd_counter->add_option("--c", c_value);

  auto* cmd_witness = app.add_subcommand("witness-search", "Random search for a dilating span");
  cmd_witness->add_option("--op", op_path)->required();
  cmd_witness->add_option("--c", c_value);
  cmd_witness->add_option("--trials", trials);
  cmd_witness->add_option("--seed", seed)->required();

  auto* cmd_semigroup = app.add_subcommand("semigroup", "Apply Gamma_2(e^z) to a span");
  cmd_semigroup->add_option("--span", span_path, "span JSON")->required();
  cmd_semigroup->add_option("--c", c_value);
  cmd_semigroup->add_option("--z-re", z_re)->required();
  cmd_semigroup->add_option("--z-im", z_im);
  cmd_semigroup->add_option("--check-n", check_n, "also run the H0 eigencheck at this n");
  cmd_semigroup->add_option("--check-t", check_t, "gauge angle for the eigencheck");

  auto* cmd_selftest = app.add_subcommand("selftest", "Run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << Json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  }

  Timer timer;
  try {
    const qfock::CouplingConstant c(c_value);

    if (*cmd_kernel) {
      Json inputs{{"f", load_json(f_path)}, {"g", load_json(g_path)}, {"c", c_value}};
      timer.start("kernel");
      qfock::KernelValue kv = qfock::kernel(qfock::step_function_from_json(inputs["f"]),
                                            qfock::step_function_from_json(inputs["g"]), c);
      timer.stop();
      emit_report("kernel", inputs,
                  Json{{"value", qfock::to_json(kv.value)}, {"log", qfock::to_json(kv.log_value)}},
                  timer);
    } else if (*cmd_gram) {
      Json inputs{{"functions", load_json(f_path)}, {"c", c_value}};
      std::vector<qfock::StepFunction> fns;
      for (const Json& j : inputs["functions"]) fns.push_back(qfock::step_function_from_json(j));
      timer.start("gram");
      qfock::HermitianMatrix g = qfock::kernel_gram(fns, c);
      qfock::EigenDecomposition e = qfock::eig_hermitian(g);
      timer.stop();
      if (format == "csv") {
        std::cout << gram_csv(g);
      } else {
        emit_report("gram", inputs,
                    Json{{"matrix", qfock::to_json(g)}, {"eigenvalues", e.values}}, timer);
      }
    } else if (*cmd_nmoment) {
      Json inputs{{"f", load_json(f_path)}, {"g", load_json(g_path)}, {"c", c_value}, {"n", n_value}};
      qfock::StepFunction f = qfock::step_function_from_json(inputs["f"]);
      qfock::StepFunction g = qfock::step_function_from_json(inputs["g"]);
      timer.start("nmoment");
      qfock::Complex rec = qfock::inner_n_recursive(f, g, c, n_value).value;
      qfock::Complex part = qfock::inner_n_partition(f, g, c, n_value).value;
      timer.stop();
      double abs_diff = std::abs(rec - part);
      double scale = std::max(std::abs(rec), std::abs(part));
      emit_report("nmoment", inputs,
                  Json{{"n", n_value},
                       {"recursion", qfock::to_json(rec)},
                       {"partition", qfock::to_json(part)},
                       {"abs_diff", abs_diff},
                       {"rel_diff", scale > 0 ? abs_diff / scale : 0.0}},
                  timer);
    } else if (*cmd_conv) {
      Json inputs{{"f", load_json(f_path)}, {"g", load_json(g_path)}, {"c", c_value}, {"N", big_n}};
      qfock::StepFunction f = qfock::step_function_from_json(inputs["f"]);
      qfock::StepFunction g = qfock::step_function_from_json(inputs["g"]);
      timer.start("convergence");
      qfock::SeriesKernel sk = qfock::series_kernel(f, g, c, big_n);
      qfock::KernelValue kv = qfock::kernel(f, g, c);
      timer.stop();
      if (format == "csv") {
        std::cout << "N,partial_re,partial_im,tail_bound,ratio_at_N,abs_err\n"
                  << big_n << "," << sk.value.real() << "," << sk.value.imag() << ","
                  << sk.tail.bound << "," << sk.tail.ratio_at_N << ","
                  << std::abs(sk.value - kv.value) << "\n";
      } else {
        emit_report("convergence", inputs,
                    Json{{"partial", qfock::to_json(sk.value)},
                         {"tail_bound", sk.tail.bound},
                         {"ratio_at_N", sk.tail.ratio_at_N},
                         {"kernel", qfock::to_json(kv.value)},
                         {"abs_err", std::abs(sk.value - kv.value)}},
                    timer);
      }
    } else if (*cmd_classify) {
      Json inputs{{"op", load_json(op_path)}, {"c", c_value}, {"seed", seed},
                  {"samples", samples}, {"K", moment_k}};
      qfock::OperatorSpec t = qfock::operator_from_json(inputs["op"]);
      qfock::Rng rng(seed);
      std::vector<std::pair<qfock::StepFunction, qfock::StepFunction>> sample_pairs;
      for (unsigned i = 0; i < samples; ++i)
        sample_pairs.emplace_back(qfock::random_on_partition(rng, 4),
                                  qfock::random_on_partition(rng, 4));
      timer.start("classify");
      qfock::Classification cl = qfock::classify(t, sample_pairs, moment_k);
      timer.stop();
      emit_report("classify", inputs,
                  Json{{"well_defined", cl.well_defined},
                       {"isometry", cl.isometry},
                       {"unitary", cl.unitary},
                       {"contraction_sufficient", cl.contraction_sufficient},
                       {"necessary_ok", cl.necessary_ok},
                       {"evidence", cl.evidence}},
                  timer, seed);
    } else if (*cmd_decomp) {
      Json inputs{{"op", load_json(op_path)}, {"basis", load_json(basis_path)}};
      qfock::OperatorSpec t = qfock::operator_from_json(inputs["op"]);
      std::vector<qfock::Cell> basis;
      for (const Json& j : inputs["basis"]) basis.push_back(qfock::cell_from_json(j));
      timer.start("decompose");
      qfock::DecomposeResult res = qfock::decompose_isometry(qfock::discretize(t, basis));
      timer.stop();
      Json out;
      if (res.ok()) {
        Json pairs = Json::array();
        for (const auto& [src, dst] : res.decomposition->tau.pairs)
          pairs.push_back(Json{{"src", qfock::to_json(src)}, {"dst", qfock::to_json(dst)}});
        out = Json{{"isometry", true},
                   {"alpha", qfock::to_json(res.decomposition->alpha)},
                   {"tau", std::move(pairs)}};
      } else {
        static const std::map<qfock::IsometryLemma, std::string> names{
            {qfock::IsometryLemma::C, "C"}, {qfock::IsometryLemma::D, "D"},
            {qfock::IsometryLemma::E, "E"}, {qfock::IsometryLemma::FG, "FG"}};
        out = Json{{"isometry", false},
                   {"witness", Json{{"lemma", names.at(res.witness->lemma)},
                                    {"cells", res.witness->cell_indices},
                                    {"residual", res.witness->residual}}}};
      }
      emit_report("decompose", inputs, out, timer);
    } else if (*cmd_counter) {
      Json inputs{{"lambda", lambda}, {"c", c_value}};
      timer.start("counterexample");
      qfock::CounterexampleReport rep = qfock::counterexample(lambda, c);
      timer.stop();
      Json out{{"A", qfock::to_json(rep.A)},
               {"B", qfock::to_json(rep.B)},
               {"det_A_minus_B", qfock::to_json(rep.report.determinant)},
               {"min_eigenvalue", rep.report.min_eigenvalue},
               {"psd", rep.report.psd_A_minus_B}};
      if (rep.report.witness_vector) {
        Json w = Json::array();
        for (const qfock::Complex& v : *rep.report.witness_vector)
          w.push_back(qfock::to_json(v));
        out["witness_vector"] = std::move(w);
      }
      emit_report("counterexample", inputs, out, timer);
    } else if (*cmd_witness) {
      Json inputs{{"op", load_json(op_path)}, {"c", c_value}, {"trials", trials}, {"seed", seed}};
      qfock::OperatorSpec t = qfock::operator_from_json(inputs["op"]);
      timer.start("witness_search");
      qfock::WitnessSearchResult res = qfock::contraction_witness_search(t, c, trials, seed);
      timer.stop();
      Json out{{"found", res.witness.has_value()}, {"trials_run", res.trials_run}};
      if (res.witness) {
        out["witness"] = qfock::to_json(*res.witness);
        out["norm_before"] = qfock::span_norm(*res.witness);
        out["norm_after"] = qfock::span_norm(qfock::gamma2_apply(t, *res.witness));
      }
      emit_report("witness-search", inputs, out, timer, seed);
    } else if (*cmd_semigroup) {
      Json inputs{{"span", load_json(span_path)}, {"c", c_value},
                  {"z", Json{{"re", z_re}, {"im", z_im}}}};
      qfock::FockSpan span = qfock::span_from_json(inputs["span"], c);
      timer.start("semigroup");
      qfock::FockSpan mapped = qfock::semigroup_apply(qfock::Complex(z_re, z_im), span);
      timer.stop();
      Json out{{"span", qfock::to_json(mapped)},
               {"norm_before", qfock::span_norm(span)},
               {"norm_after", qfock::span_norm(mapped)}};
      if (check_n >= 0)
        out["h0_eigencheck"] = qfock::h0_eigencheck(span.functions.front(), c,
                                                    unsigned(check_n), check_t, default_tol());
      emit_report("semigroup", inputs, out, timer);
    } else if (*cmd_selftest) {
      return qfock::run_selftest(std::cout) == 0 ? kExitOk : kExitUsage;
    }
    return kExitOk;
  } catch (const qfock::DimensionMismatch& e) {
    std::cerr << Json{{"error", "dimension_mismatch"}, {"message", e.what()}}.dump() << "\n";
    return kExitDomain;
  } catch (const qfock::DomainError& e) {
    std::cerr << Json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
    return kExitDomain;
  } catch (const qfock::Error& e) {
    std::cerr << Json{{"error", "runtime"}, {"message", e.what()}}.dump() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "parse"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  }
}
