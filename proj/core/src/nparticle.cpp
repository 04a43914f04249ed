#include "qfock/nparticle.hpp"

#include <cmath>
#include <limits>

namespace qfock {

namespace {

void check_finite(const Complex& v, const char* where) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw OverflowError(std::string(where) + ": intermediate exceeded double range");
}

/// I(0..n) by the forward recursion, with <f^k, g^k> cached per k.
std::vector<Complex> inner_all(const StepFunction& f, const StepFunction& g,
                               const CouplingConstant& c, unsigned n) {
  std::vector<Complex> ip(n + 1);  // ip[k] = <f^k, g^k>, ip[0] unused
  for (unsigned k = 1; k <= n; ++k) ip[k] = inner_pow(f, g, k);

  std::vector<Complex> inner(n + 1);
  inner[0] = 1.0;
  for (unsigned m = 0; m < n; ++m) {
    Complex s = 0.0;
    double w = 2.0 * (m + 1);  // 2^{2k+1} m!(m+1)!/((m-k)!)^2 at k=0
    for (unsigned k = 0; k <= m; ++k) {
      if (k > 0) w *= 4.0 * double(m - k + 1) * double(m - k + 1);
      s += w * ip[k + 1] * inner[m - k];
    }
    inner[m + 1] = c.c * s;
    check_finite(inner[m + 1], "inner_n_recursive");
  }
  return inner;
}

}  // namespace

std::vector<PartitionMultiset> enumerate_partitions(unsigned n) {
  std::vector<PartitionMultiset> out;
  std::map<unsigned, unsigned> current;
  // descend largest part first
  auto rec = [&](auto&& self, unsigned rest, unsigned max_part) -> void {
    if (rest == 0) {
      out.push_back(PartitionMultiset{current});
      return;
    }
    for (unsigned p = std::min(rest, max_part); p >= 1; --p) {
      ++current[p];
      self(self, rest - p, p);
      if (--current[p] == 0) current.erase(p);
    }
  };
  rec(rec, n, n == 0 ? 1 : n);
  return out;
}

NParticleInner inner_n_recursive(const StepFunction& f, const StepFunction& g,
                                 const CouplingConstant& c, unsigned n) {
  if (f.dimension() != g.dimension())
    throw DimensionMismatch("inner_n_recursive: dimension mismatch");
  return NParticleInner{n, inner_all(f, g, c, n)[n], InnerMethod::Recursion};
}

NParticleInner inner_n_partition(const StepFunction& f, const StepFunction& g,
                                 const CouplingConstant& c, unsigned n) {
  if (f.dimension() != g.dimension())
    throw DimensionMismatch("inner_n_partition: dimension mismatch");
  std::vector<Complex> ip(n + 1);
  for (unsigned k = 1; k <= n; ++k) ip[k] = inner_pow(f, g, k);

  double n_fact_sq = 1.0;
  for (unsigned i = 2; i <= n; ++i) n_fact_sq *= double(i) * double(i);

  Complex total = 0.0;
  for (const PartitionMultiset& part : enumerate_partitions(n)) {
    Complex term = n_fact_sq;
    for (auto [k, ik] : part.multiplicities) {
      Complex base = std::ldexp(1.0, int(2 * k - 1)) * c.c * ip[k] / double(k);
      for (unsigned j = 0; j < ik; ++j) term *= base / double(j + 1);
    }
    total += term;
    check_finite(total, "inner_n_partition");
  }
  return NParticleInner{n, n == 0 ? Complex(1.0) : total, InnerMethod::PartitionSum};
}

double series_ratio_limit(const StepFunction& f, const StepFunction& g) {
  return 4.0 * f.norm_inf() * g.norm_inf();
}

SeriesKernel series_kernel(const StepFunction& f, const StepFunction& g,
                           const CouplingConstant& c, unsigned N) {
  if (!qexp_exists(f) || !qexp_exists(g))
    throw DomainError("series_kernel: requires ||f||_inf < 1/2 for both arguments");

  std::vector<Complex> If = inner_all(f, f, c, N);
  std::vector<Complex> Ig = inner_all(g, g, c, N);
  std::vector<Complex> Ifg = inner_all(f, g, c, N);

  Complex partial = 0.0;
  double inv_fact_sq = 1.0;  // 1/(m!)^2
  for (unsigned m = 0; m <= N; ++m) {
    if (m > 0) inv_fact_sq /= double(m) * double(m);
    partial += Ifg[m] * inv_fact_sq;
  }

  // Term m of the series is bounded by V_m := ||B+^m_f|| ||B+^m_g|| / (m!)^2 and
  //   V_m / V_{m-1} <= sqrt(4m(m-1)a_f + 2mc b_f) sqrt(4m(m-1)a_g + 2mc b_g) / m^2
  // with a = ||.||_inf^2, b = ||.||_2^2 (the growth bracket is exact for
  // constant functions, where I(m)/I(m-1) = [4m(m-1) + 2mc] |u|^2). Each
  // bracket, rewritten per m, is monotone in m, so its sup over m > N is
  // reached at m = N+1 or at the limit.
  const double af = f.norm_inf() * f.norm_inf(), bf = f.norm2_sq();
  const double ag = g.norm_inf() * g.norm_inf(), bg = g.norm2_sq();
  auto bracket = [&c](double a, double b, double m) {
    return 4.0 * (1.0 - 1.0 / m) * a + 2.0 * c.c * b / m;  // ratio factor squared
  };
  const double mN = double(N) + 1.0;
  double qf = std::max(bracket(af, bf, mN), 4.0 * af);
  double qg = std::max(bracket(ag, bg, mN), 4.0 * ag);
  double q = std::sqrt(qf) * std::sqrt(qg);

  TailBound tail;
  tail.truncation = N;
  tail.ratio_at_N = q;
  if (q >= 1.0)
    throw TailNotContracting("series_kernel: tail ratio " + std::to_string(q) +
                             " >= 1 at N = " + std::to_string(N) + "; increase N");
  double vN = std::sqrt(std::abs(If[N].real()) * std::abs(Ig[N].real())) * inv_fact_sq;
  // Geometric tail past N plus a floor for the roundoff of the partial sum
  // itself (the analytic bound can drop below machine precision). A vanishing
  // ratio means the series is a single exact term, so no floor is needed.
  tail.bound = q == 0.0
                   ? 0.0
                   : vN * q / (1.0 - q) + std::numeric_limits<double>::epsilon() *
                                              (double(N) + 1.0) * std::abs(partial);
  return SeriesKernel{partial, tail};
}

bool norm_growth_check(const StepFunction& f, const CouplingConstant& c,
                       unsigned m_max) {
  if (m_max < 1) throw DomainError("norm_growth_check: requires m_max >= 1");
  std::vector<Complex> I = inner_all(f, f, c, m_max);
  const double a = f.norm_inf() * f.norm_inf();
  const double b = f.norm2_sq();
  for (unsigned m = 1; m <= m_max; ++m) {
    double lhs = I[m].real();
    double rhs = (4.0 * m * (m - 1.0) * a + 2.0 * m * c.c * b) * I[m - 1].real();
    if (lhs > rhs * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace qfock
