#ifndef QFOCK_NPARTICLE_HPP
#define QFOCK_NPARTICLE_HPP

#include <map>
#include <vector>

#include "qfock/kernel.hpp"
#include "qfock/testfn.hpp"

namespace qfock {

enum class InnerMethod { Recursion, PartitionSum };

/// The value <B+^n_f Phi, B+^n_g Phi> together with the method that produced it.
struct NParticleInner {
  unsigned n = 0;
  Complex value = 1.0;  // n = 0 gives <Phi, Phi> = 1
  InnerMethod method = InnerMethod::Recursion;
};

/// Multiplicities k -> i_k with sum k * i_k = n.
struct PartitionMultiset {
  std::map<unsigned, unsigned> multiplicities;
  unsigned total() const {
    unsigned n = 0;
    for (auto [k, ik] : multiplicities) n += k * ik;
    return n;
  }
};

/// All integer partitions of n as multiplicity multisets, lexicographic by
/// largest part, deterministic order. Exactly p(n) items.
std::vector<PartitionMultiset> enumerate_partitions(unsigned n);

/// Forward recursion
///   I(m+1) = c * sum_{k=0}^{m} 2^{2k+1} m!(m+1)!/((m-k)!)^2 <f^{k+1}, g^{k+1}> I(m-k)
/// with I(0) = 1. Factorial ratios are accumulated multiplicatively, never
/// materialized; exact up to n ~ 60 in double precision.
NParticleInner inner_n_recursive(const StepFunction& f, const StepFunction& g,
                                 const CouplingConstant& c, unsigned n);

/// Partition-sum form
///   I(n) = (n!)^2 sum_{partitions of n} prod_k (1/i_k!) (2^{2k-1} c <f^k,g^k> / k)^{i_k}
NParticleInner inner_n_partition(const StepFunction& f, const StepFunction& g,
                                 const CouplingConstant& c, unsigned n);

/// The interacting-Fock-space level-n inner product <f^{(n)}, g^{(n)}>_n is
/// the identical sum; exposed as an alias.
inline NParticleInner ifs_inner(const StepFunction& f, const StepFunction& g,
                                const CouplingConstant& c, unsigned n) {
  return inner_n_partition(f, g, c, n);
}

/// Rigorous geometric majorant for the series tail past truncation N.
struct TailBound {
  unsigned truncation = 0;
  double bound = 0.0;
  double ratio_at_N = 0.0;  // worst-case per-step ratio frozen past N
};

/// Asymptotic per-step contraction ratio of the series, 4 ||f||_inf ||g||_inf.
double series_ratio_limit(const StepFunction& f, const StepFunction& g);

struct SeriesKernel {
  Complex value;    // partial sum sum_{n<=N} I(n)/(n!)^2
  TailBound tail;
};

/// Series reconstruction of the kernel with a computable tail bound.
/// Throws DomainError outside the existence radius and TailNotContracting
/// when the frozen ratio at N is >= 1.
SeriesKernel series_kernel(const StepFunction& f, const StepFunction& g,
                           const CouplingConstant& c, unsigned N);

/// Checks ||B+^m_f Phi||^2 <= [4m(m-1)||f||_inf^2 + 2m||f||_2^2] ||B+^(m-1)_f Phi||^2
/// for all m <= m_max, using recursion values.
bool norm_growth_check(const StepFunction& f, const CouplingConstant& c,
                       unsigned m_max);

}  // namespace qfock

#endif
