#include "qfock/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qfock {

HermitianMatrix::HermitianMatrix(std::size_t order)
    : n_(order), a_(order * order, Complex(0.0)) {
  if (order == 0) throw DomainError("HermitianMatrix: order must be positive");
}

HermitianMatrix::HermitianMatrix(std::size_t order, std::vector<Complex> column_major)
    : n_(order), a_(std::move(column_major)) {
  if (order == 0) throw DomainError("HermitianMatrix: order must be positive");
  if (a_.size() != n_ * n_)
    throw DimensionMismatch("HermitianMatrix: data size != order^2");
  double resid = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i) {
      Complex v = a_[j * n_ + i];
      Complex w = std::conj(a_[i * n_ + j]);
      resid += std::norm(v - w);
      scale += std::norm(v);
    }
  if (resid > 1e-24 * std::max(1.0, scale))
    throw DomainError("HermitianMatrix: input is not Hermitian");
  // symmetrize to kill rounding-level asymmetry
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      Complex v = 0.5 * (a_[j * n_ + i] + std::conj(a_[i * n_ + j]));
      if (i == j) v = Complex(v.real(), 0.0);
      a_[j * n_ + i] = v;
      a_[i * n_ + j] = std::conj(v);
    }
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex v) {
  if (i >= n_ || j >= n_) throw DimensionMismatch("HermitianMatrix::set: index out of range");
  if (i == j) v = Complex(v.real(), 0.0);
  a_[j * n_ + i] = v;
  a_[i * n_ + j] = std::conj(v);
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (other.n_ != n_) throw DimensionMismatch("HermitianMatrix: order mismatch");
  std::vector<Complex> d(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) d[i] = a_[i] - other.a_[i];
  return HermitianMatrix(n_, std::move(d));
}

EigenDecomposition eig_hermitian(const HermitianMatrix& m) {
  const std::size_t n = m.order();
  std::vector<Complex> a = m.data();
  std::vector<Complex> v(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[j * n + i]; };

  auto offdiag = [&]() {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) s += std::norm(a[j * n + i]);
    return std::sqrt(s);
  };

  const double scale = std::max(1.0, m.frobenius_norm());
  const int max_sweeps = 100;
  int sweep = 0;
  while (offdiag() > 1e-14 * scale) {
    if (++sweep > max_sweeps)
      throw ConvergenceFailure("eig_hermitian: Jacobi sweeps exceeded cap");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Complex apq = at(p, q);
        double r = std::abs(apq);
        if (r <= 1e-300) continue;
        // Phase so the pivot becomes real, then a real Givens rotation.
        Complex phase = apq / r;  // a_pq = r * phase
        double app = at(p, p).real();
        double aqq = at(q, q).real();
        double tau = (aqq - app) / (2.0 * r);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // Combined unitary G: columns p,q of the identity replaced by
        //   G(:,p) = c*e_p - s*conj(phase)*e_q
        //   G(:,q) = s*phase*e_p + c*e_q
        Complex gpq = s * phase;
        Complex gqp = -s * std::conj(phase);
        // A <- G^H A G, applied as column then row updates.
        for (std::size_t i = 0; i < n; ++i) {
          Complex aip = at(i, p), aiq = at(i, q);
          at(i, p) = aip * c + aiq * gqp;
          at(i, q) = aip * gpq + aiq * c;
        }
        for (std::size_t j = 0; j < n; ++j) {
          Complex apj = at(p, j), aqj = at(q, j);
          at(p, j) = c * apj + std::conj(gqp) * aqj;
          at(q, j) = std::conj(gpq) * apj + c * aqj;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = Complex(at(p, p).real(), 0.0);
        at(q, q) = Complex(at(q, q).real(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          Complex vip = v[p * n + i], viq = v[q * n + i];
          v[p * n + i] = vip * c + viq * gqp;
          v[q * n + i] = vip * gpq + viq * c;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i].real() < a[j * n + j].real();
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[order[k] * n + order[k]].real();
    for (std::size_t i = 0; i < n; ++i)
      out.vectors[k * n + i] = v[order[k] * n + i];
  }
  return out;
}

PsdReport is_psd(const HermitianMatrix& m, double tol) {
  EigenDecomposition e = eig_hermitian(m);
  PsdReport rep;
  rep.min_eigenvalue = e.values.front();
  rep.psd = rep.min_eigenvalue >= -tol * std::max(1.0, m.frobenius_norm());
  if (rep.min_eigenvalue < 0.0) {
    std::vector<Complex> w(m.order());
    for (std::size_t i = 0; i < m.order(); ++i) w[i] = e.vectors[i];
    rep.witness = std::move(w);
  }
  return rep;
}

HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.order() != b.order()) throw DimensionMismatch("hadamard: order mismatch");
  const std::size_t n = a.order();
  std::vector<Complex> d(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      d[j * n + i] = a(i, j) * b(i, j);
  return HermitianMatrix(n, std::move(d));
}

Complex det(const HermitianMatrix& m) {
  const std::size_t n = m.order();
  std::vector<Complex> a = m.data();
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[j * n + i]; };
  Complex d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
    if (std::abs(at(piv, k)) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      d = -d;
    }
    d *= at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex factor = at(i, k) / at(k, k);
      for (std::size_t j = k; j < n; ++j) at(i, j) -= factor * at(k, j);
    }
  }
  return d;
}

}  // namespace qfock
