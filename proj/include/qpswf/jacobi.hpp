#pragma once

// Cyclic Jacobi eigensolver for dense symmetric matrices.
//
// Rotations are applied row by row with the threshold strategy of the classic
// formulation: a large threshold in the first sweeps, then every nonzero
// off-diagonal entry, and entries negligible against both diagonal entries are
// set to zero outright.  Eigenvalue updates are accumulated separately from
// the diagonal to limit rounding drift.  Jacobi keeps small eigenvalues of
// graded matrices accurate, which is the regime of concentration operators.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qpswf/error.hpp"
#include "qpswf/matrix.hpp"

namespace qpswf {

template <typename Real>
struct SymmetricEigensystem {
  std::vector<Real> values;     // unsorted, eigenvalue i pairs with column i
  DenseMatrix<Real> vectors;    // orthonormal columns
  int sweeps = 0;
  Real off_diagonal = 0;        // Frobenius norm of what was left off-diagonal
};

template <typename Real>
Real off_diagonal_norm(const DenseMatrix<Real>& a) {
  Real s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

/// Eigen-decomposition of the symmetric matrix `a`.  Throws
/// SolverNoConvergence when the off-diagonal mass is still above
/// `tolerance * ||a||_F` after `max_sweeps` sweeps.
template <typename Real>
SymmetricEigensystem<Real> jacobi_eigen(DenseMatrix<Real> a, int max_sweeps = 64, Real tolerance = Real(1e-12)) {
  if (!a.symmetric()) throw InvalidParameter("jacobi_eigen needs a symmetric matrix");
  const std::size_t n = a.rows();
  const Real norm = a.frobenius_norm();

  SymmetricEigensystem<Real> result;
  result.vectors = DenseMatrix<Real>::identity(n);
  DenseMatrix<Real>& v = result.vectors;
  std::vector<Real> d(n), b(n), z(n, Real(0));
  for (std::size_t i = 0; i < n; ++i) b[i] = d[i] = a(i, i);

  auto rotate = [](DenseMatrix<Real>& m, Real s, Real tau, std::size_t i, std::size_t j, std::size_t k,
                   std::size_t l) {
    const Real g = m(i, j);
    const Real h = m(k, l);
    m(i, j) = g - s * (h + g * tau);
    m(k, l) = h + s * (g - h * tau);
  };

  int sweep = 1;
  for (; sweep <= max_sweeps; ++sweep) {
    Real sm = 0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) sm += std::abs(a(p, q));
    if (sm == Real(0)) break;

    const Real tresh = sweep < 4 ? Real(0.2) * sm / static_cast<Real>(n * n) : Real(0);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Real g = Real(100) * std::abs(a(p, q));
        if (sweep > 4 && std::abs(d[p]) + g == std::abs(d[p]) && std::abs(d[q]) + g == std::abs(d[q])) {
          a(p, q) = 0;
        } else if (std::abs(a(p, q)) > tresh) {
          Real h = d[q] - d[p];
          Real t;
          if (std::abs(h) + g == std::abs(h)) {
            t = a(p, q) / h;
          } else {
            const Real theta = Real(0.5) * h / a(p, q);
            t = Real(1) / (std::abs(theta) + std::sqrt(Real(1) + theta * theta));
            if (theta < 0) t = -t;
          }
          const Real c = Real(1) / std::sqrt(Real(1) + t * t);
          const Real s = t * c;
          const Real tau = s / (Real(1) + c);
          h = t * a(p, q);
          z[p] -= h;
          z[q] += h;
          d[p] -= h;
          d[q] += h;
          a(p, q) = 0;
          for (std::size_t j = 0; j < p; ++j) rotate(a, s, tau, j, p, j, q);
          for (std::size_t j = p + 1; j < q; ++j) rotate(a, s, tau, p, j, j, q);
          for (std::size_t j = q + 1; j < n; ++j) rotate(a, s, tau, p, j, q, j);
          for (std::size_t j = 0; j < n; ++j) rotate(v, s, tau, j, p, j, q);
        }
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0;
    }
  }

  // Only the upper triangle is maintained during the sweeps.
  Real off = 0;
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) off += Real(2) * a(p, q) * a(p, q);
  off = std::sqrt(off);
  if (sweep > max_sweeps && off > tolerance * norm) {
    throw SolverNoConvergence("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) +
                              " sweeps (off-diagonal " + std::to_string(off) + ")");
  }
  result.values = std::move(d);
  result.sweeps = sweep > max_sweeps ? max_sweeps : sweep;
  result.off_diagonal = off;
  return result;
}

}  // namespace qpswf
