// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "degeo/common.hpp"
#include "degeo/fock.hpp"

namespace degeo {

/// Ascending eigenvalues with orthonormal eigenvectors in the columns.
struct Spectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Lowest (possibly degenerate) eigenspace with a real orthonormal basis.
struct Eigenspace {
  double energy = 0.0;
  int degree = 0;
  Matrix basis;  // L x degree
  /// E_{g+1} - E_g, +inf when the whole space is degenerate.
  double gap = 0.0;
  /// Set when the gap is below 10 * deg_tol * scale, i.e. the multiplet
  /// boundary is numerically ambiguous.
  bool ambiguous_gap = false;
};

/// Dense symmetric eigendecomposition. Eigenvector signs are fixed so the
/// largest-magnitude component is positive, and numerically degenerate
/// clusters are re-orthonormalized in index order, so identical input gives
/// identical output. Throws DomainError if H is not symmetric to 1e-10.
Spectrum eig_sym(const Matrix& H);
inline Spectrum eig_sym(const ManyBodyOperator& H) { return eig_sym(H.H); }

/// Ground multiplet: every level with E_k - E_1 <= deg_tol * max(1, |E_1|).
Eigenspace ground_eigenspace(const Spectrum& spectrum, double deg_tol = 1e-9);
Eigenspace ground_eigenspace(const Matrix& H, double deg_tol = 1e-9);
inline Eigenspace ground_eigenspace(const ManyBodyOperator& H, double deg_tol = 1e-9) {
  return ground_eigenspace(H.H, deg_tol);
}

/// Modified Gram-Schmidt on the columns, in index order.
Matrix gram_schmidt(const Matrix& columns);

}  // namespace degeo
