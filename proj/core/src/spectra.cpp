// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/spectra.hpp"

#include <cmath>
#include <limits>

namespace degeo {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kClusterTol = 1e-9;

void fix_sign(Eigen::Ref<Vector> u) {
  Eigen::Index arg = 0;
  u.cwiseAbs().maxCoeff(&arg);
  if (u(arg) < 0.0) u = -u;
}

}  // namespace

Matrix gram_schmidt(const Matrix& columns) {
  Matrix q = columns;
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    for (Eigen::Index j = 0; j < k; ++j) q.col(k) -= q.col(j).dot(q.col(k)) * q.col(j);
    const double n = q.col(k).norm();
    if (n > 0.0) q.col(k) /= n;
  }
  return q;
}

Spectrum eig_sym(const Matrix& H) {
  if (H.rows() != H.cols()) throw DomainError("eig_sym: matrix is not square");
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw DomainError("eig_sym: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
  if (solver.info() != Eigen::Success) throw DomainError("eig_sym: eigensolver failed");

  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  const Eigen::Index n = s.eigenvalues.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && s.eigenvalues(stop) - s.eigenvalues(start) <= kClusterTol * scale) ++stop;
    for (Eigen::Index k = start; k < stop; ++k) fix_sign(s.eigenvectors.col(k));
    if (stop - start > 1) {
      s.eigenvectors.middleCols(start, stop - start) =
          gram_schmidt(s.eigenvectors.middleCols(start, stop - start));
    }
    start = stop;
  }
  return s;
}

Eigenspace ground_eigenspace(const Spectrum& spectrum, double deg_tol) {
  if (!(deg_tol > 0.0)) throw DomainError("deg_tol must be positive");
  const Vector& e = spectrum.eigenvalues;
  const double e0 = e(0);
  const double scale = std::max(1.0, std::abs(e0));
  Eigen::Index g = 1;
  while (g < e.size() && e(g) - e0 <= deg_tol * scale) ++g;

  Eigenspace out;
  out.energy = e0;
  out.degree = static_cast<int>(g);
  out.basis = gram_schmidt(spectrum.eigenvectors.leftCols(g));
  out.gap = g < e.size() ? e(g) - e(g - 1) : std::numeric_limits<double>::infinity();
  out.ambiguous_gap = out.gap < 10.0 * deg_tol * scale;
  return out;
}

Eigenspace ground_eigenspace(const Matrix& H, double deg_tol) {
  return ground_eigenspace(eig_sym(H), deg_tol);
}

}  // namespace degeo
