// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "degeo/common.hpp"
#include "degeo/fock.hpp"
#include "degeo/spectra.hpp"

namespace degeo {

/// Index pairs (k, l), k < l, in the order (0,1), (0,2), ..., (g-2, g-1).
std::vector<std::pair<int, int>> veronese_pairs(int g);

/// Second-order monomials (x_1^2, ..., x_g^2, x_1 x_2, ..., x_{g-1} x_g)
/// of a unit vector. Throws DomainError if |x| deviates from 1 by > 1e-10.
Vector veronese(const Vector& x);

/// Upper-triangle coordinates of a symmetric matrix in Veronese order,
/// (A_11, ..., A_gg, A_12, ..., A_{g-1,g}). veronese(x) == vech(x x^T).
Vector vech(const Matrix& a);

/// Degeneracy class (g, kappa) of a g-dimensional ground space together with
/// the linear factor map P from Veronese coordinates to densities.
struct DegeneracyClass {
  int degree = 0;
  int particles = 0;
  int sites = 0;
  Matrix states;                   // L x g real orthonormal basis Phi_k
  std::vector<Vector> factors_diag;  // rho_k = rho(Phi_k)
  std::vector<Vector> factors_off;   // rho_kl = 2 <Phi_k, n Phi_l>, Veronese pair order
  Matrix P;                        // M x g(g+1)/2
  Vector singular_values;          // of P, descending
  int kappa = 0;                   // dim ker P
  int dim_region = 0;              // g(g+1)/2 - kappa - 1
  Matrix kernel_basis;             // g(g+1)/2 x kappa, orthonormal
  Vector central;                  // (sum_k rho_k) / g
  /// Per-site quadratic forms S_i (g x g): rho_i(x) = x^T S_i x and
  /// rho_i(A) = tr(S_i A).
  std::vector<Matrix> site_forms;

  int veronese_dim() const { return symmetric_dim(degree); }
};

/// Builds the factors from the eigenspace basis. kappa counts singular
/// values sigma <= rank_tol * sigma_max plus the columns beyond rank(P).
DegeneracyClass build_class(const Eigenspace& es, const FockBasis& basis, double rank_tol = 1e-8);

/// rho(x) = P nu(x) for a unit x in R^g.
Vector rho_of_x(const DegeneracyClass& dc, const Vector& x);

/// Ensemble density for a symmetric PSD trace-one g x g matrix A.
Vector rho_of_ensemble(const DegeneracyClass& dc, const Matrix& a);

/// Same as rho_of_ensemble without the PSD/trace validation.
Vector apply_factor_map(const DegeneracyClass& dc, const Matrix& a);

struct KernelCheckReport {
  int samples = 0;
  bool passed = true;
  double min_norm = 0.0;            // min |P nu(x)|_2 over samples
  double max_normalization_error = 0.0;  // max | |P nu(x)|_1 - N |
};

/// Samples unit x and checks that P nu(x) is a normalized density, which
/// implies the Veronese variety misses ker P.
KernelCheckReport kernel_nonintersection_check(const DegeneracyClass& dc, int samples,
                                               std::mt19937_64& rng);

/// Uniform point on the unit sphere S^{g-1} (normalized Gaussian).
Vector random_unit_vector(int g, std::mt19937_64& rng);

}  // namespace degeo
