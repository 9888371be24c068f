// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "degeo/common.hpp"
#include "degeo/degmap.hpp"

namespace degeo {

/// Which part of the density-region hierarchy D_R in D_C in D a sample covers.
enum class RegionLevel { Real, Complex, Ensemble };

std::string_view to_string(RegionLevel level);
/// Accepts "R", "C", "ensemble" (also "D").
RegionLevel parse_region_level(std::string_view text);

struct RegionSample {
  RegionLevel level = RegionLevel::Real;
  std::vector<Vector> points;
  /// Generating coordinates: x for R; (x, y, lambda) concatenated for C;
  /// vech(A) for ensembles.
  std::vector<Vector> params;
  int degree = 0;
  int kappa = 0;
};

/// rho(x) for x uniform on S^{g-1}. Point k uses task_rng(seed, k).
RegionSample sample_real(const DegeneracyClass& dc, int n, std::uint64_t seed, int threads = 1);
/// lambda rho(x) + (1 - lambda) rho(y), x, y uniform on the sphere, lambda uniform.
RegionSample sample_complex(const DegeneracyClass& dc, int n, std::uint64_t seed, int threads = 1);
/// rho(A) for A = sum_j w_j x_j x_j^T with g+1 random pure states and flat
/// Dirichlet weights.
RegionSample sample_ensemble(const DegeneracyClass& dc, int n, std::uint64_t seed, int threads = 1);
RegionSample sample_region(const DegeneracyClass& dc, RegionLevel level, int n, std::uint64_t seed,
                           int threads = 1);

struct MembershipResult {
  bool member = false;
  double residual = 0.0;  // best distance |rho(witness) - target|_2 found
  /// Certified lower bound on the true distance (0 when none is available).
  double lower_bound = 0.0;
  /// Non-membership is backed by lower_bound > tol.
  bool certified = false;
  /// Iteration cap hit with lower_bound <= tol < residual.
  bool inconclusive = false;
  Matrix ensemble;      // witness for D
  Vector x, y;          // witness for D_C (and D_R via lambda = 1)
  double lambda = 1.0;
  int iterations = 0;
};

struct EnsembleMembershipOptions {
  double tol = 1e-7;
  int max_iter = 20000;
  /// Stop as soon as non-membership is certified.
  bool early_exit = false;
};

/// Distance from target to D = rho({A >= 0, tr A = 1}) by accelerated
/// projected gradient on the spectraplex, followed by an exact least-squares
/// solve on the active face. The Frank-Wolfe gap supplies the lower bound.
MembershipResult membership_in_D(const DegeneracyClass& dc, const Vector& target,
                                 const EnsembleMembershipOptions& opts = {});

struct PureMembershipOptions {
  double tol = 1e-7;
  int restarts = 16;
  std::uint64_t seed = 1;
  /// Ring count per quarter circle of the certification grid (g <= 3).
  int grid_resolution = 60;
  bool certify = true;
};

/// Multi-start Levenberg-Marquardt over (x, y, lambda) for
/// |lambda rho(x) + (1 - lambda) rho(y) - target|. For g <= 3 a non-member
/// verdict is certified by a covering grid with a Lipschitz bound; for
/// larger g it is heuristic (certified == false).
MembershipResult membership_in_DC(const DegeneracyClass& dc, const Vector& target,
                                  const PureMembershipOptions& opts = {});

struct NonPureReport {
  bool condition_holds = false;  // g >= 3 and kappa == 0
  bool in_D = false;
  bool in_DC = false;
  bool confirmed = false;        // in_D && !in_DC
  bool certified = false;        // non-membership in D_C certified
  double D_residual = 0.0;
  double DC_residual = 0.0;
  double DC_lower_bound = 0.0;
};

/// Checks whether the central density is an ensemble but not a pure-state
/// density of the class.
NonPureReport non_pure_check(const DegeneracyClass& dc, double tol = 1e-7,
                             const PureMembershipOptions& pure_opts = {});

/// Orthonormal Helmert basis of the hyperplane sum(rho) = const, as an
/// M x (M-1) matrix; column j (0-based) is (1,...,1,-(j+1),0,...,0) / sqrt((j+1)(j+2)).
Matrix helmert_basis(int sites);

/// Coordinates of normalized densities in the Helmert basis.
std::vector<Vector> barycentric_project(const std::vector<Vector>& points, int sites, int particles);

/// Projects eigenvalues onto the probability simplex (Euclidean projection).
Vector project_to_simplex(const Vector& v);

}  // namespace degeo
