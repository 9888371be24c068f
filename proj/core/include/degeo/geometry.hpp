// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "degeo/common.hpp"
#include "degeo/degmap.hpp"
#include "degeo/regions.hpp"
#include "degeo/system.hpp"

namespace degeo {

/// Potential directions that keep the ground multiplet degenerate to first
/// order.
struct DegeneracyDirections {
  /// Orthonormal M x dim basis. Each u sums to zero, has <u, rho_kl> = 0 and
  /// equal <u, rho_k> for all k; u + c 1 lies in ker P^T for one c.
  Matrix basis;
  int dim = 0;
  /// M - g(g+1)/2 + kappa.
  int bound = 0;
  /// Orthonormal basis of ker P^T itself.
  Matrix raw_kernel;
};

DegeneracyDirections degeneracy_directions(const DegeneracyClass& dc, double rank_tol = 1e-8);

struct PreservationReport {
  int degree = 0;
  std::vector<double> lambdas;
  std::vector<double> spreads;  // E_g - E_1 of the tracked multiplet
  std::vector<bool> excluded;   // level crossing or lost overlap
  std::vector<std::string> notes;
  /// Slope of log(spread) against log(lambda); NaN when fewer than two
  /// usable points remain.
  double slope = 0.0;
  /// All spreads vanish to 1e-12 relative: the direction preserves the
  /// degeneracy exactly.
  bool exact = false;
};

PreservationReport first_order_preservation_test(const System& sys, const Vector& v, const Vector& u,
                                                 const std::vector<double>& lambdas);

struct ScanReport {
  std::vector<double> grid;
  std::vector<double> energies;
  std::vector<double> gaps;
  std::vector<int> degrees;
  /// Ground density; the central density of the multiplet when g > 1.
  std::vector<Vector> densities;
  std::vector<double> crossings;
  bool shared_density = false;
  Vector shared_point;
  double max_deviation = 0.0;
  /// 0-based site pinned at 0 or 1 by the shared density, -1 if none.
  int boundary_site = -1;
  /// Distance of the shared point to D at the reference potentials
  /// (segment: v_I and v_II; ray: the apex).
  std::vector<double> membership_residuals;
  std::vector<std::string> notes;
};

/// v(lambda) = lambda v_I + (1 - lambda) v_II on a uniform grid over
/// [-margin, 1 + margin] that contains 0 and 1.
ScanReport segment_scan(const System& sys, const Vector& v_I, const Vector& v_II, int grid_n,
                        double margin = 0.1, int threads = 1);

/// v_A + s d for each s; points with |v|_inf > 1e4 are skipped.
ScanReport ray_scan(const System& sys, const Vector& v_A, const Vector& direction,
                    const std::vector<double>& s_values, int threads = 1);

struct PotentialFamily {
  std::string name;
  std::function<Vector(const std::vector<double>&)> potential;
  std::vector<std::vector<double>> parameters;
};

/// tetra-axis: v = s e_k, s in (0, s_max], k = 0..3.
PotentialFamily tetra_axis_family(int resolution, double s_max = 10.0);
/// square-diagonal: v = a (e_k - e_{k+2}), a in [-a_max, a_max], k = 0, 1.
PotentialFamily square_diagonal_family(int resolution, double a_max = 3.0);
PotentialFamily named_family(std::string_view name, int resolution);

struct SweepEntry {
  std::vector<double> params;
  int degree = 0;
  int kappa = 0;
  std::vector<Vector> points_projected;
};

/// Classifies every member of the family and samples D_R (n points) where
/// g >= 2.
std::vector<SweepEntry> structure_sweep(const System& sys, const PotentialFamily& family, int n,
                                        std::uint64_t seed, int threads = 1);

}  // namespace degeo
