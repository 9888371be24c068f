// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "degeo/common.hpp"
#include "degeo/system.hpp"

namespace degeo {

/// Lowest eigenvalue of H0 + V.
double energy(const System& sys, const Vector& v);

enum class InversionMethod {
  /// Newton ascent on the entropically smoothed dual with an increasing
  /// inverse temperature, each stage warm-started from the previous one.
  SmoothedNewton,
  /// Projected supergradient ascent with steps alpha0 / sqrt(t).
  Supergradient,
};

struct InversionOptions {
  double tol = 1e-7;
  int max_iter = 10000;
  InversionMethod method = InversionMethod::SmoothedNewton;
  double alpha0 = 1.0;
  double boundary_margin = 1e-6;
  /// Degeneracy threshold for the ground cluster at the iterate; defaults
  /// to the system's deg_tol when <= 0.
  double deg_tol = 0.0;
  double beta_max = 1e10;
  /// Starting potential (zero when empty).
  Vector v0;
};

struct InversionResult {
  Vector v_star;  // sum-zero gauge
  bool converged = false;
  /// Distance from the target to D(v_star).
  double residual = 0.0;
  int degree = 0;  // g at v_star
  bool boundary_flag = false;
  int iterations = 0;
  double energy = 0.0;  // E(v_star)
  /// Projection of the target onto D(v_star).
  Vector ground_density;
};

/// Maximizes G(v) = E(v) - <v, target> over sum-zero potentials. Throws
/// DomainError for targets outside the hypersimplex.
InversionResult invert_density(const System& sys, const Vector& target,
                               const InversionOptions& opts = {});

struct FunctionalValue {
  double value = 0.0;
  bool converged = false;
  /// Set when the inversion did not converge: value is then only the best
  /// lower bound sup_v G(v) attained.
  bool lower_bound = false;
  Vector v_star;
  double residual = 0.0;
};

/// F(rho) = sup_v E(v) - <v, rho>.
FunctionalValue universal_F(const System& sys, const Vector& target, const InversionOptions& opts = {});

/// F(rho) + <v, rho> - E(v); nonnegative for every v.
double fenchel_young_gap(const System& sys, double F, const Vector& rho, const Vector& v);

struct FunctionalPoint {
  double s1 = 0.0, s2 = 0.0;
  Vector density;
  bool in_domain = false;
  bool converged = false;
  double value = 0.0;
  int degree = 0;
};

/// F on the grid center + s1 d1 + s2 d2, s1, s2 in [-extent, extent].
/// Points outside the hypersimplex are flagged and skipped.
std::vector<FunctionalPoint> functional_surface(const System& sys, const Vector& center,
                                                const Vector& d1, const Vector& d2, int resolution,
                                                double extent, const InversionOptions& opts = {},
                                                int threads = 1);

struct RatioOptions {
  int samples = 100000;
  std::uint64_t seed = 1;
  double shrink = 1e-4;
  double deg_tol = 1e-6;
  double inv_tol = 1e-7;
  int threads = 1;
};

struct RatioEstimate {
  int drawn = 0;
  int accepted = 0;
  int degenerate = 0;
  int unconverged = 0;
  double ratio = 0.0;
  double standard_error = 0.0;
  RatioOptions options;
};

/// Fraction of the hypersimplex covered by densities whose inverted
/// potential has a degenerate ground state. Flat Dirichlet draws are
/// rejected when some rho_i > 1; `samples` counts accepted draws.
RatioEstimate degeneracy_ratio(const System& sys, const RatioOptions& opts = {});

/// Draws a uniform point of {rho_i >= 0, sum rho = N} with rho_i <= 1, or
/// returns false on rejection.
bool draw_hypersimplex(int sites, int particles, std::mt19937_64& rng, Vector& out);

/// Domain check used by the inversion: 0 <= rho_i <= 1 within 1e-10 and
/// sum rho = N within 1e-8.
void require_hypersimplex(const Vector& rho, int particles);

}  // namespace degeo
