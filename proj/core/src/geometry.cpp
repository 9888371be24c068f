// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "degeo/parallel.hpp"

namespace degeo {

DegeneracyDirections degeneracy_directions(const DegeneracyClass& dc, double rank_tol) {
  const int m = dc.sites;
  Eigen::JacobiSVD<Matrix> svd(dc.P.transpose(), Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rank_tol * smax) ++rank;

  DegeneracyDirections out;
  out.bound = m - dc.veronese_dim() + dc.kappa;
  out.raw_kernel = svd.matrixV().rightCols(m - rank);
  Matrix projected = out.raw_kernel;
  for (Eigen::Index c = 0; c < projected.cols(); ++c)
    projected.col(c).array() -= projected.col(c).mean();
  out.basis = Matrix(m, 0);
  if (projected.cols() > 0) {
    Eigen::JacobiSVD<Matrix> ps(projected, Eigen::ComputeThinU);
    int r = 0;
    for (Eigen::Index k = 0; k < ps.singularValues().size(); ++k)
      if (ps.singularValues()(k) > 1e-10) ++r;
    out.basis = ps.matrixU().leftCols(r);
  }
  out.dim = static_cast<int>(out.basis.cols());
  return out;
}

namespace {

double min_principal_cosine(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  const Vector s = Eigen::JacobiSVD<Matrix>(a.transpose() * b).singularValues();
  return s(s.size() - 1);
}

}  // namespace

PreservationReport first_order_preservation_test(const System& sys, const Vector& v, const Vector& u,
                                                 const std::vector<double>& lambdas) {
  if (u.size() != sys.sites()) throw DomainError("direction has the wrong dimension");
  if (std::abs(u.norm() - 1.0) > 1e-8) throw DomainError("direction must be normalized");
  const Eigenspace es0 = sys.ground(v);
  const int g = es0.degree;
  const double scale = std::max(1.0, std::abs(es0.energy));

  PreservationReport rep;
  rep.degree = g;
  std::vector<double> xs, ys;
  bool exact = true;
  for (double lambda : lambdas) {
    const Spectrum s = sys.spectrum(v + lambda * u);
    const double spread = s.eigenvalues(g - 1) - s.eigenvalues(0);
    const bool lost = min_principal_cosine(es0.basis, s.eigenvectors.leftCols(g)) < 0.5;
    rep.lambdas.push_back(lambda);
    rep.spreads.push_back(spread);
    rep.excluded.push_back(lost);
    if (lost) {
      rep.notes.push_back("lambda=" + std::to_string(lambda) + " excluded: multiplet lost by level crossing");
      continue;
    }
    if (spread > 1e-12 * scale) exact = false;
    if (spread > 1e-13 * scale && lambda != 0.0) {
      xs.push_back(std::log(std::abs(lambda)));
      ys.push_back(std::log(spread));
    }
  }
  rep.exact = exact && !rep.lambdas.empty();
  rep.slope = std::numeric_limits<double>::quiet_NaN();
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      mx += xs[k] / n;
      my += ys[k] / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    if (sxx > 0) rep.slope = sxy / sxx;
  }
  return rep;
}

namespace {

struct PointEval {
  double energy = 0.0;
  double gap = 0.0;
  int degree = 0;
  Vector density;
  Matrix states;
};

PointEval evaluate(const System& sys, const Vector& v) {
  const Eigenspace es = sys.ground(v);
  PointEval p;
  p.energy = es.energy;
  p.gap = es.gap;
  p.degree = es.degree;
  p.states = es.basis;
  p.density = Vector::Zero(sys.sites());
  for (int k = 0; k < es.degree; ++k) p.density += density_of_state(es.basis.col(k), *sys.basis());
  p.density /= es.degree;
  return p;
}

bool same_branch(const PointEval& a, const PointEval& b) {
  return a.degree == b.degree && min_principal_cosine(a.states, b.states) >= 0.5;
}

// Scan along v(x) over a sorted grid: energies, crossings and the common
// ground density.
ScanReport scan(const System& sys, const std::function<Vector(double)>& potential,
                const std::vector<double>& grid, int threads) {
  ScanReport rep;
  std::vector<PointEval> evals(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) { evals[k] = evaluate(sys, potential(grid[k])); });
  rep.grid = grid;
  for (const auto& e : evals) {
    rep.energies.push_back(e.energy);
    rep.gaps.push_back(e.gap);
    rep.degrees.push_back(e.degree);
    rep.densities.push_back(e.density);
  }
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if (same_branch(evals[k], evals[k + 1])) continue;
    double lo = grid[k], hi = grid[k + 1];
    while (hi - lo > 1e-8) {
      const double mid = 0.5 * (lo + hi);
      if (same_branch(evals[k], evaluate(sys, potential(mid)))) lo = mid;
      else hi = mid;
    }
    const double x = 0.5 * (lo + hi);
    if (rep.crossings.empty() || std::abs(x - rep.crossings.back()) > 1e-7) rep.crossings.push_back(x);
  }
  return rep;
}

void finish_shared(ScanReport& rep, const std::vector<std::size_t>& members) {
  if (members.empty()) return;
  const int m = static_cast<int>(rep.densities[members.front()].size());
  Vector lo = Vector::Constant(m, std::numeric_limits<double>::infinity());
  Vector hi = -lo;
  Vector mean = Vector::Zero(m);
  for (std::size_t k : members) {
    lo = lo.cwiseMin(rep.densities[k]);
    hi = hi.cwiseMax(rep.densities[k]);
    mean += rep.densities[k];
  }
  rep.shared_point = mean / static_cast<double>(members.size());
  rep.max_deviation = (hi - lo).maxCoeff();
  rep.shared_density = rep.max_deviation <= 1e-8;
}

void set_boundary_site(ScanReport& rep) {
  if (!rep.shared_density) return;
  for (Eigen::Index i = 0; i < rep.shared_point.size(); ++i) {
    if (rep.shared_point(i) <= 1e-8 || rep.shared_point(i) >= 1.0 - 1e-8) {
      rep.boundary_site = static_cast<int>(i);
      return;
    }
  }
}

double distance_to_region(const System& sys, const Vector& v, const Vector& rho) {
  const Classification c = sys.classify(v);
  return membership_in_D(c.dc, rho).residual;
}

}  // namespace

ScanReport segment_scan(const System& sys, const Vector& v_I, const Vector& v_II, int grid_n,
                        double margin, int threads) {
  if (grid_n < 3) throw DomainError("segment_scan needs grid_n >= 3");
  if (v_I.size() != sys.sites() || v_II.size() != sys.sites()) {
    throw DomainError("potentials have the wrong dimension");
  }
  std::vector<double> grid;
  for (int k = 0; k < grid_n; ++k)
    grid.push_back(-margin + (1.0 + 2.0 * margin) * k / (grid_n - 1));
  grid.push_back(0.0);
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             grid.end());

  ScanReport rep = scan(
      sys, [&](double l) -> Vector { return l * v_I + (1.0 - l) * v_II; }, grid, threads);
  std::vector<std::size_t> interior;
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (grid[k] > 1e-12 && grid[k] < 1.0 - 1e-12) interior.push_back(k);
  finish_shared(rep, interior);
  if (rep.shared_density) {
    rep.membership_residuals = {distance_to_region(sys, v_I, rep.shared_point),
                                distance_to_region(sys, v_II, rep.shared_point)};
    for (double r : rep.membership_residuals) {
      if (r > 1e-7) {
        rep.shared_density = false;
        rep.notes.push_back("interior density is not in both endpoint regions");
      }
    }
  }
  set_boundary_site(rep);
  return rep;
}

ScanReport ray_scan(const System& sys, const Vector& v_A, const Vector& direction,
                    const std::vector<double>& s_values, int threads) {
  if (v_A.size() != sys.sites() || direction.size() != sys.sites()) {
    throw DomainError("potentials have the wrong dimension");
  }
  if (direction.norm() == 0.0) throw DomainError("ray direction must be nonzero");
  std::vector<double> grid;
  std::vector<std::string> notes;
  for (double s : s_values) {
    if ((v_A + s * direction).cwiseAbs().maxCoeff() > 1e4) {
      notes.push_back("s=" + std::to_string(s) + " skipped: |v| exceeds 1e4");
      continue;
    }
    grid.push_back(s);
  }
  std::sort(grid.begin(), grid.end());
  ScanReport rep = scan(
      sys, [&](double s) -> Vector { return v_A + s * direction; }, grid, threads);
  rep.notes = std::move(notes);
  std::vector<std::size_t> all(grid.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  finish_shared(rep, all);
  if (rep.shared_density) rep.membership_residuals = {distance_to_region(sys, v_A, rep.shared_point)};
  set_boundary_site(rep);
  return rep;
}

PotentialFamily tetra_axis_family(int resolution, double s_max) {
  if (resolution < 1) throw DomainError("resolution must be positive");
  PotentialFamily f;
  f.name = "tetra-axis";
  f.potential = [](const std::vector<double>& p) {
    Vector v = Vector::Zero(4);
    v(static_cast<int>(p.at(1))) = p.at(0);
    return v;
  };
  for (int k = 0; k < 4; ++k)
    for (int j = 1; j <= resolution; ++j) f.parameters.push_back({s_max * j / resolution, double(k)});
  return f;
}

PotentialFamily square_diagonal_family(int resolution, double a_max) {
  if (resolution < 2) throw DomainError("resolution must be at least 2");
  PotentialFamily f;
  f.name = "square-diagonal";
  f.potential = [](const std::vector<double>& p) {
    const int k = static_cast<int>(p.at(1));
    Vector v = Vector::Zero(4);
    v(k) = p.at(0);
    v(k + 2) = -p.at(0);
    return v;
  };
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < resolution; ++j)
      f.parameters.push_back({-a_max + 2.0 * a_max * j / (resolution - 1), double(k)});
  return f;
}

PotentialFamily named_family(std::string_view name, int resolution) {
  if (name == "tetra-axis") return tetra_axis_family(resolution);
  if (name == "square-diagonal") return square_diagonal_family(resolution);
  throw DomainError("unknown potential family '" + std::string(name) +
                    "' (valid: tetra-axis, square-diagonal)");
}

std::vector<SweepEntry> structure_sweep(const System& sys, const PotentialFamily& family, int n,
                                        std::uint64_t seed, int threads) {
  std::vector<SweepEntry> out(family.parameters.size());
  parallel_for(out.size(), threads, [&](std::size_t k) {
    SweepEntry& e = out[k];
    e.params = family.parameters[k];
    const Classification c = sys.classify(family.potential(e.params));
    e.degree = c.dc.degree;
    e.kappa = c.dc.kappa;
    if (e.degree >= 2) {
      const RegionSample s = sample_real(c.dc, n, seed + k);
      e.points_projected = barycentric_project(s.points, sys.sites(), sys.particles());
    }
  });
  return out;
}

}  // namespace degeo
