// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/degmap.hpp"

#include <cmath>
#include <limits>

namespace degeo {

std::vector<std::pair<int, int>> veronese_pairs(int g) {
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < g; ++k)
    for (int l = k + 1; l < g; ++l) pairs.emplace_back(k, l);
  return pairs;
}

namespace {

void require_unit(const Vector& x) {
  if (x.size() == 0 || std::abs(x.norm() - 1.0) > 1e-10) {
    throw DomainError("coordinates must be a unit vector (|x| = " + std::to_string(x.norm()) + ")");
  }
}

}  // namespace

Vector veronese(const Vector& x) {
  require_unit(x);
  return vech(x * x.transpose());
}

Vector vech(const Matrix& a) {
  const int g = static_cast<int>(a.rows());
  Vector out(symmetric_dim(g));
  for (int k = 0; k < g; ++k) out(k) = a(k, k);
  int c = g;
  for (auto [k, l] : veronese_pairs(g)) out(c++) = a(k, l);
  return out;
}

DegeneracyClass build_class(const Eigenspace& es, const FockBasis& basis, double rank_tol) {
  if (!(rank_tol > 0.0)) throw DomainError("rank_tol must be positive");
  const int g = es.degree;
  const int m = basis.sites();
  if (g < 1 || es.basis.cols() != g || es.basis.rows() != static_cast<Eigen::Index>(basis.size())) {
    throw DomainError("eigenspace basis does not match the Fock basis");
  }

  DegeneracyClass dc;
  dc.degree = g;
  dc.particles = basis.particles();
  dc.sites = m;
  dc.states = es.basis;

  const Matrix& occ = basis.occupations();
  dc.site_forms.assign(m, Matrix::Zero(g, g));
  for (int i = 0; i < m; ++i) {
    const Matrix weighted = occ.col(i).asDiagonal() * es.basis;
    dc.site_forms[i] = es.basis.transpose() * weighted;
  }

  const int G = symmetric_dim(g);
  dc.P = Matrix::Zero(m, G);
  for (int k = 0; k < g; ++k) {
    Vector f(m);
    for (int i = 0; i < m; ++i) f(i) = dc.site_forms[i](k, k);
    dc.P.col(k) = f;
    dc.factors_diag.push_back(std::move(f));
  }
  int c = g;
  for (auto [k, l] : veronese_pairs(g)) {
    Vector f(m);
    for (int i = 0; i < m; ++i) f(i) = 2.0 * dc.site_forms[i](k, l);
    dc.P.col(c++) = f;
    dc.factors_off.push_back(std::move(f));
  }

  Eigen::JacobiSVD<Matrix> svd(dc.P, Eigen::ComputeFullV);
  dc.singular_values = svd.singularValues();
  const double smax = dc.singular_values.size() > 0 ? dc.singular_values(0) : 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < dc.singular_values.size(); ++k)
    if (dc.singular_values(k) > rank_tol * smax) ++rank;
  dc.kappa = G - rank;
  dc.dim_region = G - dc.kappa - 1;
  dc.kernel_basis = svd.matrixV().rightCols(dc.kappa);

  dc.central = Vector::Zero(m);
  for (const auto& f : dc.factors_diag) dc.central += f;
  dc.central /= g;
  return dc;
}

Vector rho_of_x(const DegeneracyClass& dc, const Vector& x) {
  if (x.size() != dc.degree) throw DomainError("rho_of_x: coordinate dimension must equal g");
  return dc.P * veronese(x);
}

Vector apply_factor_map(const DegeneracyClass& dc, const Matrix& a) {
  return dc.P * vech(a);
}

Vector rho_of_ensemble(const DegeneracyClass& dc, const Matrix& a) {
  const int g = dc.degree;
  if (a.rows() != g || a.cols() != g) throw DomainError("ensemble matrix must be g x g");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("ensemble matrix must be symmetric");
  }
  if (std::abs(a.trace() - 1.0) > 1e-10) throw DomainError("ensemble matrix must have trace 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("ensemble matrix must be positive semidefinite");
  }
  return apply_factor_map(dc, a);
}

Vector random_unit_vector(int g, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x(g);
  do {
    for (int k = 0; k < g; ++k) x(k) = normal(rng);
  } while (x.norm() < 1e-12);
  return x / x.norm();
}

KernelCheckReport kernel_nonintersection_check(const DegeneracyClass& dc, int samples,
                                               std::mt19937_64& rng) {
  if (samples < 1) throw DomainError("kernel check needs at least one sample");
  KernelCheckReport rep;
  rep.samples = samples;
  rep.min_norm = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Vector rho = rho_of_x(dc, random_unit_vector(dc.degree, rng));
    const double err = std::abs(rho.lpNorm<1>() - dc.particles);
    rep.max_normalization_error = std::max(rep.max_normalization_error, err);
    rep.min_norm = std::min(rep.min_norm, rho.norm());
  }
  rep.passed = rep.max_normalization_error <= 1e-10 && rep.min_norm > 0.0;
  return rep;
}

}  // namespace degeo
