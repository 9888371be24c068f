// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/regions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "degeo/system.hpp"
#include "oracles.hpp"

namespace degeo {
namespace {

DegeneracyClass make_class(const char* name, int n, const Vector& v) {
  return System({named_graph(name), n}).classify(v).dc;
}

DegeneracyClass tetra() { return make_class("tetrahedron", 2, Vector::Zero(4)); }

TEST(RegionLevel, ParsesNames) {
  EXPECT_EQ(parse_region_level("R"), RegionLevel::Real);
  EXPECT_EQ(parse_region_level("C"), RegionLevel::Complex);
  EXPECT_EQ(parse_region_level("ensemble"), RegionLevel::Ensemble);
  EXPECT_EQ(parse_region_level("D"), RegionLevel::Ensemble);
  EXPECT_EQ(to_string(RegionLevel::Complex), "C");
  EXPECT_THROW(parse_region_level("X"), DomainError);
}

TEST(Helmert, OrthonormalSumZeroColumns) {
  for (int m : {2, 3, 4, 7}) {
    const Matrix b = helmert_basis(m);
    EXPECT_LE((b.transpose() * b - Matrix::Identity(m - 1, m - 1)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE(b.colwise().sum().cwiseAbs().maxCoeff(), 1e-14);
  }
  EXPECT_THROW(helmert_basis(1), DomainError);
  const auto origin = barycentric_project({Vector::Constant(4, 0.5)}, 4, 2);
  EXPECT_LE(origin[0].norm(), 1e-15);
  EXPECT_THROW(barycentric_project({Vector::Ones(4)}, 4, 2), DomainError);
}

TEST(Regions, TriangleRealRegionIsCircle) {
  const DegeneracyClass dc = make_class("triangle", 2, Vector::Zero(3));
  const RegionSample s = sample_real(dc, 300, 4);
  ASSERT_EQ(s.points.size(), 300u);
  const auto proj = barycentric_project(s.points, 3, 2);
  const Vector center = helmert_basis(3).transpose() * dc.central;
  EXPECT_LE(center.norm(), 1e-12);
  for (const auto& p : proj) EXPECT_NEAR((p - center).norm(), 1.0 / std::sqrt(6.0), 1e-12);
}

TEST(Regions, OrthogonalCoordinatesGiveAntipodalPoints) {
  const DegeneracyClass dc = make_class("triangle", 2, Vector::Zero(3));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const Vector x = random_unit_vector(2, rng);
    const Vector y{{-x(1), x(0)}};
    EXPECT_LE((rho_of_x(dc, x) + rho_of_x(dc, y) - 2.0 * dc.central).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Regions, PinnedTetrahedronRealRegionIsPlanarConic) {
  const DegeneracyClass dc = make_class("tetrahedron", 2, Vector{{1.0, 0.0, 0.0, 0.0}});
  ASSERT_EQ(dc.degree, 2);
  ASSERT_EQ(dc.kappa, 0);
  const auto proj = barycentric_project(sample_real(dc, 60, 8).points, 4, 2);
  Matrix centered(3, 60);
  Vector mean = Vector::Zero(3);
  for (const auto& p : proj) mean += p / 60.0;
  for (int k = 0; k < 60; ++k) centered.col(k) = proj[k] - mean;
  Eigen::JacobiSVD<Matrix> plane(centered, Eigen::ComputeFullU);
  EXPECT_LE(plane.singularValues()(2), 1e-10);
  // General conic a u^2 + b uv + c v^2 + d u + e v + f = 0 through all points.
  Matrix design(60, 6);
  for (int k = 0; k < 60; ++k) {
    const double u = plane.matrixU().col(0).dot(centered.col(k));
    const double v = plane.matrixU().col(1).dot(centered.col(k));
    design.row(k) << u * u, u * v, v * v, u, v, 1.0;
  }
  Eigen::JacobiSVD<Matrix> conic(design, Eigen::ComputeFullV);
  const Vector sv = conic.singularValues();
  EXPECT_LE(sv(5), 1e-10 * sv(0));
  const Vector q = conic.matrixV().col(5);
  EXPECT_LT(q(1) * q(1) - 4.0 * q(0) * q(2), 0.0);  // ellipse
}

TEST(Regions, InclusionChain) {
  const DegeneracyClass dc = tetra();
  const RegionSample real = sample_real(dc, 20, 1);
  const RegionSample cplx = sample_complex(dc, 20, 2);
  const RegionSample ens = sample_ensemble(dc, 20, 3);
  for (const auto& p : real.points) {
    EXPECT_TRUE(membership_in_DC(dc, p).member);
    EXPECT_TRUE(membership_in_D(dc, p).member);
  }
  for (const auto& p : cplx.points) {
    EXPECT_TRUE(membership_in_DC(dc, p).member);
    EXPECT_TRUE(membership_in_D(dc, p).member);
  }
  for (const auto& p : ens.points) {
    const MembershipResult r = membership_in_D(dc, p);
    EXPECT_TRUE(r.member);
    EXPECT_LE((rho_of_ensemble(dc, r.ensemble) - p).norm(), 1e-7);
  }
}

TEST(Regions, SamplingIsDeterministicAcrossThreads) {
  const DegeneracyClass dc = tetra();
  for (RegionLevel level : {RegionLevel::Real, RegionLevel::Complex, RegionLevel::Ensemble}) {
    const RegionSample a = sample_region(dc, level, 50, 17, 1);
    const RegionSample b = sample_region(dc, level, 50, 17, 4);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) EXPECT_EQ(a.points[k], b.points[k]);
    EXPECT_NE(sample_region(dc, level, 5, 18).points[0], a.points[0]);
  }
}

TEST(Membership, CornerIsCertifiedNonMember) {
  const DegeneracyClass dc = tetra();
  const Vector corner{{1.0, 1.0, 0.0, 0.0}};
  const MembershipResult r = membership_in_D(dc, corner);
  EXPECT_FALSE(r.member);
  EXPECT_TRUE(r.certified);
  EXPECT_NEAR(r.residual, 0.5, 1e-6);
  EXPECT_GT(r.lower_bound, 0.1);
  EXPECT_LE(r.lower_bound, r.residual + 1e-12);
  EXPECT_GT(oracle::hyperplane_lower_bound(dc.site_forms, corner, 2000, 5), 0.1);
}

TEST(Membership, TouchPointIsMember) {
  const DegeneracyClass dc = tetra();
  const Vector touch{{1.0, 1.0 / 3, 1.0 / 3, 1.0 / 3}};
  const MembershipResult r = membership_in_D(dc, touch);
  EXPECT_TRUE(r.member);
  EXPECT_LE(r.residual, 1e-9);
  EXPECT_LE((rho_of_ensemble(dc, r.ensemble) - touch).norm(), 1e-9);
}

TEST(Membership, SquareCentralDensityIsPure) {
  const DegeneracyClass dc = make_class("square", 2, Vector::Zero(4));
  const MembershipResult r = membership_in_DC(dc, dc.central);
  EXPECT_TRUE(r.member);
  const Vector rebuilt = r.lambda * rho_of_x(dc, r.x) + (1.0 - r.lambda) * rho_of_x(dc, r.y);
  EXPECT_LE((rebuilt - dc.central).norm(), 1e-7);
}

TEST(Membership, RejectsMalformedTargets) {
  const DegeneracyClass dc = tetra();
  EXPECT_THROW(membership_in_D(dc, Vector::Constant(3, 2.0 / 3)), DomainError);
  EXPECT_THROW(membership_in_D(dc, Vector::Constant(4, 0.4)), DomainError);
}

TEST(NonPure, CuboctahedronCentralDensity) {
  const DegeneracyClass dc = make_class("cuboctahedron", 2, Vector::Zero(12));
  const NonPureReport rep = non_pure_check(dc);
  EXPECT_TRUE(rep.condition_holds);
  EXPECT_TRUE(rep.in_D);
  EXPECT_FALSE(rep.in_DC);
  EXPECT_TRUE(rep.confirmed);
  EXPECT_TRUE(rep.certified);
  EXPECT_GT(rep.DC_lower_bound, 1e-7);
  EXPECT_LE(rep.DC_lower_bound, rep.DC_residual);
}

TEST(NonPure, TetrahedronConditionFails) {
  const NonPureReport rep = non_pure_check(tetra());
  EXPECT_FALSE(rep.condition_holds);
  EXPECT_TRUE(rep.in_D);
  EXPECT_TRUE(rep.in_DC);
  EXPECT_FALSE(rep.confirmed);
}

TEST(ProjectToSimplex, Cases) {
  EXPECT_TRUE(project_to_simplex(Vector{{0.2, 0.8}}).isApprox(Vector{{0.2, 0.8}}));
  EXPECT_TRUE(project_to_simplex(Vector{{2.0, 0.0}}).isApprox(Vector{{1.0, 0.0}}));
  const Vector p = project_to_simplex(Vector{{0.5, 0.5, -1.0}});
  EXPECT_NEAR(p.sum(), 1.0, 1e-15);
  EXPECT_GE(p.minCoeff(), 0.0);
  EXPECT_NEAR(p(2), 0.0, 1e-15);
}

}  // namespace
}  // namespace degeo
