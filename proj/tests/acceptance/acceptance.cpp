// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion.
//   degeo_acceptance [--quick]
// --quick draws 10^4 instead of 10^5 samples for the triangle and square
// ratios; the windows are unchanged.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "degeo/geometry.hpp"
#include "degeo/inversion.hpp"
#include "degeo/parallel.hpp"
#include "degeo/regions.hpp"
#include "degeo/system.hpp"
#include "oracles.hpp"

namespace {

using degeo::Matrix;
using degeo::System;
using degeo::Vector;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Verdict()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::printf("%s %s %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

System make_system(const char* name, int n) { return System({degeo::named_graph(name), n}); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int affine_rank(const std::vector<Vector>& pts, double rel_tol = 1e-8) {
  Vector mean = Vector::Zero(pts[0].size());
  for (const auto& p : pts) mean += p / static_cast<double>(pts.size());
  Matrix c(pts[0].size(), static_cast<Eigen::Index>(pts.size()));
  for (std::size_t k = 0; k < pts.size(); ++k) c.col(static_cast<Eigen::Index>(k)) = pts[k] - mean;
  const Vector sv = Eigen::JacobiSVD<Matrix>(c).singularValues();
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) r += sv(k) > rel_tol * std::max(1.0, sv(0));
  return r;
}

Vector orbital(int k) {
  switch (k) {
    case 0: return 0.5 * Vector{{1.0, 1.0, 1.0, 1.0}};
    case 1: return 0.5 * Vector{{-1.0, -1.0, 1.0, 1.0}};
    case 2: return 0.5 * Vector{{-1.0, 1.0, -1.0, 1.0}};
    default: return 0.5 * Vector{{1.0, -1.0, -1.0, 1.0}};
  }
}

Verdict tetra_fixture() {
  const auto t0 = std::chrono::steady_clock::now();
  const degeo::FockBasis basis(4, 2);
  degeo::Eigenspace es;
  es.degree = 3;
  es.basis.resize(6, 3);
  for (int k = 0; k < 3; ++k) {
    Matrix orb(4, 2);
    orb << orbital(0), orbital(k + 1);
    es.basis.col(k) = degeo::slater(orb, basis);
  }
  const degeo::DegeneracyClass dc = degeo::build_class(es, basis);
  double err = 0.0;
  for (const auto& f : dc.factors_diag) err = std::max(err, (f - Vector::Constant(4, 0.5)).cwiseAbs().maxCoeff());
  const Vector off[3] = {0.5 * Vector{{1.0, -1.0, -1.0, 1.0}}, 0.5 * Vector{{-1.0, 1.0, -1.0, 1.0}},
                         0.5 * Vector{{-1.0, -1.0, 1.0, 1.0}}};
  for (int k = 0; k < 3; ++k) err = std::max(err, (dc.factors_off[k] - off[k]).cwiseAbs().maxCoeff());
  // The orbital basis must span the computed ground multiplet.
  const degeo::Eigenspace ground = make_system("tetrahedron", 2).ground(Vector::Zero(4));
  const double span = (ground.basis * ground.basis.transpose() - es.basis * es.basis.transpose()).norm();
  const double secs = seconds_since(t0);
  const bool ok = err <= 1e-10 && span <= 1e-10 && dc.kappa == 2 && dc.dim_region == 3 && secs < 1.0;
  return {ok, "factor error " + fmt("%.2e", err) + ", kappa=" + std::to_string(dc.kappa) +
                  ", dimD=" + std::to_string(dc.dim_region) + ", span error " + fmt("%.1e", span)};
}

Verdict class_table() {
  struct Row {
    const char* name;
    Vector v;
    int g, kappa;
  };
  const std::vector<Row> rows = {{"triangle", Vector::Zero(3), 2, 0},
                                 {"square", Vector::Zero(4), 2, 1},
                                 {"tetrahedron", Vector::Zero(4), 3, 2},
                                 {"cuboctahedron", Vector::Zero(12), 3, 0},
                                 {"tetrahedron", Vector{{1.0, 0.0, 0.0, 0.0}}, 2, 0}};
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    const auto c = make_system(r.name, 2).classify(r.v);
    ok = ok && c.dc.degree == r.g && c.dc.kappa == r.kappa;
    detail += std::string(r.name) + "(" + std::to_string(c.dc.degree) + "," + std::to_string(c.dc.kappa) + ") ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 10.0, detail + "total " + fmt("%.2f s", secs)};
}

Verdict region_shapes() {
  const auto tri = make_system("triangle", 2).classify(Vector::Zero(3)).dc;
  const auto proj = degeo::barycentric_project(degeo::sample_real(tri, 5000, 1).points, 3, 2);
  const Vector center = degeo::helmert_basis(3).transpose() * tri.central;
  double rmin = 1e300, rmax = 0.0;
  for (const auto& p : proj) {
    rmin = std::min(rmin, (p - center).norm());
    rmax = std::max(rmax, (p - center).norm());
  }
  const double dev = rmax - rmin;

  const auto sq = make_system("square", 2).classify(Vector::Zero(4)).dc;
  const int sq_rank = affine_rank(degeo::sample_ensemble(sq, 2000, 2).points);

  const auto te = make_system("tetrahedron", 2).classify(Vector::Zero(4)).dc;
  const int te_rank = affine_rank(degeo::sample_ensemble(te, 2000, 3).points);
  // D is the convex hull of its pure-state points, so the extreme coordinates
  // are probed with a real-state sample of D.
  double top = 0.0;
  double touch = 1e300;
  for (const auto& p : degeo::sample_real(te, 20000, 4).points) {
    Eigen::Index arg = 0;
    const double mx = p.maxCoeff(&arg);
    if (mx > top) {
      top = mx;
      Vector t = Vector::Constant(4, 1.0 / 3);
      t(arg) = 1.0;
      touch = (p - t).norm();
    }
  }
  const bool ok = dev <= 1e-8 && sq_rank == 1 && te_rank == 3 && top >= 1.0 - 1e-3 && touch < 0.1;
  return {ok, "triangle radius " + fmt("%.10f", rmax) + " deviation " + fmt("%.1e", dev) + ", square rank " +
                  std::to_string(sq_rank) + ", tetrahedron rank " + std::to_string(te_rank) + ", max coordinate " +
                  fmt("%.6f", top) + " at distance " + fmt("%.1e", touch) + " from a touch point"};
}

Verdict non_pure() {
  const auto dc = make_system("cuboctahedron", 2).classify(Vector::Zero(12)).dc;
  const double tol = 1e-7;
  const Vector witness = degeo::rho_of_ensemble(dc, Matrix::Identity(3, 3) / 3.0);
  const double witness_err = (witness - dc.central).norm();
  const auto d = degeo::membership_in_D(dc, dc.central, {tol});
  const auto c = degeo::membership_in_DC(dc, dc.central, {tol});
  const bool ok = witness_err <= tol && d.member && d.residual <= tol && !c.member && c.certified &&
                  c.residual > 10 * tol && c.lower_bound > tol;
  return {ok, "D residual " + fmt("%.1e", d.residual) + ", I/3 witness error " + fmt("%.1e", witness_err) +
                  ", D_C residual " + fmt("%.4f", c.residual) + " certified lower bound " +
                  fmt("%.4f", c.lower_bound)};
}

Verdict directions_and_slopes() {
  const std::vector<double> lambdas = {1e-2, 1e-3, 1e-4};
  const System tetra = make_system("tetrahedron", 2);
  const int dim0 = degeo::degeneracy_directions(tetra.classify(Vector::Zero(4)).dc).dim;
  const Vector pin{{1.0, 0.0, 0.0, 0.0}};
  const auto dirs1 = degeo::degeneracy_directions(tetra.classify(pin).dc);
  bool ok = dim0 == 0 && dirs1.dim == 1;
  std::string detail = "dims " + std::to_string(dim0) + "/" + std::to_string(dirs1.dim);

  // Kernel directions: pinned tetrahedron (exact) and the square at v = 0.
  double kernel_min = std::numeric_limits<double>::infinity();
  auto kernel_slope = [&](const System& sys, const Vector& v, const Vector& u) {
    const auto r = degeo::first_order_preservation_test(sys, v, u, lambdas);
    const double s = r.exact ? std::numeric_limits<double>::infinity() : r.slope;
    kernel_min = std::min(kernel_min, std::isnan(s) ? -1.0 : s);
  };
  kernel_slope(tetra, pin, dirs1.basis.col(0));
  const System square = make_system("square", 2);
  const auto sq_dirs = degeo::degeneracy_directions(square.classify(Vector::Zero(4)).dc);
  for (Eigen::Index k = 0; k < sq_dirs.basis.cols(); ++k) kernel_slope(square, Vector::Zero(4), sq_dirs.basis.col(k));

  // Row-space directions: random sum-zero directions at the tetrahedron
  // (no kernel there) and the square direction orthogonal to its kernel.
  double row_dev = 0.0;
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 5; ++t) {
    Vector u(4);
    for (int i = 0; i < 4; ++i) u(i) = normal(rng);
    u = (u.array() - u.mean()).matrix().normalized();
    const auto r = degeo::first_order_preservation_test(tetra, Vector::Zero(4), u, lambdas);
    row_dev = std::max(row_dev, std::isnan(r.slope) ? 1e9 : std::abs(r.slope - 1.0));
  }
  Vector u{{1.0, 1.0, -1.0, -1.0}};
  u -= sq_dirs.basis * (sq_dirs.basis.transpose() * u);
  u.normalize();
  const auto r = degeo::first_order_preservation_test(square, Vector::Zero(4), u, lambdas);
  row_dev = std::max(row_dev, std::isnan(r.slope) ? 1e9 : std::abs(r.slope - 1.0));

  ok = ok && kernel_min >= 1.9 && row_dev <= 0.2;
  return {ok, detail + ", min kernel slope " + fmt("%.3f", kernel_min) + " (inf = exact), row-space |slope-1| <= " +
                  fmt("%.3f", row_dev)};
}

Verdict ray() {
  const System sys = make_system("tetrahedron", 2);
  const auto rep = degeo::ray_scan(sys, Vector::Zero(4), Vector{{1.0, 0.0, 0.0, 0.0}}, {-0.5, -1.0, -2.0, -5.0});
  const Vector target{{1.0, 1.0 / 3, 1.0 / 3, 1.0 / 3}};
  double dev = 0.0;
  for (const auto& d : rep.densities) dev = std::max(dev, (d - target).cwiseAbs().maxCoeff());
  const auto dc = sys.classify(Vector::Zero(4)).dc;
  const auto m = degeo::membership_in_D(dc, target);
  const bool ok = rep.densities.size() == 4 && dev <= 1e-8 && m.member;
  return {ok, "max deviation " + fmt("%.1e", dev) + ", membership residual in D(0) " + fmt("%.1e", m.residual)};
}

Verdict ratio(const char* name, int samples, double lo, double hi) {
  degeo::RatioOptions opts;
  opts.samples = samples;
  opts.seed = 1;
  opts.threads = degeo::resolve_threads(0);
  const auto t0 = std::chrono::steady_clock::now();
  const auto est = degeo::degeneracy_ratio(make_system(name, 2), opts);
  const double secs = seconds_since(t0);
  const bool ok = est.ratio >= lo && est.ratio <= hi && secs <= 600.0;
  return {ok, std::string(name) + " " + fmt("%.4f", est.ratio) + " +- " + fmt("%.4f", est.standard_error) +
                  " from " + std::to_string(est.accepted) + " samples (" + std::to_string(est.unconverged) +
                  " unconverged), window [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "]"};
}

Verdict duality() {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  // Round trip on generic interior potentials.
  const System diamond = make_system("diamond", 2);
  double rt = 0.0;
  int done = 0;
  while (done < 50) {
    Vector v(4);
    for (int i = 0; i < 4; ++i) v(i) = unif(rng);
    v = (v.array() - v.mean()).matrix();
    const auto es = diamond.ground(v);
    if (es.degree != 1 || es.gap < 1e-3) continue;
    const Vector rho = degeo::density_of_state(es.basis.col(0), *diamond.basis());
    if (rho.minCoeff() < 1e-3 || rho.maxCoeff() > 1 - 1e-3) continue;
    const auto r = degeo::invert_density(diamond, rho);
    rt = std::max(rt, r.converged ? (r.v_star - v).cwiseAbs().maxCoeff() : 1e9);
    ++done;
  }

  // Concavity and Fenchel-Young on random probes.
  const System square = make_system("square", 2);
  double concave = 0.0, fy = 0.0;
  for (int t = 0; t < 200; ++t) {
    Vector a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a(i) = 2 * normal(rng);
      b(i) = 2 * normal(rng);
    }
    const double mix = 0.5 * (degeo::energy(square, a) + degeo::energy(square, b)) - degeo::energy(square, 0.5 * (a + b));
    concave = std::max(concave, mix);
    const auto es = square.ground(a);
    if (es.degree != 1) continue;
    const Vector rho = degeo::density_of_state(es.basis.col(0), *square.basis());
    const double F = degeo::energy(square, a) - a.dot(rho);
    fy = std::max(fy, -degeo::fenchel_young_gap(square, F, rho, b));
  }

  // Flatness on D(v) for the two square fixtures.
  double flat = 0.0;
  for (const Vector& v : {Vector{{1.0, 0.0, -1.0, 0.0}}, Vector{{0.0, 1.0, 0.0, -1.0}}}) {
    const auto dc = square.classify(v).dc;
    const double e = degeo::energy(square, v);
    for (const auto& rho : degeo::sample_ensemble(dc, 10, 5).points) {
      const auto f = degeo::universal_F(square, rho);
      flat = std::max(flat, f.converged ? std::abs(f.value - (e - v.dot(rho))) : 1e9);
    }
  }

  // Kink across the diagonal through the square center.
  const Vector c = Vector::Constant(4, 0.5);
  const Vector d = 0.5 * Vector{{1.0, -1.0, -1.0, 1.0}};
  auto F = [&](double s) { return degeo::universal_F(square, c + s * d).value; };
  const double s = 0.1, h = 0.02;
  const double kink = (F(s + h) - F(s)) / h - (F(-s) - F(-s - h)) / h;

  const bool ok = rt <= 1e-5 && concave <= 1e-9 && fy <= 1e-9 && flat <= 2e-6 && kink > 0.1;
  return {ok, "round trip " + fmt("%.1e", rt) + ", concavity violation " + fmt("%.1e", concave) +
                  ", Fenchel-Young violation " + fmt("%.1e", fy) + ", flatness " + fmt("%.1e", flat) +
                  ", slope jump " + fmt("%.3f", kink)};
}

Verdict oracles() {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  double lift = 0.0;
  for (int m = 1; m <= 4; ++m) {
    Matrix h(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = normal(rng);
    for (int n = 1; n <= m; ++n) {
      const auto basis = degeo::make_basis(m, n);
      const Matrix a = degeo::lift_one_body({h}, basis).H;
      lift = std::max(lift, (a - oracle::full_fock_lift(h, basis->states())).cwiseAbs().maxCoeff());
    }
  }
  double recon = 0.0;
  for (int L : {1, 2, 10, 50, 100}) {
    Matrix a(L, L);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = normal(rng);
    const auto s = degeo::eig_sym(a);
    const Matrix back = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    recon = std::max(recon, (back - a).norm() / a.norm());
  }
  return {lift <= 1e-12 && recon <= 1e-8,
          "lift error " + fmt("%.1e", lift) + ", relative reconstruction error " + fmt("%.1e", recon)};
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const int big = quick ? 10000 : 100000;
  report("AC1", "tetrahedron fixture", tetra_fixture);
  report("AC2", "class table", class_table);
  report("AC3", "region shapes", region_shapes);
  report("AC4", "non-pure central density", non_pure);
  report("AC5", "degeneracy directions and slopes", directions_and_slopes);
  report("AC6", "tetrahedron ray", ray);
  report("AC7a", "triangle ratio", [&] { return ratio("triangle", big, 0.595, 0.615); });
  report("AC7b", "square ratio", [&] { return ratio("square", big, 0.579, 0.599); });
  report("AC7c", "tetrahedron ratio", [] { return ratio("tetrahedron", 10000, 0.528, 0.703); });
  report("AC8", "duality and inversion", duality);
  report("AC9", "Fock and eigensolver oracles", oracles);
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
