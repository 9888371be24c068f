// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "degeo/parallel.hpp"

namespace degeo {

std::string_view to_string(RegionLevel level) {
  switch (level) {
    case RegionLevel::Real: return "R";
    case RegionLevel::Complex: return "C";
    case RegionLevel::Ensemble: return "ensemble";
  }
  return "?";
}

RegionLevel parse_region_level(std::string_view text) {
  if (text == "R" || text == "r" || text == "real") return RegionLevel::Real;
  if (text == "C" || text == "c" || text == "complex") return RegionLevel::Complex;
  if (text == "ensemble" || text == "D" || text == "d") return RegionLevel::Ensemble;
  throw DomainError("unknown region level '" + std::string(text) + "' (use R, C or ensemble)");
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

RegionSample make_sample(const DegeneracyClass& dc, RegionLevel level, int n) {
  if (n < 1) throw DomainError("sample count must be at least 1");
  RegionSample s;
  s.level = level;
  s.degree = dc.degree;
  s.kappa = dc.kappa;
  s.points.resize(n);
  s.params.resize(n);
  return s;
}

Matrix random_ensemble(int g, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  Matrix a = Matrix::Zero(g, g);
  double total = 0.0;
  for (int j = 0; j <= g; ++j) {
    const double w = expo(rng);
    const Vector x = random_unit_vector(g, rng);
    a += w * x * x.transpose();
    total += w;
  }
  return a / total;
}

}  // namespace

RegionSample sample_real(const DegeneracyClass& dc, int n, std::uint64_t seed, int threads) {
  RegionSample s = make_sample(dc, RegionLevel::Real, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t k) {
    auto rng = task_rng(seed, k);
    Vector x = random_unit_vector(dc.degree, rng);
    s.points[k] = rho_of_x(dc, x);
    s.params[k] = std::move(x);
  });
  return s;
}

RegionSample sample_complex(const DegeneracyClass& dc, int n, std::uint64_t seed, int threads) {
  RegionSample s = make_sample(dc, RegionLevel::Complex, n);
  const int g = dc.degree;
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t k) {
    auto rng = task_rng(seed, k);
    const Vector x = random_unit_vector(g, rng);
    const Vector y = random_unit_vector(g, rng);
    const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    s.points[k] = lambda * rho_of_x(dc, x) + (1.0 - lambda) * rho_of_x(dc, y);
    Vector p(2 * g + 1);
    p << x, y, lambda;
    s.params[k] = std::move(p);
  });
  return s;
}

RegionSample sample_ensemble(const DegeneracyClass& dc, int n, std::uint64_t seed, int threads) {
  RegionSample s = make_sample(dc, RegionLevel::Ensemble, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t k) {
    auto rng = task_rng(seed, k);
    const Matrix a = random_ensemble(dc.degree, rng);
    s.points[k] = apply_factor_map(dc, a);
    s.params[k] = vech(a);
  });
  return s;
}

RegionSample sample_region(const DegeneracyClass& dc, RegionLevel level, int n, std::uint64_t seed,
                           int threads) {
  switch (level) {
    case RegionLevel::Real: return sample_real(dc, n, seed, threads);
    case RegionLevel::Complex: return sample_complex(dc, n, seed, threads);
    case RegionLevel::Ensemble: return sample_ensemble(dc, n, seed, threads);
  }
  throw DomainError("unknown region level");
}

// ---------------------------------------------------------------------------
// Membership in D

Vector project_to_simplex(const Vector& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += u[k];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

namespace {

void require_target(const DegeneracyClass& dc, const Vector& target) {
  if (target.size() != dc.sites) throw DomainError("target density has the wrong dimension");
  if (std::abs(target.sum() - dc.particles) > 1e-8) {
    throw DomainError("target density must sum to N = " + std::to_string(dc.particles));
  }
}

Matrix project_to_spectraplex(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()));
  const Vector w = project_to_simplex(es.eigenvalues());
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

Matrix gradient(const DegeneracyClass& dc, const Vector& r) {
  Matrix g = Matrix::Zero(dc.degree, dc.degree);
  for (int i = 0; i < dc.sites; ++i) g += r(i) * dc.site_forms[i];
  return g;
}

// Squared operator norm of A -> (tr S_i A)_i with the Frobenius norm on Sym(g).
double lipschitz_constant(const DegeneracyClass& dc) {
  const int g = dc.degree;
  Matrix b(dc.sites, symmetric_dim(g));
  for (int i = 0; i < dc.sites; ++i) {
    const Matrix& s = dc.site_forms[i];
    for (int k = 0; k < g; ++k) b(i, k) = s(k, k);
    int c = g;
    for (auto [k, l] : veronese_pairs(g)) b(i, c++) = std::sqrt(2.0) * s(k, l);
  }
  const double smax = Eigen::JacobiSVD<Matrix>(b).singularValues()(0);
  return std::max(smax * smax, 1e-300);
}

// Exact least squares over {V B V^T : tr B = 1} for the leading eigenvectors
// V of a, then clipped back to the spectraplex.
std::optional<Matrix> polish_on_face(const DegeneracyClass& dc, const Matrix& a, const Vector& target,
                                     double rel_threshold) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const Vector& w = es.eigenvalues();
  const double wmax = w.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < w.size(); ++k)
    if (w(k) > rel_threshold * wmax) keep.push_back(k);
  const int r = static_cast<int>(keep.size());
  if (r == 0) return std::nullopt;
  Matrix v(dc.degree, r);
  for (int k = 0; k < r; ++k) v.col(k) = es.eigenvectors().col(keep[k]);

  const int q = symmetric_dim(r);
  const auto pairs = veronese_pairs(r);
  Matrix c(dc.sites, q);
  for (int i = 0; i < dc.sites; ++i) {
    const Matrix t = v.transpose() * dc.site_forms[i] * v;
    for (int k = 0; k < r; ++k) c(i, k) = t(k, k);
    for (int p = 0; p < static_cast<int>(pairs.size()); ++p)
      c(i, r + p) = 2.0 * t(pairs[p].first, pairs[p].second);
  }
  // Trace constraint e^T b = 1, e = indicator of the diagonal coordinates.
  Vector e = Vector::Zero(q);
  e.head(r).setOnes();
  const Vector b0 = e / static_cast<double>(r);
  Eigen::HouseholderQR<Matrix> qr(e);
  const Matrix z = Matrix(qr.householderQ()).rightCols(q - 1);
  Vector b = b0;
  if (q > 1) {
    const Vector y = (c * z).completeOrthogonalDecomposition().solve(target - c * b0);
    b = b0 + z * y;
  }
  Matrix bm(r, r);
  for (int k = 0; k < r; ++k) bm(k, k) = b(k);
  for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
    bm(pairs[p].first, pairs[p].second) = b(r + p);
    bm(pairs[p].second, pairs[p].first) = b(r + p);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> bes(bm);
  if (bes.eigenvalues().minCoeff() < -1e-9) return std::nullopt;
  return project_to_spectraplex(v * bm * v.transpose());
}

}  // namespace

MembershipResult membership_in_D(const DegeneracyClass& dc, const Vector& target,
                                 const EnsembleMembershipOptions& opts) {
  require_target(dc, target);
  const int g = dc.degree;
  const double lip = lipschitz_constant(dc);

  auto residual_of = [&](const Matrix& a) { return (apply_factor_map(dc, a) - target).norm(); };

  MembershipResult res;
  Matrix a = Matrix::Identity(g, g) / g;
  Matrix y = a;
  double t = 1.0;
  double f = 0.5 * std::pow(residual_of(a), 2);
  double lower_f = 0.0;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (it % 10 == 0) {
      // Frank-Wolfe gap: f(A) - f* <= <grad, A> - lambda_min(grad).
      const Matrix grad = gradient(dc, apply_factor_map(dc, a) - target);
      Eigen::SelfAdjointEigenSolver<Matrix> ges(grad, Eigen::EigenvaluesOnly);
      const double gap = (grad.cwiseProduct(a)).sum() - ges.eigenvalues()(0);
      lower_f = std::max(lower_f, f - gap);
      if (std::sqrt(2.0 * f) <= 0.1 * opts.tol) break;
      if (gap <= 1e-12 * f + 1e-300) break;
      if (opts.early_exit && std::sqrt(2.0 * std::max(0.0, lower_f)) > opts.tol) break;
    }
    const Matrix grad = gradient(dc, apply_factor_map(dc, y) - target);
    const Matrix next = project_to_spectraplex(y - grad / lip);
    const double fn = 0.5 * std::pow(residual_of(next), 2);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if (fn > f) {
      // adaptive restart
      y = a;
      t = 1.0;
      continue;
    }
    y = next + ((t - 1.0) / tn) * (next - a);
    a = next;
    t = tn;
    f = fn;
  }
  res.iterations = it;

  double best = residual_of(a);
  Matrix best_a = a;
  for (double thr : {1e-10, 1e-7, 1e-5, 1e-3}) {
    if (auto p = polish_on_face(dc, a, target, thr)) {
      const double r = residual_of(*p);
      if (r < best) {
        best = r;
        best_a = *p;
      }
    }
  }
  res.ensemble = best_a;
  res.residual = best;
  res.lower_bound = std::sqrt(2.0 * std::max(0.0, lower_f));
  res.member = best <= opts.tol;
  res.certified = !res.member && res.lower_bound > opts.tol;
  res.inconclusive = !res.member && !res.certified && it >= opts.max_iter;
  return res;
}

// ---------------------------------------------------------------------------
// Membership in D_C

namespace {

struct PurePoint {
  Vector a, b;
  double theta = 0.0;
};

Vector rho_unnormalized(const DegeneracyClass& dc, const Vector& a) {
  Vector rho(dc.sites);
  const double n2 = a.squaredNorm();
  for (int i = 0; i < dc.sites; ++i) rho(i) = a.dot(dc.site_forms[i] * a) / n2;
  return rho;
}

// d rho(a/|a|) / da, M x g
Matrix rho_jacobian(const DegeneracyClass& dc, const Vector& a, const Vector& rho) {
  const double n2 = a.squaredNorm();
  Matrix j(dc.sites, a.size());
  for (int i = 0; i < dc.sites; ++i)
    j.row(i) = (2.0 / n2) * (dc.site_forms[i] * a - rho(i) * a).transpose();
  return j;
}

Vector pure_residual(const DegeneracyClass& dc, const PurePoint& p, const Vector& target) {
  const double lambda = std::pow(std::cos(p.theta), 2);
  return lambda * rho_unnormalized(dc, p.a) + (1.0 - lambda) * rho_unnormalized(dc, p.b) - target;
}

PurePoint levenberg_marquardt(const DegeneracyClass& dc, PurePoint p, const Vector& target,
                              double tol) {
  const int g = dc.degree;
  const int np = 2 * g + 1;
  double mu = 1e-3;
  Vector r = pure_residual(dc, p, target);
  double cost = r.squaredNorm();
  for (int it = 0; it < 300 && std::sqrt(cost) > 0.01 * tol; ++it) {
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    const double lambda = c * c;
    const Vector ra = rho_unnormalized(dc, p.a);
    const Vector rb = rho_unnormalized(dc, p.b);
    Matrix jac(dc.sites, np);
    jac.leftCols(g) = lambda * rho_jacobian(dc, p.a, ra);
    jac.middleCols(g, g) = (1.0 - lambda) * rho_jacobian(dc, p.b, rb);
    jac.col(2 * g) = (ra - rb) * (-2.0 * c * s);
    const Matrix jtj = jac.transpose() * jac;
    const Vector jtr = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      Matrix lhs = jtj;
      lhs.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Vector step = lhs.ldlt().solve(-jtr);
      PurePoint q = p;
      q.a += step.head(g);
      q.b += step.segment(g, g);
      q.theta += step(2 * g);
      q.a /= q.a.norm();
      q.b /= q.b.norm();
      const Vector rq = pure_residual(dc, q, target);
      const double cq = rq.squaredNorm();
      if (cq < cost) {
        p = std::move(q);
        r = rq;
        if (cost - cq < 1e-16 * cost) it = 1 << 20;  // stalled
        cost = cq;
        mu = std::max(mu / 3.0, 1e-12);
        improved = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!improved) break;
  }
  return p;
}

// Near-uniform covering of the closed upper hemisphere (g = 3) or the upper
// half circle (g = 2). Returns the points and a bound on the chordal
// distance from any sphere point (up to sign) to the grid.
std::pair<std::vector<Vector>, double> covering_grid(int g, int resolution) {
  std::vector<Vector> pts;
  const double pi = std::numbers::pi;
  if (g == 1) {
    pts.push_back(Vector::Ones(1));
    return {pts, 0.0};
  }
  if (g == 2) {
    const int n = 2 * resolution;
    const double d = pi / n;
    for (int k = 0; k < n; ++k) {
      Vector x(2);
      x << std::cos(k * d), std::sin(k * d);
      pts.push_back(x);
    }
    return {pts, d / 2.0};
  }
  const int rings = std::max(resolution, 2);
  const double d = (pi / 2.0) / (rings - 1);
  for (int j = 0; j < rings; ++j) {
    const double th = j * d;
    const int nphi = std::max(1, static_cast<int>(std::ceil(2.0 * pi * std::sin(th) / d)));
    for (int k = 0; k < nphi; ++k) {
      const double ph = 2.0 * pi * k / nphi;
      Vector x(3);
      x << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
      pts.push_back(x);
    }
  }
  return {pts, d};
}

struct GridMinimum {
  double residual = std::numeric_limits<double>::infinity();
  std::size_t i = 0, j = 0;
  double lambda = 1.0;
};

GridMinimum grid_search(const Matrix& x /* K x M rows rho_k - target */) {
  const Eigen::Index k = x.rows();
  const Vector norms = x.rowwise().squaredNorm();
  GridMinimum best;
  const Eigen::Index block = 256;
  for (Eigen::Index start = 0; start < k; start += block) {
    const Eigen::Index nb = std::min(block, k - start);
    const Matrix gram = x.middleRows(start, nb) * x.transpose();  // nb x K
    for (Eigen::Index r = 0; r < nb; ++r) {
      const Eigen::Index i = start + r;
      const double aa = norms(i);
      for (Eigen::Index j = i; j < k; ++j) {
        // |lambda a + (1 - lambda) b|^2 with a = x_i, b = x_j
        const double ab = gram(r, j);
        const double bb = norms(j);
        const double dd = aa + bb - 2.0 * ab;
        double lambda = 1.0;
        if (dd > 0.0) lambda = std::clamp((bb - ab) / dd, 0.0, 1.0);
        const double val = lambda * lambda * aa + 2.0 * lambda * (1.0 - lambda) * ab +
                           (1.0 - lambda) * (1.0 - lambda) * bb;
        if (val < best.residual) {
          best.residual = val;
          best.i = static_cast<std::size_t>(i);
          best.j = static_cast<std::size_t>(j);
          best.lambda = lambda;
        }
      }
    }
  }
  best.residual = std::sqrt(std::max(0.0, best.residual));
  return best;
}

}  // namespace

MembershipResult membership_in_DC(const DegeneracyClass& dc, const Vector& target,
                                  const PureMembershipOptions& opts) {
  require_target(dc, target);
  const int g = dc.degree;
  MembershipResult res;

  PurePoint best;
  double best_res = std::numeric_limits<double>::infinity();
  auto consider = [&](const PurePoint& p) {
    const double r = pure_residual(dc, p, target).norm();
    if (r < best_res) {
      best_res = r;
      best = p;
    }
  };

  for (int s = 0; s < std::max(opts.restarts, 1) && best_res > opts.tol; ++s) {
    PurePoint p;
    auto rng = task_rng(opts.seed, static_cast<std::uint64_t>(s));
    if (s == 0) {
      p.a = Vector::Unit(g, 0);
      p.b = Vector::Unit(g, g > 1 ? 1 : 0);
      p.theta = std::numbers::pi / 4.0;
    } else {
      p.a = random_unit_vector(g, rng);
      p.b = random_unit_vector(g, rng);
      p.theta = std::uniform_real_distribution<double>(0.0, std::numbers::pi / 2.0)(rng);
    }
    consider(p);
    consider(levenberg_marquardt(dc, p, target, opts.tol));
  }

  if (best_res > opts.tol && opts.certify && g <= 3) {
    auto [grid, cover] = covering_grid(g, opts.grid_resolution);
    Matrix x(static_cast<Eigen::Index>(grid.size()), dc.sites);
    for (std::size_t k = 0; k < grid.size(); ++k)
      x.row(static_cast<Eigen::Index>(k)) = (rho_of_x(dc, grid[k]) - target).transpose();
    const GridMinimum gm = grid_search(x);
    double lip = 0.0;
    for (const auto& s : dc.site_forms) {
      const double n = Eigen::JacobiSVD<Matrix>(s).singularValues()(0);
      lip += n * n;
    }
    lip = 2.0 * std::sqrt(lip);
    res.lower_bound = std::max(0.0, gm.residual - lip * cover);
    res.certified = res.lower_bound > opts.tol;

    PurePoint p;
    p.a = grid[gm.i];
    p.b = grid[gm.j];
    p.theta = std::acos(std::sqrt(gm.lambda));
    consider(p);
    consider(levenberg_marquardt(dc, p, target, opts.tol));
  }

  res.residual = best_res;
  res.x = best.a / best.a.norm();
  res.y = best.b / best.b.norm();
  res.lambda = std::pow(std::cos(best.theta), 2);
  res.member = best_res <= opts.tol;
  if (res.member) res.certified = false;
  return res;
}

NonPureReport non_pure_check(const DegeneracyClass& dc, double tol,
                             const PureMembershipOptions& pure_opts) {
  NonPureReport rep;
  rep.condition_holds = dc.degree >= 3 && dc.kappa == 0;
  const MembershipResult d = membership_in_D(dc, dc.central, {tol});
  rep.in_D = d.member;
  rep.D_residual = d.residual;
  PureMembershipOptions po = pure_opts;
  po.tol = tol;
  const MembershipResult c = membership_in_DC(dc, dc.central, po);
  rep.in_DC = c.member;
  rep.DC_residual = c.residual;
  rep.DC_lower_bound = c.lower_bound;
  rep.certified = c.certified;
  rep.confirmed = rep.in_D && !rep.in_DC;
  return rep;
}

// ---------------------------------------------------------------------------
// Barycentric projection

Matrix helmert_basis(int sites) {
  if (sites < 2) throw DomainError("Helmert basis needs at least two sites");
  Matrix b = Matrix::Zero(sites, sites - 1);
  for (int j = 1; j < sites; ++j) {
    const double norm = std::sqrt(static_cast<double>(j) * (j + 1));
    for (int i = 0; i < j; ++i) b(i, j - 1) = 1.0 / norm;
    b(j, j - 1) = -static_cast<double>(j) / norm;
  }
  return b;
}

std::vector<Vector> barycentric_project(const std::vector<Vector>& points, int sites, int particles) {
  const Matrix basis = helmert_basis(sites);
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != sites) throw DomainError("density has the wrong dimension");
    if (std::abs(p.sum() - particles) > 1e-8) {
      throw DomainError("barycentric projection needs densities normalized to N");
    }
    out.push_back(basis.transpose() * p);
  }
  return out;
}

}  // namespace degeo
