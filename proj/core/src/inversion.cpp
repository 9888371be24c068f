// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "degeo/parallel.hpp"
#include "degeo/regions.hpp"

namespace degeo {

double energy(const System& sys, const Vector& v) { return sys.energy(v); }

void require_hypersimplex(const Vector& rho, int particles) {
  if (!rho.allFinite()) throw DomainError("density must be finite");
  if (rho.minCoeff() < -1e-10 || rho.maxCoeff() > 1.0 + 1e-10) {
    throw DomainError("density leaves the hypersimplex (entries must lie in [0, 1])");
  }
  if (std::abs(rho.sum() - particles) > 1e-8) {
    throw DomainError("density must sum to N = " + std::to_string(particles));
  }
}

namespace {

constexpr double kMaxPotential = 1e4;

Vector centered(Vector v) {
  v.array() -= v.mean();
  return v;
}

struct Smoothed {
  double value = 0.0;
  Vector grad;
  Matrix hess;
};

// (1 - exp(-x)) / x for x >= 0
double phi(double x) { return x < 1e-12 ? 1.0 - 0.5 * x : -std::expm1(-x) / x; }

// G_beta(v) = -log(tr exp(-beta H_v)) / beta - <v, t> with gradient
// rho_beta - t and Hessian d rho_beta / dv.
Smoothed smoothed_dual(const System& sys, const Vector& v, const Vector& t, double beta,
                       bool with_hessian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sys.hamiltonian(v));
  const Vector& e = es.eigenvalues();
  const Matrix& u = es.eigenvectors();
  const Matrix& occ = sys.occupations();
  const Eigen::Index L = e.size();
  const int m = sys.sites();

  Vector w(L);
  for (Eigen::Index k = 0; k < L; ++k) w(k) = std::exp(-beta * (e(k) - e(0)));
  const double z = w.sum();
  const Vector p = w / z;

  Smoothed s;
  s.value = e(0) - std::log(z) / beta - v.dot(t);
  const Matrix diag_n = u.cwiseAbs2().transpose() * occ;  // (N_i)_kk, L x M
  const Vector rho = diag_n.transpose() * p;
  s.grad = rho - t;
  if (!with_hessian) return s;

  Eigen::Index active = 0;
  while (active < L && w(active) > 1e-30) ++active;
  // rows k < active of N_i = U^T diag(occ_i) U
  std::vector<Matrix> n(m);
  for (int i = 0; i < m; ++i)
    n[i] = u.leftCols(active).transpose() * occ.col(i).asDiagonal() * u;
  Matrix d(active, L);
  for (Eigen::Index k = 0; k < active; ++k) {
    for (Eigen::Index l = 0; l < L; ++l) {
      const Eigen::Index lo = e(k) <= e(l) ? k : l;
      const double val = -beta * p(lo) * phi(beta * std::abs(e(l) - e(k)));
      d(k, l) = l < active ? val : 2.0 * val;
    }
  }
  s.hess = beta * rho * rho.transpose();
  for (int i = 0; i < m; ++i) {
    const Matrix ni_d = n[i].cwiseProduct(d);
    for (int j = i; j < m; ++j) {
      const double h = ni_d.cwiseProduct(n[j]).sum();
      s.hess(i, j) += h;
      if (j != i) s.hess(j, i) += h;
    }
  }
  return s;
}

struct ClusterCheck {
  int degree = 1;
  double residual = std::numeric_limits<double>::infinity();
  Vector projection;
  double energy = 0.0;
};

// Distance from t to D(v) using the ground cluster at v.
ClusterCheck check_cluster(const System& sys, const Vector& v, const Vector& t, double deg_tol,
                           double tol) {
  const Eigenspace es = sys.ground(v, deg_tol);
  ClusterCheck c;
  c.degree = es.degree;
  c.energy = es.energy;
  if (es.degree == 1) {
    c.projection = density_of_state(es.basis.col(0), *sys.basis());
    c.residual = (c.projection - t).norm();
    return c;
  }
  const DegeneracyClass dc = build_class(es, *sys.basis(), sys.spec().rank_tol);
  EnsembleMembershipOptions mo;
  mo.tol = tol;
  mo.early_exit = true;
  const MembershipResult mr = membership_in_D(dc, t, mo);
  c.projection = apply_factor_map(dc, mr.ensemble);
  c.residual = mr.residual;
  return c;
}

InversionResult finish(const System& sys, const Vector& v, const ClusterCheck& c, double tol, int it) {
  InversionResult r;
  r.v_star = centered(v);
  r.residual = c.residual;
  r.converged = c.residual <= tol;
  r.degree = c.degree;
  r.energy = sys.energy(r.v_star);
  r.ground_density = c.projection;
  r.iterations = it;
  return r;
}

InversionResult invert_newton(const System& sys, const Vector& t, Vector v, const InversionOptions& o,
                              double deg_tol) {
  const int m = sys.sites();
  int iterations = 0;
  ClusterCheck c = check_cluster(sys, v, t, deg_tol, o.tol);
  if (c.residual <= o.tol) return finish(sys, v, c, o.tol, 0);

  const double stage_tol = 1e-2 * o.tol;
  bool diverged = false;
  for (double beta = 1.0; beta <= o.beta_max * (1 + 1e-12) && !diverged; beta *= 10.0) {
    for (int it = 0; it < 200 && iterations < o.max_iter; ++it) {
      const Smoothed s = smoothed_dual(sys, v, t, beta, true);
      const double gnorm = s.grad.norm();
      if (gnorm <= stage_tol) break;
      ++iterations;

      Matrix lhs = -s.hess;
      const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
      lhs.diagonal().array() += 1e-12 * scale;
      lhs.array() += 1.0 / m;
      Vector d = centered(lhs.ldlt().solve(s.grad));
      if (!d.allFinite()) d = s.grad;
      const double dmax = d.cwiseAbs().maxCoeff();
      if (dmax > 10.0) d *= 10.0 / dmax;
      const double slope = s.grad.dot(d);

      bool accepted = false;
      for (double alpha = 1.0; alpha > 1e-12; alpha *= 0.5) {
        const Vector trial = v + alpha * d;
        const Smoothed st = smoothed_dual(sys, trial, t, beta, false);
        // Near the optimum at large beta, G changes below rounding; then the
        // gradient norm decides.
        const bool flat = std::abs(st.value - s.value) <= 1e-13 * (1.0 + std::abs(s.value));
        if (st.value >= s.value + 1e-4 * alpha * slope || (flat && st.grad.norm() < gnorm)) {
          v = trial;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      if (v.cwiseAbs().maxCoeff() > kMaxPotential) {
        diverged = true;
        break;
      }
    }
    c = check_cluster(sys, v, t, deg_tol, o.tol);
    if (c.residual <= o.tol || iterations >= o.max_iter) break;
  }
  return finish(sys, v, c, o.tol, iterations);
}

InversionResult invert_supergradient(const System& sys, const Vector& t, Vector v,
                                     const InversionOptions& o, double deg_tol) {
  ClusterCheck c;
  int it = 1;
  for (; it <= o.max_iter; ++it) {
    c = check_cluster(sys, v, t, deg_tol, o.tol);
    if (c.residual <= o.tol) break;
    v = centered(v + (o.alpha0 / std::sqrt(static_cast<double>(it))) * (c.projection - t));
    if (v.cwiseAbs().maxCoeff() > kMaxPotential) break;
  }
  return finish(sys, v, c, o.tol, std::min(it, o.max_iter));
}

}  // namespace

InversionResult invert_density(const System& sys, const Vector& target, const InversionOptions& opts) {
  if (target.size() != sys.sites()) throw DomainError("target density has the wrong dimension");
  require_hypersimplex(target, sys.particles());
  if (!(opts.tol > 0.0)) throw DomainError("inversion tolerance must be positive");
  const double deg_tol = opts.deg_tol > 0.0 ? opts.deg_tol : sys.spec().deg_tol;
  Vector v0 = opts.v0.size() == 0 ? Vector::Zero(sys.sites()) : opts.v0;
  if (v0.size() != sys.sites()) throw DomainError("starting potential has the wrong dimension");
  v0 = centered(v0);

  InversionResult r = opts.method == InversionMethod::SmoothedNewton
                          ? invert_newton(sys, target, v0, opts, deg_tol)
                          : invert_supergradient(sys, target, v0, opts, deg_tol);
  r.boundary_flag = target.minCoeff() <= opts.boundary_margin ||
                    target.maxCoeff() >= 1.0 - opts.boundary_margin;
  return r;
}

FunctionalValue universal_F(const System& sys, const Vector& target, const InversionOptions& opts) {
  const InversionResult r = invert_density(sys, target, opts);
  FunctionalValue f;
  f.value = r.energy - r.v_star.dot(target);
  f.converged = r.converged;
  f.lower_bound = !r.converged;
  f.v_star = r.v_star;
  f.residual = r.residual;
  return f;
}

double fenchel_young_gap(const System& sys, double F, const Vector& rho, const Vector& v) {
  return F + v.dot(rho) - sys.energy(v);
}

std::vector<FunctionalPoint> functional_surface(const System& sys, const Vector& center,
                                                const Vector& d1, const Vector& d2, int resolution,
                                                double extent, const InversionOptions& opts,
                                                int threads) {
  const int m = sys.sites();
  if (center.size() != m || d1.size() != m || d2.size() != m) {
    throw DomainError("plane vectors must have M entries");
  }
  if (resolution < 2) throw DomainError("resolution must be at least 2");
  if (std::abs(center.sum() - sys.particles()) > 1e-8 || std::abs(d1.sum()) > 1e-8 ||
      std::abs(d2.sum()) > 1e-8) {
    throw DomainError("plane must lie in sum(rho) = N: center sums to N, directions to 0");
  }
  std::vector<FunctionalPoint> pts(static_cast<std::size_t>(resolution) * resolution);
  parallel_for(pts.size(), threads, [&](std::size_t k) {
    FunctionalPoint& p = pts[k];
    const int a = static_cast<int>(k) / resolution;
    const int b = static_cast<int>(k) % resolution;
    p.s1 = -extent + 2.0 * extent * a / (resolution - 1);
    p.s2 = -extent + 2.0 * extent * b / (resolution - 1);
    p.density = center + p.s1 * d1 + p.s2 * d2;
    p.in_domain = p.density.minCoeff() >= -1e-12 && p.density.maxCoeff() <= 1.0 + 1e-12;
    if (!p.in_domain) return;
    p.density = p.density.cwiseMax(0.0).cwiseMin(1.0);
    const InversionResult r = invert_density(sys, p.density, opts);
    p.converged = r.converged;
    p.value = r.energy - r.v_star.dot(p.density);
    p.degree = r.degree;
  });
  return pts;
}

bool draw_hypersimplex(int sites, int particles, std::mt19937_64& rng, Vector& out) {
  std::exponential_distribution<double> expo(1.0);
  out.resize(sites);
  for (int i = 0; i < sites; ++i) out(i) = expo(rng);
  out *= particles / out.sum();
  return out.maxCoeff() <= 1.0;
}

RatioEstimate degeneracy_ratio(const System& sys, const RatioOptions& opts) {
  if (opts.samples < 100) throw DomainError("degeneracy_ratio needs at least 100 samples");
  const int m = sys.sites();
  const int n = sys.particles();
  RatioEstimate est;
  est.options = opts;

  // Rejection is cheap, so draw sequentially to keep the accepted set
  // independent of the thread count.
  std::vector<Vector> targets;
  targets.reserve(opts.samples);
  const Vector center = Vector::Constant(m, static_cast<double>(n) / m);
  const std::uint64_t max_draws = 1000ULL * static_cast<std::uint64_t>(opts.samples);
  std::uint64_t k = 0;
  for (; targets.size() < static_cast<std::size_t>(opts.samples) && k < max_draws; ++k) {
    auto rng = task_rng(opts.seed, k);
    Vector rho;
    if (draw_hypersimplex(m, n, rng, rho)) targets.push_back((1.0 - opts.shrink) * rho + opts.shrink * center);
  }
  if (targets.empty()) throw DomainError("no hypersimplex sample was accepted");
  est.drawn = static_cast<int>(k);
  est.accepted = static_cast<int>(targets.size());

  InversionOptions io;
  io.tol = opts.inv_tol;
  io.deg_tol = opts.deg_tol;
  std::vector<signed char> verdict(targets.size(), 0);
  parallel_for(targets.size(), opts.threads, [&](std::size_t i) {
    const InversionResult r = invert_density(sys, targets[i], io);
    verdict[i] = !r.converged ? -1 : (r.degree >= 2 ? 1 : 0);
  });
  for (signed char v : verdict) {
    if (v == 1) ++est.degenerate;
    if (v == -1) ++est.unconverged;
  }
  const double p = static_cast<double>(est.degenerate) / est.accepted;
  est.ratio = p;
  est.standard_error = std::sqrt(p * (1.0 - p) / est.accepted);
  return est;
}

}  // namespace degeo
