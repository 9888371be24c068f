// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace degeo {

namespace {

// Bits strictly between positions lo < hi.
std::uint64_t between_mask(int lo, int hi) {
  if (hi - lo <= 1) return 0;
  const std::uint64_t upto_hi = (std::uint64_t{1} << hi) - 1;
  const std::uint64_t upto_lo = (std::uint64_t{1} << (lo + 1)) - 1;
  return upto_hi & ~upto_lo;
}

}  // namespace

FockBasis::FockBasis(int sites, int particles) : sites_(sites), particles_(particles) {
  if (particles < 1 || particles > sites) {
    throw DomainError("need 1 <= N <= M, got M=" + std::to_string(sites) +
                      ", N=" + std::to_string(particles));
  }
  if (sites > 62) throw DomainError("at most 62 sites supported");

  // Lexicographic N-subsets via the classic "next combination" step.
  std::vector<int> idx(particles);
  for (int k = 0; k < particles; ++k) idx[k] = k;
  while (true) {
    std::uint64_t mask = 0;
    for (int i : idx) mask |= std::uint64_t{1} << i;
    states_.push_back(mask);
    int k = particles - 1;
    while (k >= 0 && idx[k] == sites - particles + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int r = k + 1; r < particles; ++r) idx[r] = idx[r - 1] + 1;
  }

  lookup_.reserve(states_.size());
  for (std::size_t k = 0; k < states_.size(); ++k) lookup_.emplace_back(states_[k], k);
  std::sort(lookup_.begin(), lookup_.end());

  occupations_ = Matrix::Zero(static_cast<Eigen::Index>(states_.size()), sites);
  for (std::size_t k = 0; k < states_.size(); ++k)
    for (int i = 0; i < sites; ++i)
      if ((states_[k] >> i) & 1U) occupations_(static_cast<Eigen::Index>(k), i) = 1.0;
}

std::optional<std::size_t> FockBasis::index_of(std::uint64_t mask) const {
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(mask, std::size_t{0}));
  if (it == lookup_.end() || it->first != mask) return std::nullopt;
  return it->second;
}

std::vector<int> FockBasis::occupied(std::size_t k) const {
  std::vector<int> out;
  for (int i = 0; i < sites_; ++i)
    if ((states_[k] >> i) & 1U) out.push_back(i);
  return out;
}

BasisPtr make_basis(int sites, int particles) {
  return std::make_shared<const FockBasis>(sites, particles);
}

ManyBodyOperator lift_one_body(const OneBodyOperator& h, BasisPtr basis) {
  const int m = basis->sites();
  if (h.h.rows() != m || h.h.cols() != m) {
    throw DomainError("one-body operator is " + std::to_string(h.h.rows()) + "x" +
                      std::to_string(h.h.cols()) + ", basis has M=" + std::to_string(m));
  }
  const auto L = static_cast<Eigen::Index>(basis->size());
  Matrix H = Matrix::Zero(L, L);
  for (Eigen::Index col = 0; col < L; ++col) {
    const std::uint64_t mask = basis->state(static_cast<std::size_t>(col));
    for (int i = 0; i < m; ++i) {
      if (!((mask >> i) & 1U)) continue;
      H(col, col) += h.h(i, i);
      for (int j = 0; j < m; ++j) {
        if ((mask >> j) & 1U) continue;
        const double hji = h.h(j, i);
        if (hji == 0.0) continue;
        // c+_j c_i |mask>
        const std::uint64_t target = (mask & ~(std::uint64_t{1} << i)) | (std::uint64_t{1} << j);
        const int crossed = std::popcount(mask & between_mask(std::min(i, j), std::max(i, j)));
        const double sign = (crossed % 2 == 0) ? 1.0 : -1.0;
        const auto row = static_cast<Eigen::Index>(*basis->index_of(target));
        H(row, col) += sign * hji;
      }
    }
  }
  return {std::move(basis), std::move(H)};
}

ManyBodyOperator add_interaction(const ManyBodyOperator& H, const Matrix& W) {
  const int m = H.basis->sites();
  if (W.rows() != m || W.cols() != m) throw DomainError("interaction matrix must be M x M");
  for (int i = 0; i < m; ++i) {
    if (W(i, i) != 0.0) throw DomainError("interaction matrix must have zero diagonal");
    for (int j = i + 1; j < m; ++j)
      if (std::abs(W(i, j) - W(j, i)) > 1e-12 * std::max(1.0, std::abs(W(i, j))))
        throw DomainError("interaction matrix must be symmetric");
  }
  ManyBodyOperator out = H;
  for (std::size_t k = 0; k < H.basis->size(); ++k) {
    const auto occ = H.basis->occupied(k);
    double e = 0.0;
    for (std::size_t a = 0; a < occ.size(); ++a)
      for (std::size_t b = a + 1; b < occ.size(); ++b) e += W(occ[a], occ[b]);
    const auto kk = static_cast<Eigen::Index>(k);
    out.H(kk, kk) += e;
  }
  return out;
}

Vector lifted_potential_diagonal(const FockBasis& basis, const Vector& v) {
  if (v.size() != basis.sites()) throw DomainError("potential dimension does not match basis");
  return basis.occupations() * v;
}

Vector density_of_state(const Vector& psi, const FockBasis& basis) {
  if (psi.size() != static_cast<Eigen::Index>(basis.size())) {
    throw DomainError("state dimension does not match basis");
  }
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) throw DomainError("density of the zero vector is undefined");
  return basis.occupations().transpose() * psi.cwiseAbs2() / norm2;
}

Vector transition_density(const Vector& phi_k, const Vector& phi_l, const FockBasis& basis) {
  const auto L = static_cast<Eigen::Index>(basis.size());
  if (phi_k.size() != L || phi_l.size() != L) {
    throw DomainError("state dimension does not match basis");
  }
  return 2.0 * (basis.occupations().transpose() * phi_k.cwiseProduct(phi_l));
}

Vector slater(const Matrix& orbitals, const FockBasis& basis) {
  const int m = basis.sites();
  const int n = basis.particles();
  if (orbitals.rows() != m || orbitals.cols() != n) {
    throw DomainError("slater: need an M x N orbital matrix");
  }
  const Matrix gram = orbitals.transpose() * orbitals;
  if ((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8) {
    throw DomainError("slater: orbitals are not orthonormal");
  }
  Vector psi(static_cast<Eigen::Index>(basis.size()));
  Matrix sub(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto occ = basis.occupied(k);
    for (int r = 0; r < n; ++r) sub.row(r) = orbitals.row(occ[r]);
    psi(static_cast<Eigen::Index>(k)) = sub.determinant();
  }
  return psi / psi.norm();
}

void check_density(const Vector& rho, int particles, double tol) {
  if (std::abs(rho.sum() - particles) > tol) {
    throw DomainError("density sums to " + std::to_string(rho.sum()) + ", expected " +
                      std::to_string(particles));
  }
  if (rho.size() > 0 && (rho.minCoeff() < -tol || rho.maxCoeff() > 1.0 + tol)) {
    throw DomainError("density entries must lie in [0, 1]");
  }
}

}  // namespace degeo
