// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "degeo/common.hpp"
#include "degeo/lattice.hpp"

namespace degeo {

/// Slater-determinant basis of N spinless fermions on M sites.
///
/// States are N-subsets of the sites stored as bit masks (bit i = site i,
/// 0-based) and ordered lexicographically as sorted index tuples:
/// {1,2}, {1,3}, {1,4}, {2,3}, ... for (M, N) = (4, 2). Within a subset the
/// creation operators act in increasing site order, which fixes the
/// fermionic sign of every matrix element.
class FockBasis {
 public:
  FockBasis(int sites, int particles);

  int sites() const { return sites_; }
  int particles() const { return particles_; }
  std::size_t size() const { return states_.size(); }

  std::uint64_t state(std::size_t k) const { return states_[k]; }
  const std::vector<std::uint64_t>& states() const { return states_; }
  std::optional<std::size_t> index_of(std::uint64_t mask) const;
  /// Sorted 0-based occupied sites of basis state k.
  std::vector<int> occupied(std::size_t k) const;

  /// L x M 0/1 matrix, entry (J, i) = 1 iff site i is occupied in state J.
  const Matrix& occupations() const { return occupations_; }

 private:
  int sites_;
  int particles_;
  std::vector<std::uint64_t> states_;
  std::vector<std::pair<std::uint64_t, std::size_t>> lookup_;  // sorted by mask
  Matrix occupations_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr make_basis(int sites, int particles);

/// Real symmetric operator on the N-particle space.
struct ManyBodyOperator {
  BasisPtr basis;
  Matrix H;
};

/// Second-quantized lift of a one-body operator,
/// H = sum_ij h_ij c+_i c_j, with sign (-1)^(occupied sites strictly between i and j).
ManyBodyOperator lift_one_body(const OneBodyOperator& h, BasisPtr basis);

/// Adds the density-density interaction sum_{i<j} W_ij n_i n_j. W must be
/// symmetric with zero diagonal.
ManyBodyOperator add_interaction(const ManyBodyOperator& H, const Matrix& W);

/// Diagonal of the lifted potential, sum_{i in J} v_i for each basis state J.
Vector lifted_potential_diagonal(const FockBasis& basis, const Vector& v);

/// rho_i = sum_{J contains i} psi_J^2 / |psi|^2.
Vector density_of_state(const Vector& psi, const FockBasis& basis);

/// 2 <phi_k, n_i phi_l> for each site i.
Vector transition_density(const Vector& phi_k, const Vector& phi_l, const FockBasis& basis);

/// Slater determinant of the given orbitals (columns of an M x N matrix);
/// coefficient on subset J is det(orbitals restricted to the rows in J).
/// Orbitals must be orthonormal to 1e-8.
Vector slater(const Matrix& orbitals, const FockBasis& basis);

/// Throws DomainError unless 0 <= rho_i <= 1 + tol and |sum rho - N| <= tol.
void check_density(const Vector& rho, int particles, double tol = 1e-10);

}  // namespace degeo
