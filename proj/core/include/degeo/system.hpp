// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "degeo/common.hpp"
#include "degeo/degmap.hpp"
#include "degeo/fock.hpp"
#include "degeo/lattice.hpp"
#include "degeo/spectra.hpp"

namespace degeo {

/// Fixed internal part of the Hamiltonian plus the numerical thresholds.
struct SystemSpec {
  Graph graph;
  int particles = 1;
  std::optional<Matrix> interaction;  // M x M, symmetric, zero diagonal
  double deg_tol = 1e-9;
  double rank_tol = 1e-8;
};

/// Ground space and its class at a given potential.
struct Classification {
  Eigenspace ground;
  DegeneracyClass dc;
};

/// Caches the basis and the lifted H0 so that H_v = H0 + V costs one
/// diagonal update.
class System {
 public:
  explicit System(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  int sites() const { return spec_.graph.vertex_count(); }
  int particles() const { return spec_.particles; }
  const BasisPtr& basis() const { return basis_; }
  const Matrix& internal() const { return h0_; }
  const Matrix& occupations() const { return basis_->occupations(); }

  Matrix hamiltonian(const Vector& v) const;
  Spectrum spectrum(const Vector& v) const;
  Eigenspace ground(const Vector& v) const { return ground(v, spec_.deg_tol); }
  Eigenspace ground(const Vector& v, double deg_tol) const;
  Classification classify(const Vector& v) const;
  double energy(const Vector& v) const;

 private:
  void check_potential(const Vector& v) const;

  SystemSpec spec_;
  BasisPtr basis_;
  Matrix h0_;
};

}  // namespace degeo
