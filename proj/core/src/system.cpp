// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/system.hpp"

#include <cmath>

namespace degeo {

System::System(SystemSpec spec) : spec_(std::move(spec)) {
  if (!(spec_.deg_tol > 0.0) || !(spec_.rank_tol > 0.0)) {
    throw DomainError("tolerances must be positive");
  }
  basis_ = make_basis(spec_.graph.vertex_count(), spec_.particles);
  ManyBodyOperator op = lift_one_body(laplacian(spec_.graph), basis_);
  if (spec_.interaction) op = add_interaction(op, *spec_.interaction);
  h0_ = std::move(op.H);
}

void System::check_potential(const Vector& v) const {
  if (v.size() != sites()) {
    throw DomainError("potential has " + std::to_string(v.size()) + " entries, system has M=" +
                      std::to_string(sites()));
  }
  if (!v.allFinite()) throw DomainError("potential must be finite");
}

Matrix System::hamiltonian(const Vector& v) const {
  check_potential(v);
  Matrix h = h0_;
  h.diagonal() += occupations() * v;
  return h;
}

Spectrum System::spectrum(const Vector& v) const { return eig_sym(hamiltonian(v)); }

Eigenspace System::ground(const Vector& v, double deg_tol) const {
  return ground_eigenspace(spectrum(v), deg_tol);
}

Classification System::classify(const Vector& v) const {
  Classification c;
  c.ground = ground(v);
  c.dc = build_class(c.ground, *basis_, spec_.rank_tol);
  return c;
}

double System::energy(const Vector& v) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(v), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace degeo
