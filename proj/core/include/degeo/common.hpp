// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace degeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised when an input violates an operation's preconditions
/// (wrong dimensions, unnormalized densities, non-unit coordinates, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Number of independent entries of a symmetric g x g matrix, g(g+1)/2.
constexpr int symmetric_dim(int g) { return g * (g + 1) / 2; }

}  // namespace degeo
