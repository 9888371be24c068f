// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace degeo::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kConfigError = 2;

/// Runs `degeo <subcommand> [flags]`; output goes to `out` unless --out is
/// given, diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace degeo::cli
