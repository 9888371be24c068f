// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace degeo {

/// Worker count: `requested` if positive, else $DEGEO_THREADS, else the
/// hardware concurrency (at least 1).
int resolve_threads(int requested = 0);

/// Calls body(k) for k in [0, n) on up to `threads` workers. Work items are
/// independent, so results never depend on the worker count. The first
/// exception thrown by a body is rethrown on the calling thread.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

/// Independent generator for task `task` of a run seeded with `seed`.
std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task);

}  // namespace degeo
