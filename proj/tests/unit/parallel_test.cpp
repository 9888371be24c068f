// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/parallel.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace degeo {
namespace {

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (int threads : {1, 2, 8}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t k) { ++hits[k]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t k) {
                              if (k == 37) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(TaskRng, DeterministicAndDistinct) {
  auto a = task_rng(5, 3);
  auto b = task_rng(5, 3);
  EXPECT_EQ(a(), b());
  EXPECT_NE(task_rng(5, 3)(), task_rng(5, 4)());
  EXPECT_NE(task_rng(5, 3)(), task_rng(6, 3)());
}

TEST(ResolveThreads, ExplicitAndEnvironment) {
  EXPECT_EQ(resolve_threads(3), 3);
  setenv("DEGEO_THREADS", "2", 1);
  EXPECT_EQ(resolve_threads(0), 2);
  setenv("DEGEO_THREADS", "junk", 1);
  EXPECT_GE(resolve_threads(0), 1);
  unsetenv("DEGEO_THREADS");
}

}  // namespace
}  // namespace degeo
