// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace hsvtk::parallel {

/// Caps the number of worker threads used by parallel_for. 0 restores the
/// hardware default. Results never depend on the thread count; only wall
/// time does.
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, count). Iterations must be independent and write
/// to disjoint state.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace hsvtk::parallel
