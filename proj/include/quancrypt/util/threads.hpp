// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace quancrypt {

// Worker cap: min(QUANCRYPT_THREADS, hardware_concurrency), at least 1.
std::size_t max_workers();

// Runs fn(i) for i in [0, n), distributing indices over up to max_workers()
// threads. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace quancrypt
