// SPDX-License-Identifier: Apache-2.0
//
// jamrx - jamming resistant receive combining for the massive MIMO uplink
// Copyright (C) 2026 jamrx contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef JAMRX_PARALLEL_HPP
#define JAMRX_PARALLEL_HPP

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "types.hpp"

namespace jamrx
{

/// Runs fn(i) for i in [0, n) on up to `threads` workers with a static
/// block partition. Each index must own its random stream and output slot,
/// so results are identical for every worker count. threads <= 0 selects
/// the hardware concurrency. The first exception thrown by any worker is
/// rethrown on the calling thread.
template <typename Fn>
void parallel_for_index(Index n, int threads, Fn&& fn)
{
    if (n <= 0)
        return;
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1)
        threads = 1;
    if (static_cast<Index>(threads) > n)
        threads = static_cast<int>(n);

    if (threads == 1)
    {
        for (Index i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const Index chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
    {
        const Index begin = Index(t) * chunk;
        const Index end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back(
            [&, begin, end]()
            {
                try
                {
                    for (Index i = begin; i < end; ++i)
                        fn(i);
                }
                catch (...)
                {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            });
    }
    for (auto& worker : pool)
        worker.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace jamrx

#endif // JAMRX_PARALLEL_HPP
