// SPDX-License-Identifier: Apache-2.0
//
// irrarray - simulation and optimization toolkit for irregular phased arrays
// Copyright (C) 2026 The irrarray authors
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

#ifndef irrarray_parallel_H
#define irrarray_parallel_H

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace irrarray::detail
{
    // Runs fn(i) for i in [0, n) on the given number of workers. Results must
    // be written to index-addressed slots so the outcome is thread-count
    // independent. The first exception is rethrown on the caller.
    template <typename Fn>
    void parallel_for(std::size_t n, unsigned threads, Fn &&fn)
    {
        if (n == 0)
            return;
        if (threads <= 1 || n == 1)
        {
            for (std::size_t i = 0; i < n; i++)
                fn(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::atomic<bool> failed{false};

        auto work = [&]() {
            while (true)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load())
                    return;
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    if (!failed.exchange(true))
                        error = std::current_exception();
                    return;
                }
            }
        };

        std::vector<std::thread> pool;
        const unsigned n_workers = std::min<std::size_t>(threads, n);
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; t++)
            pool.emplace_back(work);
        for (auto &th : pool)
            th.join();
        if (failed.load())
            std::rethrow_exception(error);
    }
}

#endif
