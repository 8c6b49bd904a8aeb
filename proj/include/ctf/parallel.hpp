// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace ctf {

/// Evaluates fn(i) for i in [0, n) on up to `workers` threads and returns the
/// results ordered by i. Work is handed out dynamically; since each result
/// depends only on its index, output is independent of the worker count.
/// The first exception thrown by any task is rethrown after all threads join.
template <class Fn>
auto parallel_map(std::uint64_t n, unsigned workers, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::uint64_t>> {
    using R = std::invoke_result_t<Fn&, std::uint64_t>;
    std::vector<std::optional<R>> slots(n);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };

    const unsigned count = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(n, 1)));
    if (count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace ctf
