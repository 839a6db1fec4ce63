#pragma once

// Runs one search per budget partition, optionally on several threads. The
// accepted partition with the smallest index wins, so the witness does not
// depend on scheduling.

#include "geocover/curve_branch.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace geocover::detail {

template <class Witness, class Run>
std::optional<Witness> drive_partitions(int k, int r, int threads, SearchStats& stats, Run&& run)
{
    if (threads <= 1) {
        auto parts = first_partition(k, r);
        do {
            Witness w;
            ++stats.partitions;
            if (run(parts, stats, w))
                return w;
        } while (next_partition(parts));
        return std::nullopt;
    }

    auto all = budget_partitions(k, r);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::mutex mu;
    std::optional<Witness> winner;
    std::exception_ptr failure;
    std::vector<SearchStats> local(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            while (true) {
                std::size_t j = next.fetch_add(1);
                if (j >= all.size() || j > best.load())
                    return;
                Witness w;
                try {
                    ++local[t].partitions;
                    if (run(all[j], local[t], w)) {
                        std::lock_guard lock(mu);
                        if (j < best.load()) {
                            best = j;
                            winner = std::move(w);
                        }
                    }
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure)
                        failure = std::current_exception();
                    best = 0;
                    return;
                }
            }
        });
    for (auto& th : pool)
        th.join();
    for (const auto& s : local)
        stats.merge(s);
    if (failure)
        std::rethrow_exception(failure);
    return winner;
}

} // namespace geocover::detail
