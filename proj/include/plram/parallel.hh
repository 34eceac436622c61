#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

namespace plram
{
    /// Smallest index in [0, count) for which pred holds. With threads > 1 the
    /// indices are claimed in increasing order by a pool of workers, so the
    /// answer is the same as the sequential scan. pred must be safe to call
    /// concurrently.
    template <typename Pred>
    auto first_satisfying(std::size_t count, unsigned threads, Pred && pred) -> std::optional<std::size_t>
    {
        if (threads <= 1 || count <= 1) {
            for (std::size_t i = 0 ; i < count ; ++i)
                if (pred(i))
                    return i;
            return std::nullopt;
        }

        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{count};
        auto work = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count || i >= best.load())
                    return;
                if (pred(i)) {
                    std::size_t seen = best.load();
                    while (i < seen && ! best.compare_exchange_weak(seen, i))
                        ;
                    return;
                }
            }
        };

        std::vector<std::jthread> pool;
        unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
        for (unsigned t = 0 ; t < workers ; ++t)
            pool.emplace_back(work);
        pool.clear();

        if (best.load() == count)
            return std::nullopt;
        return best.load();
    }

    /// Runs body(i) for every i in [0, count), each index exactly once.
    template <typename Body>
    auto parallel_for(std::size_t count, unsigned threads, Body && body) -> void
    {
        if (threads <= 1 || count <= 1) {
            for (std::size_t i = 0 ; i < count ; ++i)
                body(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next.fetch_add(1) ; i < count ; i = next.fetch_add(1))
                body(i);
        };
        std::vector<std::jthread> pool;
        unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
        for (unsigned t = 0 ; t < workers ; ++t)
            pool.emplace_back(work);
    }
}
