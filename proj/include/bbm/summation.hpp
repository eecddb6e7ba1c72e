#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <span>
#include <thread>
#include <vector>

namespace bbm {

/// Fixed-shape pairwise reduction. The tree depends only on the length of the
/// input, so the result is reproducible bit-for-bit whatever produced the terms.
template <typename T>
T pairwise_sum(std::span<const T> terms) {
    constexpr std::size_t kLeaf = 8;
    if (terms.size() <= kLeaf) {
        T acc{};
        for (const T& t : terms)
            acc += t;
        return acc;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& terms) {
    return pairwise_sum(std::span<const T>(terms));
}

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers and stores the
/// results by index. The caller reduces in index order, so the schedule never
/// affects the outcome.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, int threads, Fn&& fn) {
    std::vector<T> out(count);
    const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = fn(i);
        return out;
    }
    // Each worker walks its indices in increasing order and stops at its first
    // failure, so the smallest failing index overall is rethrown.
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::size_t> failed_at(workers, count);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < count; i += workers) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        errors[w] = std::current_exception();
                        failed_at[w] = i;
                        return;
                    }
                }
            });
        }
    }
    const auto first = std::min_element(failed_at.begin(), failed_at.end());
    if (*first < count)
        std::rethrow_exception(errors[static_cast<std::size_t>(first - failed_at.begin())]);
    return out;
}

} // namespace bbm
