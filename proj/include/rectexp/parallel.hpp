#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace rectexp {

/// Number of consecutive terms summed by one task. The reduction tree depends
/// only on the term count and this constant, never on the thread count.
inline constexpr std::size_t kReductionBlock = 8;

inline unsigned resolve_threads(unsigned requested)
{
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Pairwise (balanced binary tree) sum of values[first, last).
template <class T>
T pairwise_sum(std::vector<T>& values, std::size_t first, std::size_t last)
{
  if (last - first == 1) return std::move(values[first]);
  const std::size_t mid = first + (last - first) / 2;
  T left = pairwise_sum(values, first, mid);
  left += pairwise_sum(values, mid, last);
  return left;
}

/// Sums term(0) + ... + term(count-1) with a fixed blocked pairwise tree.
/// Terms are evaluated concurrently on `threads` workers (0 = hardware
/// concurrency); the result is bitwise independent of the thread count.
/// If any term throws, the exception from the lowest-indexed failing block
/// is rethrown after all workers finish.
template <class T, class Term>
T deterministic_sum(std::size_t count, Term&& term, unsigned threads)
{
  if (count == 0) return T{};
  const std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> block_sums(blocks);
  std::vector<std::exception_ptr> errors(blocks);

  auto run_block = [&](std::size_t b) {
    try {
      const std::size_t first = b * kReductionBlock;
      const std::size_t last = std::min(count, first + kReductionBlock);
      std::vector<T> local;
      local.reserve(last - first);
      for (std::size_t i = first; i < last; ++i) local.push_back(term(i));
      block_sums[b] = pairwise_sum(local, 0, local.size());
    } catch (...) {
      errors[b] = std::current_exception();
    }
  };

  const unsigned workers = std::min<std::size_t>(resolve_threads(threads), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < blocks; b = next++) run_block(b);
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return pairwise_sum(block_sums, 0, blocks);
}

/// out[i] = fn(i) for i < count on `threads` workers; order of evaluation is
/// unspecified, placement is by index. Exceptions propagate as in deterministic_sum.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn, unsigned threads)
{
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  auto run_one = [&](std::size_t i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = std::min<std::size_t>(resolve_threads(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) run_one(i);
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace rectexp
