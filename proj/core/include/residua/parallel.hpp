#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "residua/common.hpp"

namespace residua {

// Worker count for segment-parallel scans. Defaults to machine parallelism,
// overridable via the RESIDUA_THREADS environment variable or
// set_thread_count. Results never depend on this value.
int thread_count();
void set_thread_count(int n);

namespace detail {

// Runs fn(seg_index, seg_lo, seg_hi) over consecutive segments covering
// [lo, hi) and returns the per-segment results in segment order. The work
// queue hands out segments dynamically; output position is fixed by index,
// so scheduling cannot affect the result.
template <class T, class Fn>
std::vector<T> map_segments(u64 lo, u64 hi, u64 seg_len, Fn&& fn) {
  require(hi >= lo && seg_len >= 1, "map_segments: bad range");
  const u64 n_segs = (hi - lo + seg_len - 1) / seg_len;
  std::vector<T> results(static_cast<size_t>(n_segs));
  if (n_segs == 0) return results;

  const int workers = std::min<int>(thread_count(), static_cast<int>(
      std::min<u64>(n_segs, 1024)));
  auto run_one = [&](u64 i) {
    const u64 seg_lo = lo + i * seg_len;
    const u64 seg_hi = std::min(hi, seg_lo + seg_len);
    results[static_cast<size_t>(i)] = fn(i, seg_lo, seg_hi);
  };

  if (workers <= 1) {
    for (u64 i = 0; i < n_segs; ++i) run_one(i);
    return results;
  }

  std::atomic<u64> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      u64 i = next.fetch_add(1);
      if (i >= n_segs || failed.load(std::memory_order_relaxed)) return;
      try {
        run_one(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

// Segment reduction for exactly-commutative merges (integer counters).
// Workers keep one local accumulator across the segments they pull and merge
// it into the shared total once at the end; merge order varies with
// scheduling, so T's merge must be order-insensitive in exact arithmetic.
template <class T, class SegFn, class MergeFn>
T reduce_segments(u64 lo, u64 hi, u64 seg_len, T init, SegFn&& per_segment,
                  MergeFn&& merge_into) {
  require(hi >= lo && seg_len >= 1, "reduce_segments: bad range");
  const u64 n_segs = (hi - lo + seg_len - 1) / seg_len;
  if (n_segs == 0) return init;
  auto run_one = [&](u64 i, T& acc) {
    const u64 seg_lo = lo + i * seg_len;
    const u64 seg_hi = std::min(hi, seg_lo + seg_len);
    per_segment(i, seg_lo, seg_hi, acc);
  };

  const int workers = std::min<int>(thread_count(), static_cast<int>(
      std::min<u64>(n_segs, 1024)));
  if (workers <= 1) {
    T acc = init;
    for (u64 i = 0; i < n_segs; ++i) run_one(i, acc);
    return acc;
  }

  T total = init;
  std::atomic<u64> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex mu;
  auto worker = [&] {
    T local = init;
    bool touched = false;
    try {
      for (;;) {
        u64 i = next.fetch_add(1);
        if (i >= n_segs || failed.load(std::memory_order_relaxed)) break;
        run_one(i, local);
        touched = true;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(mu);
      if (!first_error) first_error = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
      return;
    }
    if (touched) {
      std::lock_guard<std::mutex> lk(mu);
      merge_into(total, local);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return total;
}

// Pairwise tree fold with a shape fixed by element count only. Keeps complex
// accumulation order identical at any thread count.
template <class T, class Merge>
T pairwise_fold(std::vector<T> items, Merge&& merge) {
  require(!items.empty(), "pairwise_fold: empty input");
  while (items.size() > 1) {
    std::vector<T> next;
    next.reserve((items.size() + 1) / 2);
    size_t i = 0;
    for (; i + 1 < items.size(); i += 2)
      next.push_back(merge(std::move(items[i]), std::move(items[i + 1])));
    if (i < items.size()) next.push_back(std::move(items[i]));
    items = std::move(next);
  }
  return std::move(items[0]);
}

}  // namespace detail

}  // namespace residua
