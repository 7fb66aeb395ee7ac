#pragma once

// Reduction of per-pair triples into one accumulator, sequential or split
// into contiguous chunks on worker threads. Each chunk folds from the zero
// angle; chunk results are then combined left to right, each combine
// charging one more triple addition to the budget.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "certilink/linking.hpp"

namespace certilink::detail {

template <std::floating_point T>
struct FoldState {
  Accumulator<T> acc;
  ErrorBudget budget;
};

template <std::floating_point T, typename PairAt>
FoldState<T> fold_sequential(std::uint64_t begin, std::uint64_t end, const PairAt& pair_at) {
  FoldState<T> state;
  for (std::uint64_t k = begin; k < end; ++k) accumulate(state.acc, pair_at(k), state.budget);
  return state;
}

template <std::floating_point T>
void combine(FoldState<T>& into, const FoldState<T>& from) {
  SegmentPairAngle<T> as_pair;
  as_pair.triple = from.acc.total;
  as_pair.sign = point_sign(from.acc.total);
  as_pair.err_bound = 0;
  accumulate(into.acc, as_pair, into.budget);
  into.budget.merge(from.budget);
}

/// pair_at(k) must be safe to call concurrently for distinct k.
template <std::floating_point T, typename PairAt>
FoldState<T> fold_pairs(std::uint64_t count, unsigned threads, const PairAt& pair_at) {
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count));
  if (workers <= 1) return fold_sequential<T>(0, count, pair_at);

  std::vector<FoldState<T>> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        parts[w] = fold_sequential<T>(begin, end, pair_at);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  FoldState<T> result = parts.front();
  for (std::uint64_t w = 1; w < workers; ++w) combine(result, parts[w]);
  return result;
}

}  // namespace certilink::detail
