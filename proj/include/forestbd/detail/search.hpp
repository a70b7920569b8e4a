#pragma once

// Shared plumbing for the branching detectors: a thread-safe memo keyed by
// (formula, budget) and an ordered parallel "first success" search.

#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forestbd/formula.hpp"

namespace forestbd::detail {

/// Exact textual key of a formula (universe and ordered clauses).
std::string formula_key(const Formula& f);

template <typename Value>
class SharedMemo {
 public:
  std::optional<Value> get(const std::string& key, int k) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = table_.find({key, k});
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& key, int k, Value value) {
    std::lock_guard<std::mutex> lock(mutex_);
    table_.try_emplace({key, k}, std::move(value));
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, int>, Value> table_;
};

/// Evaluates `fn(i)` for i = 0..count-1 and returns the first (lowest i)
/// engaged result. With threads > 1, windows of `threads` indices run
/// concurrently; the answer is the same as the sequential one.
template <typename Fn>
auto first_success(std::size_t count, int threads, Fn&& fn) -> decltype(fn(std::size_t{})) {
  using Result = decltype(fn(std::size_t{}));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      Result r = fn(i);
      if (r) return r;
    }
    return Result{};
  }
  const std::size_t window = static_cast<std::size_t>(threads);
  for (std::size_t start = 0; start < count; start += window) {
    std::vector<std::future<Result>> batch;
    for (std::size_t i = start; i < std::min(count, start + window); ++i) {
      batch.push_back(std::async(std::launch::async, [&fn, i] { return fn(i); }));
    }
    std::optional<Result> winner;
    for (auto& f : batch) {
      Result r = f.get();  // drain every future before returning
      if (!winner && r) winner = std::move(r);
    }
    if (winner) return std::move(*winner);
  }
  return Result{};
}

}  // namespace forestbd::detail
