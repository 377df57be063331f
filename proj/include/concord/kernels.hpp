#pragma once

// Data-parallel inner loops. Every kernel has a serial reference that the
// tests and the benchmark compare against; results are identical by
// contract, independent of thread count.

#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace concord::kernels {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Wall-clock budget. A zero budget never expires.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::milliseconds budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}
  bool expired() const {
    return budget_.count() > 0 &&
           std::chrono::steady_clock::now() - start_ > budget_;
  }

 private:
  std::chrono::milliseconds budget_{0};
  std::chrono::steady_clock::time_point start_{};
};

/// Non-empty subsets of {0..m-1} as bitmasks, ordered by ascending size and
/// then lexicographically by their sorted index lists.
const std::vector<std::uint32_t>& canonical_masks(std::size_t m);

/// Per-statement sign rows indexed by mask: +1 preferred side wins on that
/// subset, 0 tie, -1 loses.
using SignRow = const std::int8_t*;

/// First position p in `order` whose mask violates no row (no -1) and, when
/// `require_deciding`, wins at least one row (+1). npos if none.
/// Sets `timed_out` and returns npos when the deadline passes mid-scan.
std::size_t level_scan_serial(std::span<const SignRow> rows,
                              std::span<const std::uint32_t> order,
                              bool require_deciding, const Deadline& deadline,
                              bool& timed_out);
std::size_t level_scan_parallel(std::span<const SignRow> rows,
                                std::span<const std::uint32_t> order,
                                bool require_deciding, const Deadline& deadline,
                                bool& timed_out);

/// flags[i] = pred(i). An exception from any predicate is rethrown after the
/// loop (the lowest index wins, so the error is deterministic).
std::vector<char> filter_serial(std::size_t n,
                                const std::function<bool(std::size_t)>& pred);
std::vector<char> filter_parallel(std::size_t n,
                                  const std::function<bool(std::size_t)>& pred);

/// Symmetric n×n matrix, row-major, m[i*n+j] = pred(i,j) for i<j; the
/// diagonal is 1.
std::vector<char> pair_matrix_serial(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& pred);
std::vector<char> pair_matrix_parallel(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& pred);

int max_threads();

}  // namespace concord::kernels
