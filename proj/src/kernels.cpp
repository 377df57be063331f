#include "concord/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <memory>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "concord/errors.hpp"

namespace concord::kernels {

namespace {

bool lex_less(std::uint32_t a, std::uint32_t b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  // Same size: compare sorted index lists. The first differing element is
  // the lowest bit set in exactly one of them, and whoever owns it is
  // smaller.
  std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  std::uint32_t low = diff & (~diff + 1);
  return (a & low) != 0;
}

inline bool admissible(std::span<const SignRow> rows, std::uint32_t mask,
                       bool require_deciding) {
  bool decides = false;
  for (SignRow r : rows) {
    std::int8_t s = r[mask];
    if (s < 0) return false;
    decides |= s > 0;
  }
  return decides || !require_deciding;
}

constexpr std::size_t kDeadlineStride = 1024;

}  // namespace

const std::vector<std::uint32_t>& canonical_masks(std::size_t m) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<std::vector<std::uint32_t>>> cache;
  if (m == 0 || m > 24) throw CapacityError("canonical_masks: 1 <= m <= 24");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[m];
  if (!slot) {
    auto v = std::make_unique<std::vector<std::uint32_t>>();
    v->reserve((std::size_t{1} << m) - 1);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask)
      v->push_back(mask);
    std::sort(v->begin(), v->end(), lex_less);
    slot = std::move(v);
  }
  return *slot;
}

std::size_t level_scan_serial(std::span<const SignRow> rows,
                              std::span<const std::uint32_t> order,
                              bool require_deciding, const Deadline& deadline,
                              bool& timed_out) {
  timed_out = false;
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (p % kDeadlineStride == 0 && deadline.expired()) {
      timed_out = true;
      return npos;
    }
    if (admissible(rows, order[p], require_deciding)) return p;
  }
  return npos;
}

std::size_t level_scan_parallel(std::span<const SignRow> rows,
                                std::span<const std::uint32_t> order,
                                bool require_deciding, const Deadline& deadline,
                                bool& timed_out) {
  const auto n = static_cast<std::ptrdiff_t>(order.size());
  std::atomic<std::size_t> best{npos};
  std::atomic<bool> expired{false};
#pragma omp parallel for schedule(static, 256)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    const auto up = static_cast<std::size_t>(p);
    if (up >= best.load(std::memory_order_relaxed) ||
        expired.load(std::memory_order_relaxed))
      continue;
    if (up % kDeadlineStride == 0 && deadline.expired()) {
      expired.store(true);
      continue;
    }
    if (admissible(rows, order[up], require_deciding)) {
      std::size_t cur = best.load();
      while (up < cur && !best.compare_exchange_weak(cur, up)) {
      }
    }
  }
  timed_out = expired.load();
  return timed_out ? npos : best.load();
}

std::vector<char> filter_serial(std::size_t n,
                                const std::function<bool(std::size_t)>& pred) {
  std::vector<char> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) out[i] = pred(i) ? 1 : 0;
  return out;
}

std::vector<char> filter_parallel(
    std::size_t n, const std::function<bool(std::size_t)>& pred) {
  std::vector<char> out(n, 0);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<bool> failed{false};
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      out[i] = pred(static_cast<std::size_t>(i)) ? 1 : 0;
    } catch (...) {
      errors[i] = std::current_exception();
      failed.store(true);
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<char> pair_matrix_serial(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& pred) {
  std::vector<char> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = 1;
    for (std::size_t j = i + 1; j < n; ++j)
      m[i * n + j] = m[j * n + i] = pred(i, j) ? 1 : 0;
  }
  return m;
}

std::vector<char> pair_matrix_parallel(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& pred) {
  std::vector<char> m(n * n, 0);
  std::vector<std::exception_ptr> errors(n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
    m[i * n + i] = 1;
    try {
      for (std::size_t j = i + 1; j < n; ++j)
        m[i * n + j] = m[j * n + i] = pred(i, j) ? 1 : 0;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return m;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace concord::kernels
