#pragma once

// Deterministic site-loop helpers. Reductions use a fixed block
// decomposition so sums are bit-identical for any thread count.

#include <atomic>
#include <complex>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace monolab {

inline std::atomic<int>& thread_count_ref() {
  static std::atomic<int> n{1};
  return n;
}

inline void set_threads(int n) { thread_count_ref().store(n < 1 ? 1 : n); }
inline int threads() { return thread_count_ref().load(); }

namespace detail {
constexpr std::size_t kReduceBlock = 4096;

template <class Fn>
void run_chunks(std::size_t nchunks, Fn&& body) {
  const int nt = threads();
  if (nt <= 1 || nchunks <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      body(c);
    }
  };
  std::vector<std::thread> pool;
  int spawn = nt - 1;
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}
}  // namespace detail

// Applies fn(i) for i in [0, n). Threads split the range in fixed blocks.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t nb = (n + detail::kReduceBlock - 1) / detail::kReduceBlock;
  detail::run_chunks(nb, [&](std::size_t c) {
    const std::size_t lo = c * detail::kReduceBlock;
    const std::size_t hi = std::min(n, lo + detail::kReduceBlock);
    for (std::size_t i = lo; i < hi; ++i) fn(i);
  });
}

// Sum of fn(i) over [0, n). Per-block partial sums are combined in block
// order, so the result does not depend on the thread count.
template <class Fn>
double block_sum(std::size_t n, Fn&& fn) {
  const std::size_t nb = (n + detail::kReduceBlock - 1) / detail::kReduceBlock;
  std::vector<double> partial(nb, 0.0);
  detail::run_chunks(nb, [&](std::size_t c) {
    const std::size_t lo = c * detail::kReduceBlock;
    const std::size_t hi = std::min(n, lo + detail::kReduceBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += fn(i);
    partial[c] = s;
  });
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

template <class Fn>
std::complex<double> block_sum_complex(std::size_t n, Fn&& fn) {
  const std::size_t nb = (n + detail::kReduceBlock - 1) / detail::kReduceBlock;
  std::vector<std::complex<double>> partial(nb, {0.0, 0.0});
  detail::run_chunks(nb, [&](std::size_t c) {
    const std::size_t lo = c * detail::kReduceBlock;
    const std::size_t hi = std::min(n, lo + detail::kReduceBlock);
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = lo; i < hi; ++i) s += fn(i);
    partial[c] = s;
  });
  std::complex<double> total{0.0, 0.0};
  for (auto s : partial) total += s;
  return total;
}

}  // namespace monolab
