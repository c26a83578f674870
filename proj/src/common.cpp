#include "argogp/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

namespace argogp {

namespace {

std::atomic<int> g_thread_cap{0};

int env_thread_cap() {
  const char* s = std::getenv("ARGOGP_THREADS");
  if (s == nullptr) return 0;
  int v = std::atoi(s);
  return v > 0 ? v : 0;
}

}  // namespace

int thread_cap() {
  int v = g_thread_cap.load(std::memory_order_relaxed);
  if (v > 0) return v;
  int env = env_thread_cap();
  if (env > 0) return env;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_thread_cap(int n) { g_thread_cap.store(n, std::memory_order_relaxed); }

void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (grain == 0) grain = 1;
  int workers = thread_cap();
  if (workers <= 1 || n <= grain) {
    fn(0, n);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(grain, std::memory_order_relaxed);
      if (b >= n) break;
      fn(b, std::min(b + grain, n));
    }
  };
  std::size_t max_useful = (n + grain - 1) / grain;
  std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), max_useful);
  std::vector<std::thread> pool;
  pool.reserve(count - 1);
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

double NormalSampler::uniform() {
  // 53-bit mantissa draw mapped into the open interval.
  std::uint64_t w = eng_();
  return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSampler::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace argogp
