#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace argogp {

// Error taxonomy; the CLI maps these onto exit codes (2, 3, 4).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worker-thread cap: hardware concurrency by default, overridable by the
// ARGOGP_THREADS environment variable and set_thread_cap().
int thread_cap();
void set_thread_cap(int n);

// Runs fn(begin, end) over chunks of [0, n). Chunk-to-thread assignment is
// dynamic, so fn must only write per-index slots when determinism matters.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& fn);

// Pairwise summation; bit-stable for a fixed element order.
double pairwise_sum(const double* x, std::size_t n);

// Platform-stable N(0,1) stream: Box-Muller over mt19937_64 words, no
// dependence on the standard library's normal_distribution algorithm.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : eng_(seed) {}
  double operator()();
  double uniform();  // (0, 1)

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t fnv1a64(std::string_view s);

std::string format_double(double v);  // shortest round-trip-safe decimal

}  // namespace argogp
