#include "argogp/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "argogp/common.hpp"

namespace argogp::kern {

namespace {

void sqdist_scalar(const double* const* dims, std::size_t q, const double* query,
                   std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
      double d = dims[k][i] - query[k];
      acc = std::fma(d, d, acc);
    }
    out[i] = acc;
  }
}

void sqdist_min_scalar(const double* const* dims, std::size_t q, const double* query,
                       std::size_t n, double* dmin) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
      double d = dims[k][i] - query[k];
      acc = std::fma(d, d, acc);
    }
    if (acc < dmin[i]) dmin[i] = acc;
  }
}

void vexp_scalar(const double* x, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i];
    if (v > kExpArgLimit) v = kExpArgLimit;
    if (v < -kExpArgLimit) v = -kExpArgLimit;
    out[i] = std::exp(v);
  }
}

void matern_halfint_scalar(const double* u2, std::size_t n, HalfIntNu nu,
                           double sigma2, double* out) {
  switch (nu) {
    case HalfIntNu::half:
      for (std::size_t i = 0; i < n; ++i) {
        double v = u2[i];
        if (v > kSqdistCutoff) {
          out[i] = 0.0;
          continue;
        }
        double u = std::sqrt(v);
        out[i] = sigma2 * std::exp(-u);
      }
      break;
    case HalfIntNu::three_half:
      for (std::size_t i = 0; i < n; ++i) {
        double v = u2[i];
        if (v > kSqdistCutoff) {
          out[i] = 0.0;
          continue;
        }
        double u = std::sqrt(v);
        out[i] = sigma2 * (1.0 + u) * std::exp(-u);
      }
      break;
    case HalfIntNu::five_half:
      for (std::size_t i = 0; i < n; ++i) {
        double v = u2[i];
        if (v > kSqdistCutoff) {
          out[i] = 0.0;
          continue;
        }
        double u = std::sqrt(v);
        out[i] = sigma2 * (1.0 + u + v * (1.0 / 3.0)) * std::exp(-u);
      }
      break;
  }
}

const Ops g_scalar{"scalar", sqdist_scalar, sqdist_min_scalar, vexp_scalar,
                   matern_halfint_scalar};

std::atomic<const Ops*> g_active{nullptr};

const Ops* select_from_name(const char* name) {
  if (name != nullptr && std::strcmp(name, "scalar") == 0) return &g_scalar;
  if (name != nullptr && std::strcmp(name, "avx2") == 0) {
    const Ops* a = avx2_ops();
    if (a == nullptr) throw ConfigError("ARGOGP_SIMD=avx2 requested but AVX2+FMA is unavailable");
    return a;
  }
  // auto
  const Ops* a = avx2_ops();
  return a != nullptr ? a : &g_scalar;
}

}  // namespace

const Ops& scalar_ops() { return g_scalar; }

const Ops& active() {
  const Ops* cur = g_active.load(std::memory_order_acquire);
  if (cur != nullptr) return *cur;
  const Ops* sel = select_from_name(std::getenv("ARGOGP_SIMD"));
  g_active.store(sel, std::memory_order_release);
  return *sel;
}

void force_isa(const char* name) {
  g_active.store(select_from_name(name), std::memory_order_release);
}

}  // namespace argogp::kern
