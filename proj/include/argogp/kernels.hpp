#pragma once

#include <cstddef>

namespace argogp::kern {

// Correlations below exp(-700) are treated as exact zeros by the
// half-integer kernels, and vexp clamps its argument to [-700, 700].
inline constexpr double kExpArgLimit = 700.0;
inline constexpr double kSqdistCutoff = kExpArgLimit * kExpArgLimit;

enum class HalfIntNu { half, three_half, five_half };

// Data-parallel inner-loop kernels. Two implementations exist, a scalar
// reference and an AVX2 variant, selected once at runtime. The squared
// distance kernels accumulate with fused multiply-adds in dimension order
// so both variants produce identical bits per element; vexp and
// matern_halfint agree to a few ulp.
struct Ops {
  const char* name;

  // out[i] = sum_k (dims[k][i] - query[k])^2 for i in [0, n)
  void (*sqdist)(const double* const* dims, std::size_t q, const double* query,
                 std::size_t n, double* out);

  // dmin[i] = min(dmin[i], squared distance as above)
  void (*sqdist_min)(const double* const* dims, std::size_t q, const double* query,
                     std::size_t n, double* dmin);

  // out[i] = exp(clamp(x[i], -700, 700))
  void (*vexp)(const double* x, std::size_t n, double* out);

  // out[i] = sigma2 * rho(sqrt(u2[i])) for the half-integer Matern family
  void (*matern_halfint)(const double* u2, std::size_t n, HalfIntNu nu,
                         double sigma2, double* out);
};

const Ops& scalar_ops();
const Ops* avx2_ops();            // nullptr when the CPU lacks AVX2+FMA
const Ops& active();              // honors ARGOGP_SIMD: auto | scalar | avx2
void force_isa(const char* name); // test hook, not thread-safe

}  // namespace argogp::kern
