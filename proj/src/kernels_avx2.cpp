#include "argogp/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define ARGOGP_HAVE_X86 1
#include <immintrin.h>
#else
#define ARGOGP_HAVE_X86 0
#endif

#include <cmath>

namespace argogp::kern {

#if ARGOGP_HAVE_X86

namespace {

// Cephes-style expm(x) for doubles, 4 lanes. Caller guarantees |x| <= 700,
// which keeps the 2^n scaling inside the normal range.
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

  __m256d fx = _mm256_floor_pd(_mm256_fmadd_pd(x, log2e, _mm256_set1_pd(0.5)));
  x = _mm256_fnmadd_pd(fx, c1, x);
  x = _mm256_fnmadd_pd(fx, c2, x);
  __m256d xx = _mm256_mul_pd(x, x);

  __m256d px = _mm256_fmadd_pd(p0, xx, p1);
  px = _mm256_fmadd_pd(px, xx, p2);
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_fmadd_pd(q0, xx, q1);
  qx = _mm256_fmadd_pd(qx, xx, q2);
  qx = _mm256_fmadd_pd(qx, xx, q3);

  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // multiply by 2^n via exponent-field arithmetic
  __m128i n32 = _mm256_cvtpd_epi32(fx);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(pow2));
}

inline __m256d clamp_pd(__m256d x, double lo, double hi) {
  x = _mm256_min_pd(x, _mm256_set1_pd(hi));
  x = _mm256_max_pd(x, _mm256_set1_pd(lo));
  return x;
}

void sqdist_avx2(const double* const* dims, std::size_t q, const double* query,
                 std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < q; ++k) {
      __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dims[k] + i), _mm256_set1_pd(query[k]));
      acc = _mm256_fmadd_pd(d, d, acc);
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
      double d = dims[k][i] - query[k];
      acc = std::fma(d, d, acc);
    }
    out[i] = acc;
  }
}

void sqdist_min_avx2(const double* const* dims, std::size_t q, const double* query,
                     std::size_t n, double* dmin) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < q; ++k) {
      __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dims[k] + i), _mm256_set1_pd(query[k]));
      acc = _mm256_fmadd_pd(d, d, acc);
    }
    _mm256_storeu_pd(dmin + i, _mm256_min_pd(_mm256_loadu_pd(dmin + i), acc));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
      double d = dims[k][i] - query[k];
      acc = std::fma(d, d, acc);
    }
    if (acc < dmin[i]) dmin[i] = acc;
  }
}

void vexp_avx2(const double* x, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = clamp_pd(_mm256_loadu_pd(x + i), -kExpArgLimit, kExpArgLimit);
    _mm256_storeu_pd(out + i, exp_pd(v));
  }
  for (; i < n; ++i) {
    double v = x[i];
    if (v > kExpArgLimit) v = kExpArgLimit;
    if (v < -kExpArgLimit) v = -kExpArgLimit;
    out[i] = std::exp(v);
  }
}

void matern_halfint_avx2(const double* u2, std::size_t n, HalfIntNu nu,
                         double sigma2, double* out) {
  const __m256d s2 = _mm256_set1_pd(sigma2);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d third = _mm256_set1_pd(1.0 / 3.0);
  const __m256d cutoff = _mm256_set1_pd(kSqdistCutoff);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(u2 + i);
    __m256d far = _mm256_cmp_pd(v, cutoff, _CMP_GT_OQ);
    __m256d u = _mm256_sqrt_pd(_mm256_min_pd(v, cutoff));
    __m256d e = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), u));
    __m256d r;
    switch (nu) {
      case HalfIntNu::half:
        r = _mm256_mul_pd(s2, e);
        break;
      case HalfIntNu::three_half:
        r = _mm256_mul_pd(s2, _mm256_mul_pd(_mm256_add_pd(one, u), e));
        break;
      default:
        r = _mm256_mul_pd(
            s2, _mm256_mul_pd(_mm256_add_pd(_mm256_add_pd(one, u), _mm256_mul_pd(v, third)), e));
        break;
    }
    _mm256_storeu_pd(out + i, _mm256_andnot_pd(far, r));
  }
  if (i < n) scalar_ops().matern_halfint(u2 + i, n - i, nu, sigma2, out + i);
}

const Ops g_avx2{"avx2", sqdist_avx2, sqdist_min_avx2, vexp_avx2, matern_halfint_avx2};

}  // namespace

const Ops* avx2_ops() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &g_avx2 : nullptr;
}

#else

const Ops* avx2_ops() { return nullptr; }

#endif  // ARGOGP_HAVE_X86

}  // namespace argogp::kern
