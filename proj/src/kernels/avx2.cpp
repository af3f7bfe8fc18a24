// Compiled with -mavx2 when the toolchain targets x86-64; only reached after
// a runtime CPU check in dispatch.cpp.

#include "posso/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <vector>

namespace posso::kernels {

namespace {

// Conditional subtraction of p on 32-bit lanes holding values below 2p.
inline __m256i fold(__m256i v, __m256i pv) {
  return _mm256_min_epu32(v, _mm256_sub_epi32(v, pv));
}

// a * x mod p on eight lanes via Shoup's trick; lanes end up in [0, p).
inline __m256i mulmod8(__m256i xv, __m256i av, __m256i apv, __m256i pv) {
  __m256i q_even = _mm256_srli_epi64(_mm256_mul_epu32(xv, apv), 32);
  __m256i q_odd = _mm256_mul_epu32(_mm256_srli_epi64(xv, 32), apv);
  __m256i q = _mm256_blend_epi32(q_even, q_odd, 0xAA);
  __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(xv, av), _mm256_mullo_epi32(q, pv));
  return fold(r, pv);
}

void mul_acc_avx2(std::uint64_t* acc, const Elem* x, Elem a, std::size_t n) {
  const __m256i av = _mm256_set1_epi64x(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x0 = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(x + i)));
    __m256i x1 = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(x + i + 4)));
    __m256i* p0 = reinterpret_cast<__m256i*>(acc + i);
    __m256i* p1 = reinterpret_cast<__m256i*>(acc + i + 4);
    _mm256_storeu_si256(p0, _mm256_add_epi64(_mm256_loadu_si256(p0), _mm256_mul_epu32(x0, av)));
    _mm256_storeu_si256(p1, _mm256_add_epi64(_mm256_loadu_si256(p1), _mm256_mul_epu32(x1, av)));
  }
  const std::uint64_t a64 = a;
  for (; i < n; ++i) acc[i] += a64 * x[i];
}

void reduce_avx2(const std::uint64_t* acc, Elem* out, std::size_t n, const Modulus& m) {
  scalar_kernels().reduce(acc, out, n, m);
}

void axpy_avx2(Elem* y, const Elem* x, Elem a, std::size_t n, const Modulus& m) {
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(m.p));
  const __m256i av = _mm256_set1_epi32(static_cast<int>(a));
  const __m256i apv = _mm256_set1_epi32(static_cast<int>(m.shoup(a)));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    __m256i s = fold(_mm256_add_epi32(yv, mulmod8(xv, av, apv, pv)), pv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), s);
  }
  if (i < n) scalar_kernels().axpy(y + i, x + i, a, n - i, m);
}

void scale_avx2(Elem* y, Elem a, std::size_t n, const Modulus& m) {
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(m.p));
  const __m256i av = _mm256_set1_epi32(static_cast<int>(a));
  const __m256i apv = _mm256_set1_epi32(static_cast<int>(m.shoup(a)));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), mulmod8(yv, av, apv, pv));
  }
  if (i < n) scalar_kernels().scale(y + i, a, n - i, m);
}

void add_avx2(Elem* y, const Elem* x, std::size_t n, const Modulus& m) {
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(m.p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), fold(_mm256_add_epi32(yv, xv), pv));
  }
  if (i < n) scalar_kernels().add(y + i, x + i, n - i, m);
}

void sub_avx2(Elem* y, const Elem* x, std::size_t n, const Modulus& m) {
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(m.p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    __m256i d = _mm256_sub_epi32(yv, xv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), _mm256_min_epu32(d, _mm256_add_epi32(d, pv)));
  }
  if (i < n) scalar_kernels().sub(y + i, x + i, n - i, m);
}

// 4 x 8 tile kept in eight registers across the whole depth.
void mul_acc4_avx2(std::uint64_t* acc, std::size_t ldc, const Elem* a, const Elem* const* b,
                   std::size_t bs, std::size_t depth, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t off = 0; c + 8 <= n; c += 8, off += bs) {
    __m256i t[4][2];
    for (int r = 0; r < 4; ++r) {
      t[r][0] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + r * ldc + c));
      t[r][1] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + r * ldc + c + 4));
    }
    for (std::size_t k = 0; k < depth; ++k) {
      const Elem* bk = b[k] + off;
      const __m256i b0 = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(bk)));
      const __m256i b1 = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(bk + 4)));
      const Elem* ak = a + 4 * k;
      for (int r = 0; r < 4; ++r) {
        const __m256i av = _mm256_set1_epi64x(ak[r]);
        t[r][0] = _mm256_add_epi64(t[r][0], _mm256_mul_epu32(b0, av));
        t[r][1] = _mm256_add_epi64(t[r][1], _mm256_mul_epu32(b1, av));
      }
    }
    for (int r = 0; r < 4; ++r) {
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + r * ldc + c), t[r][0]);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + r * ldc + c + 4), t[r][1]);
    }
  }
  if (c == n) return;
  std::vector<const Elem*> tail(depth);
  for (std::size_t k = 0; k < depth; ++k) tail[k] = b[k] + (c / 8) * bs;
  scalar_kernels().mul_acc4(acc + c, ldc, a, tail.data(), bs, depth, n - c);
}

}  // namespace

const KernelTable* avx2_kernels_impl() {
  static const KernelTable table{"avx2",     mul_acc_avx2, reduce_avx2, axpy_avx2,
                                 scale_avx2, add_avx2,     sub_avx2,    mul_acc4_avx2};
  return &table;
}

}  // namespace posso::kernels

#else

namespace posso::kernels {
const KernelTable* avx2_kernels_impl() { return nullptr; }
}  // namespace posso::kernels

#endif
