// AVX2 variants of the byte kernels. This translation unit is the only one
// compiled with -mavx2; callers reach it through the runtime dispatch in
// bytes.cpp, so the binary stays runnable on non-AVX2 hosts.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "dersim/bytes.hpp"

namespace dersim::bytes::detail {

std::size_t hamming_avx2(const u8* a, const u8* b, std::size_t n) {
  std::size_t d = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i eq = _mm256_cmpeq_epi8(va, vb);
    std::uint32_t mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(eq));
    d += 32 - static_cast<std::size_t>(_mm_popcnt_u32(mask));
  }
  for (; i < n; ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

bool xor_equals_avx2(const u8* a, const u8* b, const u8* t, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i vt = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i));
    __m256i x = _mm256_xor_si256(va, vb);
    __m256i eq = _mm256_cmpeq_epi8(x, vt);
    if (static_cast<std::uint32_t>(_mm256_movemask_epi8(eq)) != 0xFFFFFFFFu)
      return false;
  }
  for (; i < n; ++i)
    if (static_cast<u8>(a[i] ^ b[i]) != t[i]) return false;
  return true;
}

}  // namespace dersim::bytes::detail

#endif
