#pragma once

// Flat byte-string kernels used on the comparison-heavy paths (relation
// checks, lint scans, dictionary probing). Each kernel has a scalar
// reference implementation and an AVX2 variant; the active variant is
// picked once at startup from CPUID and can be pinned to scalar for
// equivalence testing.

#include <cstddef>
#include <cstdint>
#include <span>

namespace dersim::bytes {

using u8 = std::uint8_t;

// Byte-wise equality. Length mismatch is false.
bool equal(std::span<const u8> a, std::span<const u8> b);

// Number of positions where a and b differ. Requires a.size() == b.size().
std::size_t hamming(std::span<const u8> a, std::span<const u8> b);

// True iff (a[i] ^ b[i]) == t[i] for all i. Requires equal sizes.
bool xor_equals(std::span<const u8> a, std::span<const u8> b,
                std::span<const u8> t);

// Name of the kernel set currently in use: "avx2" or "scalar".
const char* active_kernel();

// Pin the dispatch to the scalar reference kernels (true) or restore the
// CPU-selected ones (false). Used by the equivalence tests.
void force_scalar(bool on);

namespace detail {
// Scalar reference kernels, always available; the SIMD variants are
// equivalence-tested against these.
std::size_t hamming_scalar(const u8* a, const u8* b, std::size_t n);
bool xor_equals_scalar(const u8* a, const u8* b, const u8* t, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
std::size_t hamming_avx2(const u8* a, const u8* b, std::size_t n);
bool xor_equals_avx2(const u8* a, const u8* b, const u8* t, std::size_t n);
#endif
}  // namespace detail

}  // namespace dersim::bytes
