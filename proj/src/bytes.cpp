#include "dersim/bytes.hpp"

#include <cstring>

namespace dersim::bytes {

namespace detail {

std::size_t hamming_scalar(const u8* a, const u8* b, std::size_t n) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

bool xor_equals_scalar(const u8* a, const u8* b, const u8* t, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<u8>(a[i] ^ b[i]) != t[i]) return false;
  return true;
}

}  // namespace detail

namespace {

using HammingFn = std::size_t (*)(const u8*, const u8*, std::size_t);
using XorEqFn = bool (*)(const u8*, const u8*, const u8*, std::size_t);

struct Dispatch {
  HammingFn hamming;
  XorEqFn xor_equals;
  const char* name;
};

Dispatch pick_cpu_dispatch() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2"))
    return {detail::hamming_avx2, detail::xor_equals_avx2, "avx2"};
#endif
  return {detail::hamming_scalar, detail::xor_equals_scalar, "scalar"};
}

Dispatch g_active = pick_cpu_dispatch();

}  // namespace

bool equal(std::span<const u8> a, std::span<const u8> b) {
  if (a.size() != b.size()) return false;
  return a.empty() || std::memcmp(a.data(), b.data(), a.size()) == 0;
}

std::size_t hamming(std::span<const u8> a, std::span<const u8> b) {
  return g_active.hamming(a.data(), b.data(), a.size());
}

bool xor_equals(std::span<const u8> a, std::span<const u8> b,
                std::span<const u8> t) {
  return g_active.xor_equals(a.data(), b.data(), t.data(), a.size());
}

const char* active_kernel() { return g_active.name; }

void force_scalar(bool on) {
  g_active = on ? Dispatch{detail::hamming_scalar, detail::xor_equals_scalar,
                           "scalar"}
                : pick_cpu_dispatch();
}

}  // namespace dersim::bytes
