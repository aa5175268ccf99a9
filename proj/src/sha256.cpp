#include "dersim/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace dersim {

Digest sha256(std::span<const u8> data) {
  Digest out{};
  unsigned int n = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &n, EVP_sha256(),
                 nullptr) != 1 ||
      n != out.size())
    throw std::runtime_error("sha256 failed");
  return out;
}

std::string to_hex(std::span<const u8> data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * data.size());
  for (u8 b : data) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0)
    throw std::invalid_argument("hex string has odd length");
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2)
    out.push_back(static_cast<u8>(nib(hex[i]) << 4 | nib(hex[i + 1])));
  return out;
}

}  // namespace dersim
