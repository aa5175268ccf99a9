#pragma once

// SHA-256 (FIPS 180-4) via OpenSSL, plus hex helpers for manifests and
// transcripts.

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "dersim/vm.hpp"

namespace dersim {

using Digest = std::array<u8, 32>;

Digest sha256(std::span<const u8> data);

std::string to_hex(std::span<const u8> data);
Bytes from_hex(const std::string& hex);  // throws std::invalid_argument

}  // namespace dersim
