#pragma once

// The comparability relation deciding whether a produced string counts as
// the disputed work. Reflexive by construction; exact equality is the
// default everywhere, with a byte-granular Hamming threshold as the one
// shipped alternative. Extending the set of relations means extending the
// Kind enum and the switch in compare().

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dersim/vm.hpp"

namespace dersim {

struct Relation {
  enum class Kind : u8 { ExactEquality, HammingThreshold };

  Kind kind = Kind::ExactEquality;
  // Max number of differing byte positions; only meaningful for
  // HammingThreshold (which also requires equal lengths).
  u64 max_distance = 0;

  static Relation exact() { return {}; }
  static Relation hamming(u64 max_distance) {
    return {Kind::HammingThreshold, max_distance};
  }
};

bool compare(const Relation& r, std::span<const u8> z, std::span<const u8> y);

struct ReflexivityDiagnostics {
  std::vector<bool> per_sample;  // compare(r, s, s) for each sample
  bool all_pass = true;
};

ReflexivityDiagnostics check_reflexive(const Relation& r,
                                       std::span<const Bytes> samples);

// Manifest spelling: {"kind":"exact"} or {"kind":"hamming","max":N}; also
// accepts the CLI shorthand "exact" / "hamming:N".
Relation parse_relation(const std::string& text);
std::string relation_to_string(const Relation& r);

}  // namespace dersim
