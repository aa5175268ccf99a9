#pragma once

// Case bundles: the on-disk package of works, background tapes, relation,
// submitted programs, and expected outcome. Ships the built-in synthetic
// fixtures (seeded, integer-only, bitwise stable) and the advisory gaming
// lints.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dersim/compare.hpp"
#include "dersim/game.hpp"
#include "dersim/vm.hpp"

namespace dersim {

struct Expected {
  std::string dersim_band;  // "negligible" | "partial" | "near-total"
  std::int64_t threshold_bits = 0;
  // negligible: |dersim_bits| <= threshold_bits
  // near-total: dersim_bits >= threshold_bits
};

struct Case {
  std::string name;
  Bytes x;
  Bytes y;
  Background bg;
  Relation relation;
  std::optional<Program> plaintiff_program;
  std::optional<Program> defendant_program;
  std::optional<Expected> expected;
  u64 seed = 0;  // generation seed recorded in the manifest
};

enum class LintKind : u8 {
  ContextContainsTarget,   // y appears verbatim inside a context tape
  XorPairReconstruction,   // two context tapes XOR to y (2-of-2 sharing)
  OversizeTape,
  RelationNotReflexive,
};

const char* to_string(LintKind k);

struct LintFinding {
  LintKind kind;
  std::string detail;
};

// Advisory by default; callers decide whether findings are fatal. The
// XOR-pair scan covers every pair of y-length context tapes.
std::vector<LintFinding> validate_case(const Case& c);

class LoadError : public std::runtime_error {
 public:
  enum class Kind { MissingFile, BadManifest, OversizeTape, LintFailure };

  LoadError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Reads a bundle directory (manifest.json plus binary files). With
// strict_lint, any lint finding is promoted to LoadError::LintFailure.
Case load_case(const std::filesystem::path& dir, bool strict_lint = false);

// Writes the bundle layout for a case (used by `case builtin --emit`).
void emit_case(const Case& c, const std::filesystem::path& dir);

// The shipped fixtures, generated deterministically from per-fixture seeds.
std::vector<std::string> builtin_case_names();
Case builtin_case(const std::string& name);
std::vector<Case> builtin_cases();

// Fixed public mixing function behind the hash_shortcut fixture: an 8-bit
// rotate-left-then-add checksum. Not cryptographic; it only needs to be
// public, deterministic, and cheap for the machine to compute.
u8 mix_hash8(std::span<const u8> data);

// Brute-force preimage walker for the hash fixture: scans 32-bit strings in
// lexicographic order, hashing each with mix_hash8 and comparing against
// the single byte of tape `digest_tape_id`; skips `skip` matches before
// printing the next one and halting. skip picks WHICH preimage is produced
// (0 = first), which is exactly the information a searcher must pay for.
Program hash_preimage_search_program(u8 digest_tape_id, std::uint16_t skip);

// True when the empirical report satisfies the case's expected block.
bool expected_holds(const Expected& e, const DerSimReport& rep);

}  // namespace dersim
