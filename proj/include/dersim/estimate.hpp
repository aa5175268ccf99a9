#pragma once

// Bounded computation of the uncomputable quantities: exact minima on
// micro-instances by budgeted shortlex enumeration, witnessed upper bounds
// on realistic instances by a compressor that emits self-extracting
// programs. Every bound carries its witness program; re-running the witness
// through the cost module reproduces the bound exactly.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dersim/compare.hpp"
#include "dersim/cost.hpp"
#include "dersim/game.hpp"
#include "dersim/vm.hpp"

namespace dersim {

struct BoundReport {
  enum class Kind : u8 { ExactWithinBudget, UpperBound };

  Kind kind = Kind::UpperBound;
  u64 value_bits = 0;
  Program witness;
  u64 budget_bits = 0;
  // True only if every program whose total Levin cost could fit the budget
  // was tried (fuel 2^(budget - 8|M|) per length-|M| program).
  bool exhaustive = false;
};

struct EnumerateOptions {
  u64 budget_bits = 48;
  // Deterministic work cap, applied per (length, first byte) partition so
  // serial and parallel runs visit the same set. 0 means unlimited.
  u64 visit_cap = u64{1} << 31;
  // Worker threads; 0 = serial in the calling thread. Results are merged
  // by (cost, shortlex witness), so the thread count never changes output.
  unsigned threads = 0;
};

struct EnumerationStats {
  u64 programs_visited = 0;  // shortlex blocks actually run
  bool capped = false;       // a partition hit the visit cap
};

// Minimal witnessed Levin cost over all programs within the budget for one
// target, or nullopt when nothing comparable was found
// (NoWitnessWithinBudget). Ties break to the shortlex-least program.
std::optional<BoundReport> enumerate_min_cost(
    std::span<const u8> target_y, const Relation& relation,
    const TapeEnvironment& env, const EnumerateOptions& opts,
    EnumerationStats* stats = nullptr);

// Same scan evaluated against many targets at once (one pass over the
// program space regardless of target count). Entry i corresponds to
// targets[i].
std::vector<std::optional<BoundReport>> enumerate_min_cost_multi(
    std::span<const Bytes> targets, const Relation& relation,
    const TapeEnvironment& env, const EnumerateOptions& opts,
    EnumerationStats* stats = nullptr);

// Token stream layout emitted by the compressor (bit-packed, MSB first):
//   tag 2 bits: 0 copy-from-tape, 1 copy-from-output, 2 literal, 3 end
//   copy-from-tape:   tape id 4 bits, offset 16 bits, length 12 bits
//   copy-from-output: offset 16 bits, length 12 bits
//   literal:          length 12 bits, then length raw bytes
// The stream rides into the program as PUSH immediates consumed off the
// stack by a fixed decoder stub; running the program reproduces the target.
struct CompressResult {
  Program program;
  CostReport cost;            // measured by actually running the program
  u64 token_count = 0;
  u64 stream_bytes = 0;
};

CompressResult compress_to_program(std::span<const u8> target_y,
                                   const TapeEnvironment& env);

// Best witnessed upper bound on K~(y | env) across the cheap routes:
// literal hard-coding, the compressor, and (when the budget is workable)
// enumeration. Always witnessed.
BoundReport best_upper_bound(std::span<const u8> target_y,
                             const Relation& relation,
                             const TapeEnvironment& env,
                             const EnumerateOptions& enum_opts);

struct DerSimBounds {
  std::optional<BoundReport> k_bg;    // bound on K~(y | bg)
  std::optional<BoundReport> k_bg_x;  // bound on K~(y | bg, x)
  std::optional<std::int64_t> dersim_exact;      // only when both exhaustive
  std::optional<std::int64_t> dersim_heuristic;  // difference of upper bounds
  bool exact = false;  // rigor label; heuristic gaps are NOT bounds
};

DerSimBounds theoretical_dersim(std::span<const u8> x, std::span<const u8> y,
                                const Background& bg, const Relation& relation,
                                const EnumerateOptions& opts);

}  // namespace dersim
