#pragma once

// Levin cost accounting: a single run of a program is charged its bit
// length plus the ceiling log2 of its halt time. The machine is
// deterministic and output is defined at halt, so the minimum over run
// times collapses to the one halt time; a program that traps, runs out of
// fuel, or produces an incomparable output has infinite cost (in the
// adversarial game it simply loses).

#include <cstdint>
#include <optional>

#include "dersim/compare.hpp"
#include "dersim/vm.hpp"

namespace dersim {

// ceil(log2 t) with t >= 1; t == 1 gives 0.
u64 ceil_log2(u64 t);

inline constexpr u64 kDefaultFuelCap = u64{1} << 24;

struct CostReport {
  std::optional<u64> cost_bits;  // empty means infinite
  u64 program_bits = 0;          // 8 * |bytecode|
  u64 log_time_bits = 0;         // ceil(log2 halt_steps); 0 unless halted
  u64 halt_steps = 0;            // 0 unless halted
  std::optional<Bytes> output;   // present iff the run halted
  bool comparable = false;       // compare(relation, output, target)
  RunStatus status = RunStatus::Trapped;
  std::optional<TrapKind> trap;

  bool finite() const { return cost_bits.has_value(); }
};

// Runs the program once with the given fuel cap and prices the result.
CostReport levin_cost(const Program& program, std::span<const u8> target_y,
                      const Relation& relation, const TapeEnvironment& env,
                      u64 fuel_cap = kDefaultFuelCap);

// Fixed template that streams tape `tape_id` to the output and halts. The
// canonical low-cost producer when the disputed work is mounted verbatim.
// Template size is a constant of the instruction set; see copy_program_size().
Program copy_program(u8 tape_id);
std::size_t copy_program_size();

// Emits `payload` verbatim: PUSH k / OUT per byte, then HALT. Size is
// 3 * |payload| + 1 bytes; an empty payload is a lone HALT.
Program literal_program(std::span<const u8> payload);

}  // namespace dersim
