#pragma once

// Deterministic fuel-metered stack machine. Programs are raw byte strings;
// a program's bit length (8 bytes per opcode/immediate byte) is the |M|
// term charged by the cost module. Input tapes are read-only; the only
// write channels are the value stack, a 64 KiB scratch RAM, and the
// append-only output.
//
// Bytecode reference (operands inline, big-endian):
//   0x00 HALT            stop; the run's output is whatever was emitted
//   0x01 PUSH k          push immediate byte k
//   0x02 POP             drop top byte
//   0x03 DUP             duplicate top byte
//   0x04 SWAP            swap top two bytes
//   0x05 ADD             pop a, pop b, push (b + a) mod 256
//   0x06 SUB             pop a, pop b, push (b - a) mod 256
//   0x07 INC             pop a, push (a + 1) mod 256
//   0x08 JMP a16         absolute jump
//   0x09 JZ a16          pop c; jump iff c == 0
//   0x0A READ tid        pop lo, pop hi; push tape[tid][hi*256+lo], or 0x00
//                        when the index is past the end of the tape
//   0x0B LEN tid         push hi then lo of the 16-bit tape length
//   0x0C OUT             pop a byte, append it to the output
//   0x0D STORE           pop lo, pop hi, pop v; RAM[hi*256+lo] = v
//   0x0E LOAD            pop lo, pop hi; push RAM[hi*256+lo]
//   0x0F NOP             no effect
//   anything else        Trap(InvalidOpcode)
//
// 16-bit stack convention: the high byte is pushed first, so the low byte
// sits on top; consumers pop low then high. LEN's result can therefore
// feed READ/LOAD/STORE directly.
//
// Every dispatch (including the one that traps) consumes one unit of fuel
// and counts as one step. Execution past the last program byte, or an
// immediate that would cross it, traps PcOutOfRange.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dersim {

using u8 = std::uint8_t;
using u64 = std::uint64_t;
using Bytes = std::vector<u8>;

namespace op {
inline constexpr u8 HALT = 0x00;
inline constexpr u8 PUSH = 0x01;
inline constexpr u8 POP = 0x02;
inline constexpr u8 DUP = 0x03;
inline constexpr u8 SWAP = 0x04;
inline constexpr u8 ADD = 0x05;
inline constexpr u8 SUB = 0x06;
inline constexpr u8 INC = 0x07;
inline constexpr u8 JMP = 0x08;
inline constexpr u8 JZ = 0x09;
inline constexpr u8 READ = 0x0A;
inline constexpr u8 LEN = 0x0B;
inline constexpr u8 OUT = 0x0C;
inline constexpr u8 STORE = 0x0D;
inline constexpr u8 LOAD = 0x0E;
inline constexpr u8 NOP = 0x0F;
}  // namespace op

inline constexpr std::size_t kMaxTapeLen = 0xFFFF;        // 16-bit addressing
inline constexpr std::size_t kRamSize = 1u << 16;
inline constexpr std::size_t kMaxStackDepth = 1u << 16;
inline constexpr std::size_t kMaxOutputLen = 1u << 20;

struct Program {
  Bytes bytecode;  // length >= 1

  u64 bit_length() const { return 8 * static_cast<u64>(bytecode.size()); }
};

enum class DecodeError { Empty };

// Any non-empty byte string is a program; bad opcodes trap at run time so
// that enumeration over raw byte strings is total.
std::optional<Program> decode_program(std::span<const u8> bytes,
                                      DecodeError* err = nullptr);

class TapeError : public std::runtime_error {
 public:
  explicit TapeError(const std::string& what) : std::runtime_error(what) {}
};

// Ordered, immutable set of read-only input tapes; ids are dense from 0.
// Realizes the conditioning string of a cost query.
class TapeEnvironment {
 public:
  TapeEnvironment() = default;

  // Throws TapeError if the content exceeds kMaxTapeLen.
  void mount(Bytes content);

  std::size_t tape_count() const { return tapes_.size(); }
  const Bytes& tape(std::size_t id) const { return tapes_[id]; }
  bool mounted(std::size_t id) const { return id < tapes_.size(); }

 private:
  std::vector<Bytes> tapes_;
};

enum class RunStatus : u8 { Halted, FuelExhausted, Trapped };

enum class TrapKind : u8 {
  StackUnderflow,
  StackOverflow,
  PcOutOfRange,
  InvalidOpcode,
  UnmountedTape,
  OutputOverflow,
};

const char* to_string(RunStatus s);
const char* to_string(TrapKind k);

struct ExecutionResult {
  RunStatus status = RunStatus::Trapped;
  std::optional<TrapKind> trap;   // set iff status == Trapped
  Bytes output;                   // meaningful only when status == Halted
  u64 steps_executed = 0;
  // Highest program byte index fetched during the run (opcode or
  // immediate), or -1 if nothing was fetched. Diagnostic; enumeration uses
  // it to skip byte strings that cannot behave differently.
  std::int64_t max_byte_fetched = -1;

  bool halted() const { return status == RunStatus::Halted; }
};

// Reusable interpreter. A Vm instance owns its scratch state (stack, RAM,
// output buffer) and may be reused across runs; it is not thread-safe, but
// distinct instances run concurrently against shared environments.
class Vm {
 public:
  Vm();

  // Executes at most `fuel` instructions (fuel >= 1). Deterministic:
  // identical (program, env, fuel) yields a bit-identical result.
  ExecutionResult run(std::span<const u8> bytecode, const TapeEnvironment& env,
                      u64 fuel);

  // As run(), but does not copy the output into the result (the internal
  // buffer stays valid until the next run). Used by the enumeration loop.
  const ExecutionResult& run_borrowed(std::span<const u8> bytecode,
                                      const TapeEnvironment& env, u64 fuel);
  std::span<const u8> last_output() const {
    return {output_.data(), output_.size()};
  }

 private:
  std::vector<u8> stack_;
  std::vector<u8> ram_;
  std::vector<u8> output_;
  std::vector<std::uint32_t> dirty_ram_;  // journal for cheap reset
  ExecutionResult scratch_;
};

inline ExecutionResult run(const Program& p, const TapeEnvironment& env,
                           u64 fuel) {
  Vm vm;
  return vm.run({p.bytecode.data(), p.bytecode.size()}, env, fuel);
}

}  // namespace dersim
