#include "dersim/vm.hpp"

#include <cstring>

namespace dersim {

std::optional<Program> decode_program(std::span<const u8> bytes,
                                      DecodeError* err) {
  if (bytes.empty()) {
    if (err) *err = DecodeError::Empty;
    return std::nullopt;
  }
  return Program{Bytes(bytes.begin(), bytes.end())};
}

void TapeEnvironment::mount(Bytes content) {
  if (content.size() > kMaxTapeLen)
    throw TapeError("tape exceeds 16-bit addressing limit: " +
                    std::to_string(content.size()) + " bytes");
  tapes_.push_back(std::move(content));
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Halted: return "halted";
    case RunStatus::FuelExhausted: return "fuel_exhausted";
    case RunStatus::Trapped: return "trapped";
  }
  return "?";
}

const char* to_string(TrapKind k) {
  switch (k) {
    case TrapKind::StackUnderflow: return "stack_underflow";
    case TrapKind::StackOverflow: return "stack_overflow";
    case TrapKind::PcOutOfRange: return "pc_out_of_range";
    case TrapKind::InvalidOpcode: return "invalid_opcode";
    case TrapKind::UnmountedTape: return "unmounted_tape";
    case TrapKind::OutputOverflow: return "output_overflow";
  }
  return "?";
}

Vm::Vm() {
  stack_.reserve(4096);
  ram_.assign(kRamSize, 0);
  output_.reserve(4096);
  dirty_ram_.reserve(256);
}

const ExecutionResult& Vm::run_borrowed(std::span<const u8> bytecode,
                                        const TapeEnvironment& env, u64 fuel) {
  // Reset scratch state. RAM is reset through the dirty journal so that the
  // common case (few or no stores) costs nothing proportional to kRamSize.
  stack_.clear();
  output_.clear();
  if (dirty_ram_.size() > kRamSize / 8) {
    std::memset(ram_.data(), 0, ram_.size());
  } else {
    for (std::uint32_t a : dirty_ram_) ram_[a] = 0;
  }
  dirty_ram_.clear();

  ExecutionResult& r = scratch_;
  r.status = RunStatus::Trapped;
  r.trap.reset();
  r.output.clear();
  r.steps_executed = 0;
  r.max_byte_fetched = -1;

  const u8* code = bytecode.data();
  const std::size_t len = bytecode.size();
  std::size_t pc = 0;
  u64 steps = 0;
  std::int64_t hi_fetch = -1;

  auto fetch_ok = [&](std::size_t idx) {
    if (static_cast<std::int64_t>(idx) > hi_fetch)
      hi_fetch = static_cast<std::int64_t>(idx);
  };

  TrapKind trap{};
  bool trapped = false;
  bool halted = false;

  while (steps < fuel) {
    ++steps;
    if (pc >= len) {
      trapped = true;
      trap = TrapKind::PcOutOfRange;
      break;
    }
    fetch_ok(pc);
    const u8 opcode = code[pc];

    switch (opcode) {
      case op::HALT:
        ++pc;
        halted = true;
        break;
      case op::PUSH: {
        if (pc + 1 >= len) { trapped = true; trap = TrapKind::PcOutOfRange; break; }
        fetch_ok(pc + 1);
        if (stack_.size() >= kMaxStackDepth) { trapped = true; trap = TrapKind::StackOverflow; break; }
        stack_.push_back(code[pc + 1]);
        pc += 2;
        break;
      }
      case op::POP: {
        if (stack_.empty()) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        stack_.pop_back();
        ++pc;
        break;
      }
      case op::DUP: {
        if (stack_.empty()) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        if (stack_.size() >= kMaxStackDepth) { trapped = true; trap = TrapKind::StackOverflow; break; }
        stack_.push_back(stack_.back());
        ++pc;
        break;
      }
      case op::SWAP: {
        if (stack_.size() < 2) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        std::swap(stack_[stack_.size() - 1], stack_[stack_.size() - 2]);
        ++pc;
        break;
      }
      case op::ADD: {
        if (stack_.size() < 2) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        const u8 a = stack_.back();
        stack_.pop_back();
        stack_.back() = static_cast<u8>(stack_.back() + a);
        ++pc;
        break;
      }
      case op::SUB: {
        if (stack_.size() < 2) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        const u8 a = stack_.back();
        stack_.pop_back();
        stack_.back() = static_cast<u8>(stack_.back() - a);
        ++pc;
        break;
      }
      case op::INC: {
        if (stack_.empty()) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        stack_.back() = static_cast<u8>(stack_.back() + 1);
        ++pc;
        break;
      }
      case op::JMP: {
        if (pc + 2 >= len) { trapped = true; trap = TrapKind::PcOutOfRange; break; }
        fetch_ok(pc + 2);
        pc = static_cast<std::size_t>(code[pc + 1]) << 8 | code[pc + 2];
        break;
      }
      case op::JZ: {
        if (pc + 2 >= len) { trapped = true; trap = TrapKind::PcOutOfRange; break; }
        fetch_ok(pc + 2);
        if (stack_.empty()) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        const u8 c = stack_.back();
        stack_.pop_back();
        if (c == 0)
          pc = static_cast<std::size_t>(code[pc + 1]) << 8 | code[pc + 2];
        else
          pc += 3;
        break;
      }
      case op::READ: {
        if (pc + 1 >= len) { trapped = true; trap = TrapKind::PcOutOfRange; break; }
        fetch_ok(pc + 1);
        const u8 tid = code[pc + 1];
        if (!env.mounted(tid)) { trapped = true; trap = TrapKind::UnmountedTape; break; }
        if (stack_.size() < 2) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        const u8 lo = stack_.back();
        stack_.pop_back();
        const u8 hi = stack_.back();
        const std::size_t idx = static_cast<std::size_t>(hi) << 8 | lo;
        const Bytes& tape = env.tape(tid);
        stack_.back() = idx < tape.size() ? tape[idx] : u8{0};
        pc += 2;
        break;
      }
      case op::LEN: {
        if (pc + 1 >= len) { trapped = true; trap = TrapKind::PcOutOfRange; break; }
        fetch_ok(pc + 1);
        const u8 tid = code[pc + 1];
        if (!env.mounted(tid)) { trapped = true; trap = TrapKind::UnmountedTape; break; }
        if (stack_.size() + 2 > kMaxStackDepth) { trapped = true; trap = TrapKind::StackOverflow; break; }
        const std::size_t n = env.tape(tid).size();
        stack_.push_back(static_cast<u8>(n >> 8));
        stack_.push_back(static_cast<u8>(n & 0xFF));
        pc += 2;
        break;
      }
      case op::OUT: {
        if (stack_.empty()) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        if (output_.size() >= kMaxOutputLen) { trapped = true; trap = TrapKind::OutputOverflow; break; }
        output_.push_back(stack_.back());
        stack_.pop_back();
        ++pc;
        break;
      }
      case op::STORE: {
        if (stack_.size() < 3) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        const u8 lo = stack_.back();
        stack_.pop_back();
        const u8 hi = stack_.back();
        stack_.pop_back();
        const u8 v = stack_.back();
        stack_.pop_back();
        const std::size_t addr = static_cast<std::size_t>(hi) << 8 | lo;
        ram_[addr] = v;
        dirty_ram_.push_back(static_cast<std::uint32_t>(addr));
        ++pc;
        break;
      }
      case op::LOAD: {
        if (stack_.size() < 2) { trapped = true; trap = TrapKind::StackUnderflow; break; }
        const u8 lo = stack_.back();
        stack_.pop_back();
        const u8 hi = stack_.back();
        const std::size_t addr = static_cast<std::size_t>(hi) << 8 | lo;
        stack_.back() = ram_[addr];
        ++pc;
        break;
      }
      case op::NOP:
        ++pc;
        break;
      default:
        trapped = true;
        trap = TrapKind::InvalidOpcode;
        break;
    }
    if (halted || trapped) break;
  }

  r.steps_executed = steps;
  r.max_byte_fetched = hi_fetch;
  if (halted) {
    r.status = RunStatus::Halted;
  } else if (trapped) {
    r.status = RunStatus::Trapped;
    r.trap = trap;
  } else {
    r.status = RunStatus::FuelExhausted;
  }
  return r;
}

ExecutionResult Vm::run(std::span<const u8> bytecode,
                        const TapeEnvironment& env, u64 fuel) {
  ExecutionResult r = run_borrowed(bytecode, env, fuel);
  if (r.status == RunStatus::Halted)
    r.output.assign(output_.begin(), output_.end());
  return r;
}

}  // namespace dersim
