#pragma once

// Two-pass label assembler for the machine's bytecode. Only used to author
// the built-in program templates (copy loops, the self-extracting decoder
// stub, fixture producers) and tests; the engine itself never needs it.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dersim/vm.hpp"

namespace dersim {

class AssembleError : public std::runtime_error {
 public:
  explicit AssembleError(const std::string& what) : std::runtime_error(what) {}
};

class Assembler {
 public:
  Assembler& label(const std::string& name);

  Assembler& halt() { return emit(op::HALT); }
  Assembler& push(u8 k) { return emit(op::PUSH, k); }
  Assembler& pop() { return emit(op::POP); }
  Assembler& dup() { return emit(op::DUP); }
  Assembler& swap() { return emit(op::SWAP); }
  Assembler& add() { return emit(op::ADD); }
  Assembler& sub() { return emit(op::SUB); }
  Assembler& inc() { return emit(op::INC); }
  Assembler& jmp(const std::string& target) { return jump(op::JMP, target); }
  Assembler& jz(const std::string& target) { return jump(op::JZ, target); }
  Assembler& read(u8 tape_id) { return emit(op::READ, tape_id); }
  Assembler& len(u8 tape_id) { return emit(op::LEN, tape_id); }
  Assembler& out() { return emit(op::OUT); }
  Assembler& store() { return emit(op::STORE); }
  Assembler& load() { return emit(op::LOAD); }
  Assembler& nop() { return emit(op::NOP); }
  Assembler& raw(u8 byte);

  // Convenience composites (they expand to plain instructions).
  Assembler& push16(std::uint16_t v);     // push hi then lo
  Assembler& load_ram(std::uint16_t a);   // push RAM[a]
  Assembler& store_ram(std::uint16_t a);  // RAM[a] = popped value

  std::size_t size() const { return code_.size(); }

  // Resolves labels; throws AssembleError on unknown or duplicate labels.
  Program assemble() const;

 private:
  Assembler& emit(u8 a);
  Assembler& emit(u8 a, u8 b);
  Assembler& jump(u8 opcode, const std::string& target);

  Bytes code_;
  std::map<std::string, std::size_t> labels_;
  std::vector<std::pair<std::size_t, std::string>> fixups_;  // imm offset
};

}  // namespace dersim
