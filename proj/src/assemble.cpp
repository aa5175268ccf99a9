#include "dersim/assemble.hpp"

namespace dersim {

Assembler& Assembler::label(const std::string& name) {
  auto [it, fresh] = labels_.emplace(name, code_.size());
  if (!fresh) throw AssembleError("duplicate label: " + name);
  return *this;
}

Assembler& Assembler::emit(u8 a) {
  code_.push_back(a);
  return *this;
}

Assembler& Assembler::emit(u8 a, u8 b) {
  code_.push_back(a);
  code_.push_back(b);
  return *this;
}

Assembler& Assembler::raw(u8 byte) { return emit(byte); }

Assembler& Assembler::jump(u8 opcode, const std::string& target) {
  code_.push_back(opcode);
  fixups_.emplace_back(code_.size(), target);
  code_.push_back(0);
  code_.push_back(0);
  return *this;
}

Assembler& Assembler::push16(std::uint16_t v) {
  push(static_cast<u8>(v >> 8));
  push(static_cast<u8>(v & 0xFF));
  return *this;
}

Assembler& Assembler::load_ram(std::uint16_t a) {
  push16(a);
  return load();
}

Assembler& Assembler::store_ram(std::uint16_t a) {
  push16(a);
  return store();
}

Program Assembler::assemble() const {
  Bytes out = code_;
  for (const auto& [offset, name] : fixups_) {
    auto it = labels_.find(name);
    if (it == labels_.end()) throw AssembleError("unknown label: " + name);
    if (it->second > 0xFFFF) throw AssembleError("label out of 16-bit range");
    out[offset] = static_cast<u8>(it->second >> 8);
    out[offset + 1] = static_cast<u8>(it->second & 0xFF);
  }
  if (out.empty()) throw AssembleError("empty program");
  return Program{std::move(out)};
}

}  // namespace dersim
