#include "dersim/cost.hpp"

#include <bit>

#include "dersim/assemble.hpp"

namespace dersim {

u64 ceil_log2(u64 t) {
  if (t <= 1) return 0;
  return 64 - static_cast<u64>(std::countl_zero(t - 1));
}

CostReport levin_cost(const Program& program, std::span<const u8> target_y,
                      const Relation& relation, const TapeEnvironment& env,
                      u64 fuel_cap) {
  CostReport r;
  r.program_bits = program.bit_length();

  ExecutionResult ex =
      run(program, env, fuel_cap == 0 ? kDefaultFuelCap : fuel_cap);
  r.status = ex.status;
  r.trap = ex.trap;
  if (ex.halted()) {
    r.halt_steps = ex.steps_executed;
    r.log_time_bits = ceil_log2(ex.steps_executed);
    r.comparable =
        compare(relation, {ex.output.data(), ex.output.size()}, target_y);
    r.output = std::move(ex.output);
    if (r.comparable) r.cost_bits = r.program_bits + r.log_time_bits;
  }
  return r;
}

namespace {

// Streams tape `tid` to the output using a 16-bit cursor kept in RAM[0]
// (high byte) and RAM[1] (low byte); RAM starts zeroed so no setup code is
// needed. Each pass compares the cursor to LEN byte-by-byte, emits one tape
// byte, and increments with carry.
Program build_copy_program(u8 tid) {
  Assembler a;
  a.label("loop")
      .len(tid)        // L_hi, L_lo
      .load_ram(1)     // i_lo
      .sub()           // L_lo - i_lo
      .jz("lo_eq")
      .pop()           // discard L_hi
      .jmp("body");
  a.label("lo_eq")
      .load_ram(0)     // i_hi
      .sub()           // L_hi - i_hi
      .jz("done")
      .jmp("body");
  a.label("body")
      .load_ram(0)
      .load_ram(1)
      .read(tid)
      .out()
      .load_ram(1)
      .inc()
      .dup()
      .store_ram(1)
      .jz("carry")     // low byte wrapped to zero
      .jmp("loop");
  a.label("carry")
      .load_ram(0)
      .inc()
      .store_ram(0)
      .jmp("loop");
  a.label("done").halt();
  return a.assemble();
}

}  // namespace

Program copy_program(u8 tape_id) { return build_copy_program(tape_id); }

std::size_t copy_program_size() {
  return build_copy_program(0).bytecode.size();
}

Program literal_program(std::span<const u8> payload) {
  Bytes code;
  code.reserve(3 * payload.size() + 1);
  for (u8 b : payload) {
    code.push_back(op::PUSH);
    code.push_back(b);
    code.push_back(op::OUT);
  }
  code.push_back(op::HALT);
  return Program{std::move(code)};
}

}  // namespace dersim
