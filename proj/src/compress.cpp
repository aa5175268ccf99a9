// Conditional compressor: turns a target string into a self-extracting
// program. The encoder finds LZ-style matches against the environment tapes
// (the free conditioning material) and the already-produced output, packs
// them into the bit-exact token stream documented in estimate.hpp, and
// rides the stream into the program as PUSH immediates. A fixed decoder
// stub pops the stream off the value stack, keeps all scratch state in RAM,
// mirrors the output into RAM pages 2+ so copy-from-output tokens can be
// resolved, and halts on the end token.
//
// The bound is witnessed: the emitted program is actually run and priced,
// and compress falls back to the plain literal program whenever that is
// cheaper (or the stream would not fit on the stack).

#include <algorithm>
#include <array>
#include <cstring>
#include <unordered_map>

#include "dersim/assemble.hpp"
#include "dersim/estimate.hpp"

namespace dersim {

namespace {

constexpr std::size_t kMinMatch = 6;
constexpr std::size_t kMaxMatch = 4095;       // 12-bit length field
constexpr std::size_t kMaxLiteralRun = 4095;
constexpr std::size_t kMaxMirrorTarget = 65024;  // RAM mirror: 0x0200..0xFFFF
constexpr std::size_t kMaxStreamBytes = 60000;   // leave stack headroom
constexpr unsigned kChainScanCap = 128;

struct Token {
  enum class Kind : u8 { CopyTape, CopyOut, Literal, End };
  Kind kind = Kind::End;
  u8 tape_id = 0;
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
  Bytes literal;
};

class BitWriter {
 public:
  void put(std::uint32_t value, unsigned bits) {
    for (unsigned i = bits; i-- > 0;) put_bit((value >> i) & 1u);
  }
  Bytes finish() {
    if (fill_ > 0) {
      buf_.push_back(static_cast<u8>(cur_ << (8 - fill_)));
      cur_ = 0;
      fill_ = 0;
    }
    return std::move(buf_);
  }

 private:
  void put_bit(std::uint32_t b) {
    cur_ = static_cast<u8>(cur_ << 1 | b);
    if (++fill_ == 8) {
      buf_.push_back(cur_);
      cur_ = 0;
      fill_ = 0;
    }
  }
  Bytes buf_;
  u8 cur_ = 0;
  unsigned fill_ = 0;
};

Bytes pack_tokens(std::span<const Token> tokens) {
  BitWriter w;
  for (const Token& t : tokens) {
    switch (t.kind) {
      case Token::Kind::CopyTape:
        w.put(0, 2);
        w.put(t.tape_id, 4);
        w.put(t.offset, 16);
        w.put(t.length, 12);
        break;
      case Token::Kind::CopyOut:
        w.put(1, 2);
        w.put(t.offset, 16);
        w.put(t.length, 12);
        break;
      case Token::Kind::Literal:
        w.put(2, 2);
        w.put(static_cast<std::uint32_t>(t.literal.size()), 12);
        for (u8 b : t.literal) w.put(b, 8);
        break;
      case Token::Kind::End:
        w.put(3, 2);
        break;
    }
  }
  return w.finish();
}

// 4-gram hash chains over one source buffer.
struct MatchIndex {
  explicit MatchIndex(const Bytes& data) : data_(&data) {
    if (data.size() < 4) return;
    chains_.reserve(data.size());
    for (std::size_t i = 0; i + 4 <= data.size(); ++i)
      chains_[key(data.data() + i)].push_back(
          static_cast<std::uint32_t>(i));
  }

  static std::uint32_t key(const u8* p) {
    std::uint32_t k;
    std::memcpy(&k, p, 4);
    return k * 2654435761u;
  }

  // Longest match of `want` (bounded by max_len) starting anywhere in the
  // source; prefers the smallest offset among equal lengths.
  std::pair<std::size_t, std::uint32_t> best(std::span<const u8> want,
                                             std::size_t max_len) const {
    if (want.size() < 4 || !data_) return {0, 0};
    auto it = chains_.find(key(want.data()));
    if (it == chains_.end()) return {0, 0};
    std::size_t best_len = 0;
    std::uint32_t best_off = 0;
    unsigned scanned = 0;
    for (std::uint32_t pos : it->second) {
      if (++scanned > kChainScanCap) break;
      const std::size_t cap =
          std::min(max_len, std::min(want.size(), data_->size() - pos));
      std::size_t l = 0;
      while (l < cap && (*data_)[pos + l] == want[l]) ++l;
      if (l > best_len) {
        best_len = l;
        best_off = pos;
      }
    }
    return {best_len, best_off};
  }

  const Bytes* data_ = nullptr;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> chains_;
};

struct EncodedStream {
  std::vector<Token> tokens;
  Bytes packed;
  std::vector<u8> used_tapes;  // tape ids referenced by CopyTape tokens
  bool uses_copy_out = false;
  bool uses_literal = false;
};

EncodedStream encode(std::span<const u8> y, const TapeEnvironment& env) {
  EncodedStream s;
  const std::size_t ntapes = std::min<std::size_t>(env.tape_count(), 16);
  std::vector<MatchIndex> tape_idx;
  tape_idx.reserve(ntapes);
  for (std::size_t t = 0; t < ntapes; ++t) tape_idx.emplace_back(env.tape(t));

  // Self-referential matches resolve against the output mirror; the decoder
  // copies byte-by-byte, so a source range may overlap the write cursor
  // (run-length style).
  Bytes produced(y.begin(), y.end());
  MatchIndex self_idx(produced);

  Bytes pending;
  auto flush_literal = [&] {
    std::size_t at = 0;
    while (at < pending.size()) {
      const std::size_t n = std::min(kMaxLiteralRun, pending.size() - at);
      Token t;
      t.kind = Token::Kind::Literal;
      t.literal.assign(pending.begin() + static_cast<std::ptrdiff_t>(at),
                       pending.begin() + static_cast<std::ptrdiff_t>(at + n));
      s.tokens.push_back(std::move(t));
      s.uses_literal = true;
      at += n;
    }
    pending.clear();
  };

  std::array<bool, 16> tape_seen{};
  std::size_t i = 0;
  while (i < y.size()) {
    const std::span<const u8> want = y.subspan(i);
    std::size_t best_len = 0;
    Token best;

    for (std::size_t t = 0; t < ntapes; ++t) {
      auto [len, off] = tape_idx[t].best(want, kMaxMatch);
      if (len > best_len) {
        best_len = len;
        best.kind = Token::Kind::CopyTape;
        best.tape_id = static_cast<u8>(t);
        best.offset = off;
        best.length = static_cast<std::uint32_t>(len);
      }
    }
    {
      // Only positions strictly before i are valid output sources, but the
      // match may run past i (overlap).
      auto [len, off] = self_idx.best(want, kMaxMatch);
      while (len > 0 && off >= i) {
        // Chain returned a forward position; rescan capped to sources < i.
        len = 0;
        if (i >= 4) {
          std::size_t l = 0;
          // cheap fallback: direct scan of the last window
          const std::size_t lo = i > 4096 ? i - 4096 : 0;
          for (std::size_t p = lo; p + 4 <= i; ++p) {
            std::size_t m = 0;
            const std::size_t cap = std::min(kMaxMatch, want.size());
            while (m < cap && produced[p + m] == want[m]) ++m;
            if (m > l) {
              l = m;
              off = static_cast<std::uint32_t>(p);
            }
          }
          len = l;
        }
        break;
      }
      if (len > best_len && off < i) {
        best_len = len;
        best.kind = Token::Kind::CopyOut;
        best.tape_id = 0;
        best.offset = off;
        best.length = static_cast<std::uint32_t>(len);
      }
    }

    if (best_len >= kMinMatch) {
      flush_literal();
      if (best.kind == Token::Kind::CopyTape && !tape_seen[best.tape_id]) {
        tape_seen[best.tape_id] = true;
        s.used_tapes.push_back(best.tape_id);
      }
      s.uses_copy_out |= best.kind == Token::Kind::CopyOut;
      s.tokens.push_back(best);
      i += best_len;
    } else {
      pending.push_back(y[i]);
      ++i;
    }
  }
  flush_literal();
  s.tokens.push_back(Token{});  // End
  std::sort(s.used_tapes.begin(), s.used_tapes.end());
  s.packed = pack_tokens(s.tokens);
  return s;
}

// RAM cell assignments for the decoder stub.
constexpr std::uint16_t B_BUF = 0x00, B_CNT = 0x01, F_HI = 0x02, F_LO = 0x03,
                        F_N = 0x04, F_RET = 0x05, TAG = 0x06, TID = 0x07,
                        OFF_HI = 0x08, OFF_LO = 0x09, LEN_HI = 0x0A,
                        LEN_LO = 0x0B, PTR_HI = 0x0C, PTR_LO = 0x0D,
                        E_RET = 0x0E, TMP = 0x0F;

// Builds the decoder for a particular stream shape: per-tape copy loops are
// emitted only for tapes the stream actually references, and unused token
// kinds collapse into the dead trailer.
Program build_decoder(const EncodedStream& s, std::span<const u8> stream) {
  Assembler a;

  // Stream rides in as PUSH immediates, last byte first, so the first POP
  // yields stream byte 0.
  for (std::size_t i = stream.size(); i-- > 0;) a.push(stream[i]);

  // Mirror write pointer starts at RAM page 2.
  a.push(2).store_ram(PTR_HI);

  // MSB table: RAM[0x0100 + v] = 1 for v in 128..255 (page starts zeroed).
  a.push(128).store_ram(F_LO);
  a.label("init");
  a.push(1).push(1).load_ram(F_LO).store();
  a.load_ram(F_LO).inc().dup().store_ram(F_LO);
  a.jz("main");
  a.jmp("init");

  auto call_read = [&](u8 nbits, u8 sel) {
    a.push(nbits).store_ram(F_N).push(sel).store_ram(F_RET).jmp("field_read");
  };

  // --- token loop ---
  a.label("main");
  call_read(2, 0);
  a.label("rs_tag");
  a.load_ram(F_LO).store_ram(TAG);
  if (!s.used_tapes.empty()) {
    a.load_ram(TAG).jz("t_copy_tape");
  }
  if (s.uses_copy_out) {
    a.load_ram(TAG).push(1).sub().jz("t_copy_out");
  }
  if (s.uses_literal) {
    a.load_ram(TAG).push(2).sub().jz("t_literal");
  }
  a.halt();  // end token (or malformed stream)

  // --- copy-from-tape ---
  if (!s.used_tapes.empty()) {
    a.label("t_copy_tape");
    call_read(4, 1);
    a.label("rs_tid");
    a.load_ram(F_LO).store_ram(TID);
    call_read(16, 2);
    a.label("rs_ct_off");
    a.load_ram(F_HI).store_ram(OFF_HI).load_ram(F_LO).store_ram(OFF_LO);
    call_read(12, 3);
    a.label("rs_ct_len");
    a.load_ram(F_HI).store_ram(LEN_HI).load_ram(F_LO).store_ram(LEN_LO);
    for (std::size_t k = 0; k < s.used_tapes.size(); ++k) {
      a.load_ram(TID).push(s.used_tapes[k]).sub().jz("tape" +
                                                     std::to_string(k));
    }
    a.halt();  // unknown tape id: cannot happen in our own streams

    for (std::size_t k = 0; k < s.used_tapes.size(); ++k) {
      const std::string n = std::to_string(k);
      const u8 tid = s.used_tapes[k];
      a.label("tape" + n);
      a.load_ram(LEN_LO).jz("tape" + n + "_lochk");
      a.jmp("tape" + n + "_body");
      a.label("tape" + n + "_lochk");
      a.load_ram(LEN_HI).jz("main");
      a.jmp("tape" + n + "_body");
      a.label("tape" + n + "_body");
      a.load_ram(OFF_HI).load_ram(OFF_LO).read(tid);
      a.store_ram(TMP);
      a.push(static_cast<u8>(2 + k)).store_ram(E_RET).jmp("emit");
      a.label("es_tape" + n);
      a.load_ram(OFF_LO).inc().dup().store_ram(OFF_LO).jz("tape" + n +
                                                          "_offc");
      a.jmp("tape" + n + "_dec");
      a.label("tape" + n + "_offc");
      a.load_ram(OFF_HI).inc().store_ram(OFF_HI);
      a.label("tape" + n + "_dec");
      a.load_ram(LEN_LO).jz("tape" + n + "_borrow");
      a.load_ram(LEN_LO).push(1).sub().store_ram(LEN_LO).jmp("tape" + n);
      a.label("tape" + n + "_borrow");
      a.push(255).store_ram(LEN_LO);
      a.load_ram(LEN_HI).push(1).sub().store_ram(LEN_HI).jmp("tape" + n);
    }
  }

  // --- copy-from-output (mirror pages) ---
  if (s.uses_copy_out) {
    a.label("t_copy_out");
    call_read(16, 4);
    a.label("rs_co_off");
    a.load_ram(F_HI).store_ram(OFF_HI).load_ram(F_LO).store_ram(OFF_LO);
    call_read(12, 5);
    a.label("rs_co_len");
    a.load_ram(F_HI).store_ram(LEN_HI).load_ram(F_LO).store_ram(LEN_LO);
    a.label("co");
    a.load_ram(LEN_LO).jz("co_lochk");
    a.jmp("co_body");
    a.label("co_lochk");
    a.load_ram(LEN_HI).jz("main");
    a.jmp("co_body");
    a.label("co_body");
    // mirror address = 0x0200 + offset
    a.load_ram(OFF_HI).inc().inc().load_ram(OFF_LO).load();
    a.store_ram(TMP);
    a.push(1).store_ram(E_RET).jmp("emit");
    a.label("es_co");
    a.load_ram(OFF_LO).inc().dup().store_ram(OFF_LO).jz("co_offc");
    a.jmp("co_dec");
    a.label("co_offc");
    a.load_ram(OFF_HI).inc().store_ram(OFF_HI);
    a.label("co_dec");
    a.load_ram(LEN_LO).jz("co_borrow");
    a.load_ram(LEN_LO).push(1).sub().store_ram(LEN_LO).jmp("co");
    a.label("co_borrow");
    a.push(255).store_ram(LEN_LO);
    a.load_ram(LEN_HI).push(1).sub().store_ram(LEN_HI).jmp("co");
  }

  // --- literal run ---
  if (s.uses_literal) {
    a.label("t_literal");
    call_read(12, 6);
    a.label("rs_lit_len");
    a.load_ram(F_HI).store_ram(LEN_HI).load_ram(F_LO).store_ram(LEN_LO);
    a.label("lit");
    a.load_ram(LEN_LO).jz("lit_lochk");
    a.jmp("lit_body");
    a.label("lit_lochk");
    a.load_ram(LEN_HI).jz("main");
    a.jmp("lit_body");
    a.label("lit_body");
    call_read(8, 7);
    a.label("rs_lit_byte");
    a.load_ram(F_LO).store_ram(TMP);
    a.push(0).store_ram(E_RET).jmp("emit");
    a.label("es_lit");
    a.load_ram(LEN_LO).jz("lit_borrow");
    a.load_ram(LEN_LO).push(1).sub().store_ram(LEN_LO).jmp("lit");
    a.label("lit_borrow");
    a.push(255).store_ram(LEN_LO);
    a.load_ram(LEN_HI).push(1).sub().store_ram(LEN_HI).jmp("lit");
  }

  // --- bit-field reader ---
  // In: F_N = width, F_RET = return selector. Out: F_HI/F_LO. Bits are
  // MSB-first; one stream byte is popped whenever B_CNT runs dry.
  a.label("field_read");
  a.push(0).store_ram(F_HI);
  a.push(0).store_ram(F_LO);
  a.label("fr_loop");
  a.load_ram(B_CNT).jz("fr_refill");
  a.jmp("fr_have");
  a.label("fr_refill");
  a.store_ram(B_BUF);  // consumes the next stream byte off the stack
  a.push(8).store_ram(B_CNT);
  a.label("fr_have");
  a.push(1).load_ram(B_BUF).load();               // bit = MSB[bitbuf]
  a.load_ram(B_BUF).dup().add().store_ram(B_BUF); // bitbuf <<= 1
  a.load_ram(B_CNT).push(1).sub().store_ram(B_CNT);
  a.push(1).load_ram(F_LO).load();                // carry = MSB[F_LO]
  a.load_ram(F_HI).dup().add().add().store_ram(F_HI);
  a.load_ram(F_LO).dup().add().add().store_ram(F_LO);
  a.load_ram(F_N).push(1).sub().dup().store_ram(F_N);
  a.jz("fr_done");
  a.jmp("fr_loop");
  a.label("fr_done");
  const bool ct = !s.used_tapes.empty();
  auto ret_site = [&](u8 sel, const std::string& lbl, bool used) {
    a.load_ram(F_RET).push(sel).sub().jz(used ? lbl : "dead");
  };
  a.load_ram(F_RET).jz("rs_tag");
  ret_site(1, "rs_tid", ct);
  ret_site(2, "rs_ct_off", ct);
  ret_site(3, "rs_ct_len", ct);
  ret_site(4, "rs_co_off", s.uses_copy_out);
  ret_site(5, "rs_co_len", s.uses_copy_out);
  ret_site(6, "rs_lit_len", s.uses_literal);
  a.jmp(s.uses_literal ? "rs_lit_byte" : "dead");

  // --- emit: append TMP to the output and the RAM mirror, bump pointer ---
  a.label("emit");
  a.load_ram(TMP).dup().out();
  a.load_ram(PTR_HI).load_ram(PTR_LO).store();
  a.load_ram(PTR_LO).inc().dup().store_ram(PTR_LO).jz("emit_carry");
  a.jmp("emit_ret");
  a.label("emit_carry");
  a.load_ram(PTR_HI).inc().store_ram(PTR_HI);
  a.label("emit_ret");
  a.load_ram(E_RET).jz(s.uses_literal ? "es_lit" : "dead");
  a.load_ram(E_RET).push(1).sub().jz(s.uses_copy_out ? "es_co" : "dead");
  for (std::size_t k = 0; k < s.used_tapes.size(); ++k)
    a.load_ram(E_RET).push(static_cast<u8>(2 + k))
        .sub()
        .jz("es_tape" + std::to_string(k));
  a.label("dead");
  a.halt();

  return a.assemble();
}

}  // namespace

CompressResult compress_to_program(std::span<const u8> target_y,
                                   const TapeEnvironment& env) {
  const Relation exact = Relation::exact();
  const u64 measure_fuel = u64{1} << 26;

  CompressResult literal;
  literal.program = literal_program(target_y);
  literal.cost =
      levin_cost(literal.program, target_y, exact, env, measure_fuel);

  if (target_y.size() > kMaxMirrorTarget) return literal;

  EncodedStream s = encode(target_y, env);
  if (s.packed.size() > kMaxStreamBytes) return literal;

  CompressResult packed;
  packed.token_count = s.tokens.size();
  packed.stream_bytes = s.packed.size();
  packed.program = build_decoder(s, {s.packed.data(), s.packed.size()});
  packed.cost = levin_cost(packed.program, target_y, exact, env, measure_fuel);

  if (!packed.cost.finite()) return literal;  // should not happen; be safe
  if (literal.cost.finite() && *literal.cost.cost_bits <= *packed.cost.cost_bits)
    return literal;
  return packed;
}

}  // namespace dersim
