// Built-in synthetic fixtures. Real case materials are replaced by seeded
// stand-ins with the same structure: the precedent analyses argue about
// the *shape* of the best producer/reproducer pair (both sides index into
// agreed background material), so that is what the fixtures preserve. All
// generation is integer-only off splitmix64 so the bundles are bitwise
// stable across platforms.

#include <algorithm>
#include <set>

#include "dersim/assemble.hpp"
#include "dersim/casebook.hpp"
#include "dersim/cost.hpp"
#include "dersim/rng.hpp"

namespace dersim {

namespace {

// RAM cells shared by the fixture programs (each run starts zeroed).
constexpr std::uint16_t K_HI = 0, K_LO = 1, REC = 2, OFF_HI = 3, OFF_LO = 4;

void emit_inc16(Assembler& a, std::uint16_t hi, std::uint16_t lo,
                const std::string& tag) {
  a.load_ram(lo).inc().dup().store_ram(lo).jz(tag + "_carry");
  a.jmp(tag + "_done");
  a.label(tag + "_carry").load_ram(hi).inc().store_ram(hi);
  a.label(tag + "_done");
}

// Streams tape `tid` to the output (cursor in K_HI/K_LO), then jumps to
// `exit_to` instead of halting so callers can append a continuation.
void emit_stream_tape(Assembler& a, u8 tid, const std::string& p,
                      const std::string& exit_to) {
  a.label(p + "_top").len(tid).load_ram(K_LO).sub().jz(p + "_chk");
  a.pop().jmp(p + "_body");
  a.label(p + "_chk").load_ram(K_HI).sub().jz(exit_to);
  a.jmp(p + "_body");
  a.label(p + "_body").load_ram(K_HI).load_ram(K_LO).read(tid).out();
  emit_inc16(a, K_HI, K_LO, p + "_k");
  a.jmp(p + "_top");
}

// One pass over a list of 2-byte big-endian offsets held on tape
// `offsets_tid`, copying `rec_width` bytes from `src_tid` per entry. The
// pass covers offsets-tape positions [k, end) where `end` is either a
// fixed boundary or the tape length. Jumps to `exit_to` when done.
void emit_offset_copy_loop(Assembler& a, u8 offsets_tid, u8 src_tid,
                           u8 rec_width, std::optional<std::uint16_t> end_at,
                           const std::string& p, const std::string& exit_to) {
  a.label(p + "_top");
  if (end_at) {
    a.load_ram(K_LO).push(static_cast<u8>(*end_at & 0xFF)).sub();
    a.jz(p + "_chk");
    a.jmp(p + "_body");
    a.label(p + "_chk");
    a.load_ram(K_HI).push(static_cast<u8>(*end_at >> 8)).sub();
    a.jz(exit_to);
    a.jmp(p + "_body");
  } else {
    a.len(offsets_tid).load_ram(K_LO).sub().jz(p + "_chk");
    a.pop().jmp(p + "_body");
    a.label(p + "_chk").load_ram(K_HI).sub().jz(exit_to);
    a.jmp(p + "_body");
  }
  a.label(p + "_body");
  a.load_ram(K_HI).load_ram(K_LO).read(offsets_tid).store_ram(OFF_HI);
  emit_inc16(a, K_HI, K_LO, p + "_k1");
  a.load_ram(K_HI).load_ram(K_LO).read(offsets_tid).store_ram(OFF_LO);
  emit_inc16(a, K_HI, K_LO, p + "_k2");
  a.push(rec_width).store_ram(REC);
  a.label(p + "_copy");
  a.load_ram(OFF_HI).load_ram(OFF_LO).read(src_tid).out();
  emit_inc16(a, OFF_HI, OFF_LO, p + "_off");
  a.load_ram(REC).push(1).sub().dup().store_ram(REC);
  a.jz(p + "_top");
  a.jmp(p + "_copy");
}

// Variant reading (offset_hi, offset_lo, length) triples; length is one
// byte and must be nonzero.
void emit_range_copy_loop(Assembler& a, u8 ranges_tid, u8 src_tid,
                          std::optional<std::uint16_t> end_at,
                          const std::string& p, const std::string& exit_to) {
  a.label(p + "_top");
  if (end_at) {
    a.load_ram(K_LO).push(static_cast<u8>(*end_at & 0xFF)).sub();
    a.jz(p + "_chk");
    a.jmp(p + "_body");
    a.label(p + "_chk");
    a.load_ram(K_HI).push(static_cast<u8>(*end_at >> 8)).sub();
    a.jz(exit_to);
    a.jmp(p + "_body");
  } else {
    a.len(ranges_tid).load_ram(K_LO).sub().jz(p + "_chk");
    a.pop().jmp(p + "_body");
    a.label(p + "_chk").load_ram(K_HI).sub().jz(exit_to);
    a.jmp(p + "_body");
  }
  a.label(p + "_body");
  a.load_ram(K_HI).load_ram(K_LO).read(ranges_tid).store_ram(OFF_HI);
  emit_inc16(a, K_HI, K_LO, p + "_k1");
  a.load_ram(K_HI).load_ram(K_LO).read(ranges_tid).store_ram(OFF_LO);
  emit_inc16(a, K_HI, K_LO, p + "_k2");
  a.load_ram(K_HI).load_ram(K_LO).read(ranges_tid).store_ram(REC);
  emit_inc16(a, K_HI, K_LO, p + "_k3");
  a.label(p + "_copy");
  a.load_ram(OFF_HI).load_ram(OFF_LO).read(src_tid).out();
  emit_inc16(a, OFF_HI, OFF_LO, p + "_off");
  a.load_ram(REC).push(1).sub().dup().store_ram(REC);
  a.jz(p + "_top");
  a.jmp(p + "_copy");
}

Bytes be16_list(std::span<const std::uint16_t> vals) {
  Bytes out;
  out.reserve(2 * vals.size());
  for (std::uint16_t v : vals) {
    out.push_back(static_cast<u8>(v >> 8));
    out.push_back(static_cast<u8>(v & 0xFF));
  }
  return out;
}

// Fixed-width 12-byte directory record: 6 letters, 3 letters, 3 digits.
Bytes directory_record(SplitMix64& rng) {
  Bytes r(12);
  for (int i = 0; i < 6; ++i) r[i] = static_cast<u8>('A' + rng.bounded(25));
  for (int i = 6; i < 9; ++i) r[i] = static_cast<u8>('A' + rng.bounded(25));
  for (int i = 9; i < 12; ++i) r[i] = static_cast<u8>('0' + rng.bounded(10));
  return r;
}

Bytes pseudo_prose(SplitMix64& rng, std::size_t len) {
  static const char* syll[] = {"ta", "re", "mo", "li", "sun", "ver",
                               "do", "ka", "pel", "in", "os", "ur"};
  Bytes out;
  out.reserve(len + 8);
  std::size_t word = 0;
  while (out.size() < len) {
    const std::size_t parts = 2 + rng.bounded(3);
    for (std::size_t i = 0; i < parts; ++i)
      for (const char* c = syll[rng.bounded(12)]; *c; ++c)
        out.push_back(static_cast<u8>(*c));
    out.push_back(++word % 11 == 0 ? '.' : ' ');
  }
  out.resize(len);
  return out;
}

Case make_feist() {
  constexpr u64 kSeed = 0x0F;
  constexpr std::size_t kStateEntries = 4096;   // "every entry in the state"
  constexpr std::size_t kRuralEntries = 1024;   // Rural's book
  constexpr std::size_t kMarkers = 4;           // fictitious listings
  constexpr std::size_t kSelected = 252;        // y's picks from context
  constexpr u8 kRecW = 12;

  SplitMix64 rng(kSeed);
  std::set<Bytes> seen;
  std::vector<Bytes> state;
  while (state.size() < kStateEntries) {
    Bytes r = directory_record(rng);
    if (r[0] == 'Z') continue;  // reserve the Z block for markers
    if (seen.insert(r).second) state.push_back(std::move(r));
  }
  std::sort(state.begin(), state.end());

  std::vector<Bytes> markers;
  while (markers.size() < kMarkers) {
    Bytes r = directory_record(rng);
    r[0] = 'Z';
    if (seen.insert(r).second) markers.push_back(std::move(r));
  }
  std::sort(markers.begin(), markers.end());

  // Rural's book: an alphabetized subset of the state plus the fictitious
  // markers. The markers live in noncopy(x) only, never in context.
  std::vector<std::size_t> idx(kStateEntries);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = idx.size(); i-- > 1;)
    std::swap(idx[i], idx[rng.bounded(i + 1)]);
  std::vector<std::size_t> rural(idx.begin(),
                                 idx.begin() + kRuralEntries);
  std::sort(rural.begin(), rural.end());

  std::vector<Bytes> rural_book;
  for (std::size_t i : rural) rural_book.push_back(state[i]);
  for (const Bytes& m : markers) rural_book.push_back(m);
  std::sort(rural_book.begin(), rural_book.end());

  // y: a fresh selection from the state plus the copied markers.
  for (std::size_t i = idx.size(); i-- > 1;)
    std::swap(idx[i], idx[rng.bounded(i + 1)]);
  std::vector<std::size_t> picks(idx.begin(), idx.begin() + kSelected);
  std::sort(picks.begin(), picks.end());

  Bytes context_tape;
  for (const Bytes& r : state)
    context_tape.insert(context_tape.end(), r.begin(), r.end());
  Bytes rural_tape;
  for (const Bytes& r : rural_book)
    rural_tape.insert(rural_tape.end(), r.begin(), r.end());

  std::vector<std::uint16_t> offsets;
  Bytes y;
  for (std::size_t i : picks) {
    offsets.push_back(static_cast<std::uint16_t>(i * kRecW));
    y.insert(y.end(), state[i].begin(), state[i].end());
  }
  for (const Bytes& m : markers) {
    const auto it =
        std::lower_bound(rural_book.begin(), rural_book.end(), m);
    const auto pos = static_cast<std::size_t>(it - rural_book.begin());
    offsets.push_back(static_cast<std::uint16_t>(pos * kRecW));
    y.insert(y.end(), m.begin(), m.end());
  }

  // Tapes: 0 = noncopy(x) (Rural's entries), 1 = noncopy(y) (the selection
  // offsets), 2 = context (the state-wide list). Both programs replay the
  // selection; neither touches x (tape 3 in the plaintiff environment).
  const std::uint16_t boundary =
      static_cast<std::uint16_t>(2 * kSelected);
  auto build = [&] {
    Assembler a;
    emit_offset_copy_loop(a, 1, 2, kRecW, boundary, "ctx", "markers");
    a.label("markers");
    emit_offset_copy_loop(a, 1, 0, kRecW, std::nullopt, "ncx", "done");
    a.label("done").halt();
    return a.assemble();
  };

  Case c;
  c.name = "feist_synth";
  c.seed = kSeed;
  c.relation = Relation::exact();
  c.x = rural_tape;
  c.bg.noncopy_x = {rural_tape};
  c.bg.noncopy_y = {be16_list(offsets)};
  c.bg.context = {context_tape};
  c.y = std::move(y);
  c.plaintiff_program = build();
  c.defendant_program = build();
  c.expected = Expected{"negligible", 64};
  return c;
}

Case make_baker() {
  constexpr u64 kSeed = 0x0B;
  SplitMix64 rng(kSeed);
  const Bytes method_x = pseudo_prose(rng, 600);
  const Bytes method_y = pseudo_prose(rng, 500);
  const Bytes other_book = pseudo_prose(rng, 800);
  const Bytes own_prose_x = pseudo_prose(rng, 300);

  Bytes epilogue(24);
  rng.fill({epilogue.data(), epilogue.size()});

  // x: Selden's essay (method description plus his own prose). y: Baker's
  // book, whose method section is agreed non-copyrighted and whose closing
  // differs from anything in x.
  Bytes x = method_x;
  x.insert(x.end(), own_prose_x.begin(), own_prose_x.end());
  Bytes y = method_y;
  y.insert(y.end(), epilogue.begin(), epilogue.end());

  // Tapes: 0 = noncopy(x) method, 1 = noncopy(y) method, 2 = context book.
  // The reproducer streams the agreed method text and hard-codes the
  // closing; the producer is the same algorithm padded by one NOP, so the
  // fixture exercises the signed gap (plaintiff one byte worse).
  auto build = [&](bool pad) {
    Assembler a;
    if (pad) a.nop();
    emit_stream_tape(a, 1, "m", "tail");
    a.label("tail");
    for (u8 b : epilogue) a.push(b).out();
    a.halt();
    return a.assemble();
  };

  Case c;
  c.name = "baker_synth";
  c.seed = kSeed;
  c.relation = Relation::exact();
  c.x = std::move(x);
  c.bg.noncopy_x = {method_x};
  c.bg.noncopy_y = {method_y};
  c.bg.context = {other_book};
  c.y = std::move(y);
  c.plaintiff_program = build(true);
  c.defendant_program = build(false);
  c.expected = Expected{"negligible", 64};
  return c;
}

Case make_bee() {
  constexpr u64 kSeed = 0xBE;
  constexpr std::size_t kCatalog = 64;  // jewel kinds
  constexpr std::size_t kPlaced = 96;   // jewels across y's bees
  constexpr u8 kRecW = 8;

  SplitMix64 rng(kSeed);
  Bytes catalog;
  for (std::size_t i = 0; i < kCatalog; ++i) {
    // type, size, color, facets, 4 bytes of supplier code
    catalog.push_back(static_cast<u8>('a' + rng.bounded(26)));
    catalog.push_back(static_cast<u8>(1 + rng.bounded(9)));
    catalog.push_back(static_cast<u8>(rng.bounded(16)));
    catalog.push_back(static_cast<u8>(3 + rng.bounded(5)));
    for (int j = 0; j < 4; ++j)
      catalog.push_back(static_cast<u8>('A' + rng.bounded(26)));
  }

  Bytes shape_x(16), shape_y(24);
  rng.fill({shape_x.data(), shape_x.size()});
  rng.fill({shape_y.data(), shape_y.size()});

  std::vector<std::uint16_t> offsets;
  Bytes y;
  for (std::size_t i = 0; i < kPlaced; ++i) {
    const std::size_t pick = rng.bounded(kCatalog);
    offsets.push_back(static_cast<std::uint16_t>(pick * kRecW));
    y.insert(y.end(), catalog.begin() + static_cast<std::ptrdiff_t>(pick * kRecW),
             catalog.begin() + static_cast<std::ptrdiff_t>((pick + 1) * kRecW));
  }

  // Tapes: 0 = noncopy(x) shape, 1 = noncopy(y) shape, 2 = noncopy(y)
  // arrangement, 3 = context catalog. The arrangement is a function of the
  // agreed sizes, so both sides replay it from the background.
  auto build = [&] {
    Assembler a;
    emit_offset_copy_loop(a, 2, 3, kRecW, std::nullopt, "arr", "done");
    a.label("done").halt();
    return a.assemble();
  };

  Case c;
  c.name = "bee_synth";
  c.seed = kSeed;
  c.relation = Relation::exact();
  c.x = catalog;  // stand-in for the original arrangement records
  c.bg.noncopy_x = {shape_x};
  c.bg.noncopy_y = {shape_y, be16_list(offsets)};
  c.bg.context = {catalog};
  c.y = std::move(y);
  c.plaintiff_program = build();
  c.defendant_program = build();
  c.expected = Expected{"negligible", 64};
  return c;
}

Case make_altai() {
  constexpr u64 kSeed = 0xA1;
  SplitMix64 rng(kSeed);
  const Bytes ifspec = pseudo_prose(rng, 2048);   // OS call descriptions
  const Bytes compat = pseudo_prose(rng, 512);    // compatibility-dictated parts

  // y interleaves ranges of the interface spec with ranges of the
  // compatibility material; the recipe (offset, offset, len triples) is
  // agreed background.
  Bytes ranges;
  Bytes y;
  auto add_range = [&](const Bytes& src, std::size_t maxlen) {
    const std::size_t len = 64 + rng.bounded(maxlen - 64);
    const std::size_t off = rng.bounded(src.size() - len);
    ranges.push_back(static_cast<u8>(off >> 8));
    ranges.push_back(static_cast<u8>(off & 0xFF));
    ranges.push_back(static_cast<u8>(len));
    y.insert(y.end(), src.begin() + static_cast<std::ptrdiff_t>(off),
             src.begin() + static_cast<std::ptrdiff_t>(off + len));
  };
  Bytes ranges_ctx, ranges_ncx;
  for (int i = 0; i < 8; ++i) add_range(ifspec, 192);
  ranges_ctx = std::move(ranges);
  ranges.clear();
  for (int i = 0; i < 4; ++i) add_range(compat, 128);
  ranges_ncx = std::move(ranges);

  Bytes recipe = ranges_ctx;
  recipe.insert(recipe.end(), ranges_ncx.begin(), ranges_ncx.end());
  const auto boundary = static_cast<std::uint16_t>(ranges_ctx.size());

  // Tapes: 0 = noncopy(x) compat parts, 1 = noncopy(y) recipe, 2 = context
  // interface spec.
  auto build = [&] {
    Assembler a;
    emit_range_copy_loop(a, 1, 2, boundary, "spec", "ncx");
    a.label("ncx");
    emit_range_copy_loop(a, 1, 0, std::nullopt, "compat", "done");
    a.label("done").halt();
    return a.assemble();
  };

  Bytes x = compat;
  const Bytes glue = pseudo_prose(rng, 256);  // x's own expression
  x.insert(x.end(), glue.begin(), glue.end());

  Case c;
  c.name = "altai_synth";
  c.seed = kSeed;
  c.relation = Relation::exact();
  c.x = std::move(x);
  c.bg.noncopy_x = {compat};
  c.bg.noncopy_y = {recipe};
  c.bg.context = {ifspec};
  c.y = std::move(y);
  c.plaintiff_program = build();
  c.defendant_program = build();
  c.expected = Expected{"negligible", 64};
  return c;
}

Case make_literal_copy() {
  constexpr u64 kSeed = 0x11;
  SplitMix64 rng(kSeed);
  Bytes work(1024);
  rng.fill({work.data(), work.size()});

  // Empty background: the plaintiff gets x itself at tape 0 and streams
  // it; the defendant can only hard-code y.
  Case c;
  c.name = "literal_copy";
  c.seed = kSeed;
  c.relation = Relation::exact();
  c.x = work;
  c.y = work;
  c.plaintiff_program = copy_program(0);
  c.defendant_program = literal_program({work.data(), work.size()});
  c.expected = Expected{"near-total", 7373};  // 0.9 * 8192, rounded up
  return c;
}

Case make_hash_shortcut() {
  constexpr u64 kSeed = 0x55;
  SplitMix64 rng(kSeed);
  // 32-bit work value; 20 bits of entropy keep the preimage walk at desk
  // scale while the digest still has 2^24 preimages in the full space.
  const std::uint32_t v =
      static_cast<std::uint32_t>(rng.next() & 0xFFFFF) | 0x800;
  Bytes x = {static_cast<u8>(v >> 24), static_cast<u8>(v >> 16),
             static_cast<u8>(v >> 8), static_cast<u8>(v)};

  Case c;
  c.name = "hash_shortcut";
  c.seed = kSeed;
  c.relation = Relation::exact();
  c.y = x;
  c.bg.context = {Bytes{mix_hash8({x.data(), x.size()})}};
  c.x = std::move(x);
  return c;
}

Case make_dictionary_index() {
  constexpr u64 kSeed = 0xD1;
  constexpr std::size_t kEntries = 1024;
  constexpr std::size_t kWordLen = 6;
  constexpr std::size_t kWords = 32;

  SplitMix64 rng(kSeed);
  std::set<Bytes> seen;
  Bytes wordlist;
  while (seen.size() < kEntries) {
    Bytes w(kWordLen);
    for (auto& b : w) b = static_cast<u8>('a' + rng.bounded(26));
    if (seen.insert(w).second)
      wordlist.insert(wordlist.end(), w.begin(), w.end());
  }

  Bytes y;
  for (std::size_t i = 0; i < kWords; ++i) {
    const std::size_t pick = rng.bounded(kEntries);
    y.insert(y.end(),
             wordlist.begin() + static_cast<std::ptrdiff_t>(pick * kWordLen),
             wordlist.begin() +
                 static_cast<std::ptrdiff_t>((pick + 1) * kWordLen));
  }

  Case c;
  c.name = "dictionary_index";
  c.seed = kSeed;
  c.relation = Relation::exact();
  c.x = wordlist;  // the reference text itself
  c.y = std::move(y);
  c.bg.context = {wordlist};
  return c;
}

}  // namespace

u8 mix_hash8(std::span<const u8> data) {
  u8 acc = 0;
  for (u8 b : data)
    acc = static_cast<u8>(static_cast<u8>(acc << 1 | acc >> 7) + b);
  return acc;
}

Program hash_preimage_search_program(u8 digest_tape_id, std::uint16_t skip) {
  // RAM: 4..7 = candidate bytes c0..c3 (big-endian counter), 8/9 = skip
  // count, page 1 = MSB table for the rotate.
  constexpr std::uint16_t C0 = 4, C3 = 7, SK_HI = 8, SK_LO = 9, FILL = 10;

  Assembler a;
  a.push(static_cast<u8>(skip >> 8)).store_ram(SK_HI);
  a.push(static_cast<u8>(skip & 0xFF)).store_ram(SK_LO);
  a.push(128).store_ram(FILL);
  a.label("init");
  a.push(1).push(1).load_ram(FILL).store();
  a.load_ram(FILL).inc().dup().store_ram(FILL);
  a.jz("scan");
  a.jmp("init");

  a.label("scan");
  a.push(0);  // acc
  for (std::uint16_t cell = C0; cell <= C3; ++cell) {
    // acc = (acc rol 1) + candidate byte
    a.dup().push(1).swap().load();        // [acc, msb]
    a.swap().dup().add().add();           // [2*acc + msb]
    a.load_ram(cell).add();
  }
  a.push(0).push(0).read(digest_tape_id);  // digest byte
  a.sub();
  a.jz("hit");
  a.jmp("next");

  a.label("hit");
  a.load_ram(SK_LO).jz("hit_chk");
  a.jmp("consume");
  a.label("hit_chk");
  a.load_ram(SK_HI).jz("emit");
  a.jmp("consume");
  a.label("consume");  // skip this preimage: 16-bit decrement
  a.load_ram(SK_LO).jz("borrow");
  a.load_ram(SK_LO).push(1).sub().store_ram(SK_LO).jmp("next");
  a.label("borrow");
  a.push(255).store_ram(SK_LO);
  a.load_ram(SK_HI).push(1).sub().store_ram(SK_HI).jmp("next");

  a.label("next");  // candidate++ with carry up the bytes
  a.load_ram(7).inc().dup().store_ram(7).jz("c2");
  a.jmp("scan");
  a.label("c2").load_ram(6).inc().dup().store_ram(6).jz("c1");
  a.jmp("scan");
  a.label("c1").load_ram(5).inc().dup().store_ram(5).jz("c0");
  a.jmp("scan");
  a.label("c0").load_ram(4).inc().store_ram(4).jmp("scan");

  a.label("emit");
  a.load_ram(4).out().load_ram(5).out().load_ram(6).out().load_ram(7).out();
  a.halt();
  return a.assemble();
}

std::vector<std::string> builtin_case_names() {
  return {"feist_synth",   "baker_synth", "bee_synth",       "altai_synth",
          "literal_copy",  "hash_shortcut", "dictionary_index"};
}

Case builtin_case(const std::string& name) {
  if (name == "feist_synth") return make_feist();
  if (name == "baker_synth") return make_baker();
  if (name == "bee_synth") return make_bee();
  if (name == "altai_synth") return make_altai();
  if (name == "literal_copy") return make_literal_copy();
  if (name == "hash_shortcut") return make_hash_shortcut();
  if (name == "dictionary_index") return make_dictionary_index();
  throw std::invalid_argument("unknown builtin case: " + name);
}

std::vector<Case> builtin_cases() {
  std::vector<Case> out;
  for (const std::string& n : builtin_case_names())
    out.push_back(builtin_case(n));
  return out;
}

}  // namespace dersim
