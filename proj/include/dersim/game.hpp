#pragma once

// The adversarial two-program game: the plaintiff's producer runs with the
// background plus the original work mounted, the defendant's reproducer
// with the background only, and the report is the signed gap between their
// costs. The defendant cannot read the original work because its tape is
// simply never mounted in the defendant's environment.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dersim/compare.hpp"
#include "dersim/cost.hpp"
#include "dersim/vm.hpp"

namespace dersim {

// The agreed non-copyrighted material. Mounted as free input tapes in a
// fixed order: noncopy_x items, then noncopy_y items, then context items.
// The original work x, when included, always takes the single highest tape
// id, so a program that touches only background tapes runs identically in
// both environments.
struct Background {
  std::vector<Bytes> noncopy_x;
  std::vector<Bytes> noncopy_y;
  std::vector<Bytes> context;

  std::size_t tape_count() const {
    return noncopy_x.size() + noncopy_y.size() + context.size();
  }
  // Tape id x receives when mounted (== number of background tapes).
  u8 x_tape_id() const { return static_cast<u8>(tape_count()); }
};

// Throws TapeError if any component exceeds the tape size limit.
TapeEnvironment build_env(const Background& bg, bool include_x,
                          std::span<const u8> x = {});

struct DerSimReport {
  CostReport plaintiff_cost;            // C~(P, y | bg, x)
  CostReport defendant_cost;            // C~(R, y | bg)
  std::optional<std::int64_t> dersim_bits;  // c_R - c_P; empty if either side infinite
  u64 k_upper_bits = 0;                 // best known upper bound on K~(y | bg)
  std::string k_upper_source;           // which route produced the bound
  // normalized = clamp(dersim_bits / k_upper_bits, 0, 1) as an exact
  // rational; denominator is 0 when undefined.
  std::int64_t normalized_num = 0;
  u64 normalized_den = 0;

  bool defined() const { return dersim_bits.has_value(); }
};

DerSimReport empirical_dersim(std::span<const u8> x, std::span<const u8> y,
                              const Program& producer,
                              const Program& reproducer, const Background& bg,
                              const Relation& relation,
                              u64 fuel_cap = kDefaultFuelCap);

enum class VerdictBand : u8 { Undefined, Negligible, Partial, NearTotal };

const char* to_string(VerdictBand b);

struct VerdictSummary {
  std::optional<std::int64_t> dersim_bits;
  std::int64_t normalized_num = 0;
  u64 normalized_den = 0;
  VerdictBand band = VerdictBand::Undefined;
  // When undefined, names the side(s) that failed to produce a comparable
  // output ("plaintiff", "defendant", or "both").
  std::string failed_side;
};

// Band thresholds are exact rational comparisons against epsilon
// (default 1/20): negligible below it, near-total above 1 - epsilon.
// Never a binary infringement ruling.
VerdictSummary verdict(const DerSimReport& report, u64 epsilon_num = 1,
                       u64 epsilon_den = 20);

}  // namespace dersim
