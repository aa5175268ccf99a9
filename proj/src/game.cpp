#include "dersim/game.hpp"

#include <algorithm>

#include "dersim/estimate.hpp"

namespace dersim {

TapeEnvironment build_env(const Background& bg, bool include_x,
                          std::span<const u8> x) {
  TapeEnvironment env;
  for (const Bytes& t : bg.noncopy_x) env.mount(t);
  for (const Bytes& t : bg.noncopy_y) env.mount(t);
  for (const Bytes& t : bg.context) env.mount(t);
  if (include_x) env.mount(Bytes(x.begin(), x.end()));
  return env;
}

DerSimReport empirical_dersim(std::span<const u8> x, std::span<const u8> y,
                              const Program& producer,
                              const Program& reproducer, const Background& bg,
                              const Relation& relation, u64 fuel_cap) {
  DerSimReport rep;
  const TapeEnvironment env_with_x = build_env(bg, true, x);
  const TapeEnvironment env_bg_only = build_env(bg, false);

  rep.plaintiff_cost = levin_cost(producer, y, relation, env_with_x, fuel_cap);
  rep.defendant_cost =
      levin_cost(reproducer, y, relation, env_bg_only, fuel_cap);

  if (rep.plaintiff_cost.finite() && rep.defendant_cost.finite()) {
    rep.dersim_bits = static_cast<std::int64_t>(*rep.defendant_cost.cost_bits) -
                      static_cast<std::int64_t>(*rep.plaintiff_cost.cost_bits);
  }

  // Normalization denominator: the best witnessed bound on K~(y | bg),
  // recorded with its source so the scale is auditable.
  const CostReport lit = levin_cost(literal_program(y), y, relation,
                                    env_bg_only, kDefaultFuelCap * 4);
  CompressResult comp = compress_to_program(y, env_bg_only);
  if (lit.finite() &&
      (!comp.cost.finite() || *lit.cost_bits <= *comp.cost.cost_bits)) {
    rep.k_upper_bits = *lit.cost_bits;
    rep.k_upper_source = "literal";
  } else if (comp.cost.finite()) {
    rep.k_upper_bits = *comp.cost.cost_bits;
    rep.k_upper_source = "compress";
  }

  if (rep.dersim_bits && rep.k_upper_bits > 0) {
    const std::int64_t clamped =
        std::clamp<std::int64_t>(*rep.dersim_bits, 0,
                                 static_cast<std::int64_t>(rep.k_upper_bits));
    rep.normalized_num = clamped;
    rep.normalized_den = rep.k_upper_bits;
  }
  return rep;
}

const char* to_string(VerdictBand b) {
  switch (b) {
    case VerdictBand::Undefined: return "undefined";
    case VerdictBand::Negligible: return "negligible";
    case VerdictBand::Partial: return "partial";
    case VerdictBand::NearTotal: return "near-total";
  }
  return "?";
}

VerdictSummary verdict(const DerSimReport& report, u64 epsilon_num,
                       u64 epsilon_den) {
  VerdictSummary v;
  v.dersim_bits = report.dersim_bits;
  v.normalized_num = report.normalized_num;
  v.normalized_den = report.normalized_den;

  if (!report.defined() || report.normalized_den == 0) {
    v.band = VerdictBand::Undefined;
    const bool p_bad = !report.plaintiff_cost.finite();
    const bool d_bad = !report.defendant_cost.finite();
    v.failed_side = p_bad && d_bad ? "both"
                    : p_bad        ? "plaintiff"
                    : d_bad        ? "defendant"
                                   : "no denominator";
    return v;
  }

  // normalized < eps  <=>  num * eps_den < eps_num * den   (exact integers)
  const auto num = static_cast<std::int64_t>(v.normalized_num);
  const auto den = static_cast<std::int64_t>(v.normalized_den);
  const auto en = static_cast<std::int64_t>(epsilon_num);
  const auto ed = static_cast<std::int64_t>(epsilon_den);
  if (num * ed < en * den)
    v.band = VerdictBand::Negligible;
  else if ((den - num) * ed < en * den)
    v.band = VerdictBand::NearTotal;
  else
    v.band = VerdictBand::Partial;
  return v;
}

}  // namespace dersim
