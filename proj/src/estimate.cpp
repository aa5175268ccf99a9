#include "dersim/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "dersim/bytes.hpp"

namespace dersim {

namespace {

// Comparator for (cost, witness) candidates: smallest cost, then shortlex
// (shorter first, then lexicographic). Gives the deterministic tie-break
// regardless of visit order.
struct Candidate {
  u64 cost_bits = 0;
  Bytes program;

  bool better_than(const Candidate& o) const {
    if (cost_bits != o.cost_bits) return cost_bits < o.cost_bits;
    if (program.size() != o.program.size())
      return program.size() < o.program.size();
    return program < o.program;
  }
};

u64 fuel_for(u64 budget_bits, u64 length) {
  const u64 spent = 8 * length;
  if (spent > budget_bits) return 0;
  const u64 shift = budget_bits - spent;
  if (shift >= 62) return u64{1} << 62;
  return u64{1} << shift;
}

// Scans all length-L programs whose first byte is `first`, in lexicographic
// order, skipping byte strings that cannot behave differently: after a run
// that fetched program bytes only up to index m, every program agreeing on
// bytes [0..m] produces the identical result, so the scan jumps to the next
// prefix. Halting outputs are checked against every target.
//
// Returns false if the visit cap was exhausted before the subspace was
// covered.
bool scan_partition(u8 first, std::size_t length, u64 fuel,
                    const TapeEnvironment& env, const Relation& relation,
                    std::span<const Bytes> targets,
                    std::vector<std::optional<Candidate>>& best, u64 cap,
                    u64& visited, Vm& vm) {
  Bytes prog(length, 0);
  prog[0] = first;
  const u64 length_bits = 8 * static_cast<u64>(length);

  for (;;) {
    if (cap != 0 && visited >= cap) return false;
    ++visited;

    const ExecutionResult& r =
        vm.run_borrowed({prog.data(), prog.size()}, env, fuel);
    if (r.status == RunStatus::Halted) {
      const std::span<const u8> out = vm.last_output();
      const u64 cost = length_bits + ceil_log2(r.steps_executed);
      for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        if (best[ti] && best[ti]->cost_bits < cost) continue;
        if (!compare(relation, out, {targets[ti].data(), targets[ti].size()}))
          continue;
        Candidate c{cost, prog};
        if (!best[ti] || c.better_than(*best[ti])) best[ti] = std::move(c);
      }
    }

    // Advance to the next behaviour class: bump the highest fetched byte,
    // zero the tail, carry leftwards. Byte 0 is owned by the partition, so
    // a carry out of byte 1 (or a bump of byte 0 itself) ends the scan.
    std::size_t m = r.max_byte_fetched < 0
                        ? 0
                        : static_cast<std::size_t>(r.max_byte_fetched);
    std::fill(prog.begin() + static_cast<std::ptrdiff_t>(m) + 1, prog.end(),
              0);
    for (;;) {
      if (prog[m] != 0xFF) {
        ++prog[m];
        break;
      }
      prog[m] = 0;
      if (m == 0) return true;  // carried out of the partition
      --m;
    }
    if (prog[0] != first) return true;
  }
}

struct Task {
  std::size_t length;
  u8 first;
};

}  // namespace

std::vector<std::optional<BoundReport>> enumerate_min_cost_multi(
    std::span<const Bytes> targets, const Relation& relation,
    const TapeEnvironment& env, const EnumerateOptions& opts,
    EnumerationStats* stats) {
  const std::size_t max_len =
      static_cast<std::size_t>(opts.budget_bits / 8);  // budget >= 8
  std::vector<Task> tasks;
  for (std::size_t len = 1; len <= max_len; ++len)
    for (unsigned b = 0; b < 256; ++b)
      tasks.push_back({len, static_cast<u8>(b)});

  // Per-partition visit cap keeps the visited set identical for any thread
  // count.
  const u64 per_task_cap = opts.visit_cap == 0 ? 0 : opts.visit_cap >> 8;

  struct TaskResult {
    std::vector<std::optional<Candidate>> best;
    bool complete = true;
    u64 visited = 0;
  };
  std::vector<TaskResult> results(tasks.size());

  auto run_task = [&](std::size_t i, Vm& vm) {
    const Task& t = tasks[i];
    TaskResult& tr = results[i];
    tr.best.assign(targets.size(), std::nullopt);
    const u64 fuel = fuel_for(opts.budget_bits, t.length);
    if (fuel == 0) return;  // cannot fit the budget at this length
    tr.complete = scan_partition(t.first, t.length, fuel, env, relation,
                                 targets, tr.best, per_task_cap, tr.visited,
                                 vm);
  };

  if (opts.threads == 0) {
    Vm vm;
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i, vm);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      Vm vm;
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        run_task(i, vm);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < opts.threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Deterministic merge in fixed task order.
  std::vector<std::optional<Candidate>> best(targets.size());
  bool exhaustive = true;
  u64 visited = 0;
  for (const TaskResult& tr : results) {
    exhaustive = exhaustive && tr.complete;
    visited += tr.visited;
    for (std::size_t ti = 0; ti < tr.best.size(); ++ti) {
      if (!tr.best[ti]) continue;
      if (!best[ti] || tr.best[ti]->better_than(*best[ti]))
        best[ti] = tr.best[ti];
    }
  }
  if (stats) {
    stats->programs_visited = visited;
    stats->capped = !exhaustive;
  }

  std::vector<std::optional<BoundReport>> out(targets.size());
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    if (!best[ti]) continue;
    BoundReport br;
    br.kind = exhaustive ? BoundReport::Kind::ExactWithinBudget
                         : BoundReport::Kind::UpperBound;
    br.value_bits = best[ti]->cost_bits;
    br.witness = Program{best[ti]->program};
    br.budget_bits = opts.budget_bits;
    br.exhaustive = exhaustive;
    out[ti] = std::move(br);
  }
  return out;
}

std::optional<BoundReport> enumerate_min_cost(
    std::span<const u8> target_y, const Relation& relation,
    const TapeEnvironment& env, const EnumerateOptions& opts,
    EnumerationStats* stats) {
  const std::vector<Bytes> targets{Bytes(target_y.begin(), target_y.end())};
  auto v = enumerate_min_cost_multi({targets.data(), targets.size()}, relation,
                                    env, opts, stats);
  return std::move(v[0]);
}

BoundReport best_upper_bound(std::span<const u8> target_y,
                             const Relation& relation,
                             const TapeEnvironment& env,
                             const EnumerateOptions& enum_opts) {
  // Literal route (always succeeds for any target within the output cap).
  const Program lit = literal_program(target_y);
  const CostReport lit_cost =
      levin_cost(lit, target_y, relation, env, kDefaultFuelCap * 4);

  BoundReport best;
  best.kind = BoundReport::Kind::UpperBound;
  best.value_bits = lit_cost.finite() ? *lit_cost.cost_bits : ~u64{0};
  best.witness = lit;
  best.budget_bits = enum_opts.budget_bits;

  // Compressor route.
  CompressResult comp = compress_to_program(target_y, env);
  if (comp.cost.finite() && *comp.cost.cost_bits < best.value_bits) {
    best.value_bits = *comp.cost.cost_bits;
    best.witness = std::move(comp.program);
  }

  // Enumeration route; also upgrades the bound to exact when exhaustive and
  // the minimum is certain to be inside the budget.
  auto enumd = enumerate_min_cost(target_y, relation, env, enum_opts);
  if (enumd) {
    if (enumd->value_bits <= best.value_bits) {
      best.value_bits = enumd->value_bits;
      best.witness = enumd->witness;
    }
    if (enumd->exhaustive && enumd->value_bits <= best.value_bits)
      best.kind = BoundReport::Kind::ExactWithinBudget;
    best.exhaustive = enumd->exhaustive;
  }
  return best;
}

DerSimBounds theoretical_dersim(std::span<const u8> x, std::span<const u8> y,
                                const Background& bg, const Relation& relation,
                                const EnumerateOptions& opts) {
  DerSimBounds out;
  const TapeEnvironment env_bg = build_env(bg, false);
  const TapeEnvironment env_bg_x = build_env(bg, true, x);

  auto k_bg = enumerate_min_cost(y, relation, env_bg, opts);
  auto k_bg_x = enumerate_min_cost(y, relation, env_bg_x, opts);

  if (k_bg && k_bg_x && k_bg->exhaustive && k_bg_x->exhaustive) {
    out.exact = true;
    out.dersim_exact = static_cast<std::int64_t>(k_bg->value_bits) -
                       static_cast<std::int64_t>(k_bg_x->value_bits);
    out.k_bg = std::move(k_bg);
    out.k_bg_x = std::move(k_bg_x);
    return out;
  }

  // Heuristic mode: best witnessed upper bounds on both sides. The gap of
  // two upper bounds certifies nothing (not even its sign); the rigor label
  // says so.
  out.exact = false;
  out.k_bg = best_upper_bound(y, relation, env_bg, opts);
  out.k_bg_x = best_upper_bound(y, relation, env_bg_x, opts);
  out.dersim_heuristic = static_cast<std::int64_t>(out.k_bg->value_bits) -
                         static_cast<std::int64_t>(out.k_bg_x->value_bits);
  return out;
}

}  // namespace dersim
