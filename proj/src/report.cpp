#include "dersim/report.hpp"

#include <sstream>

#include "dersim/sha256.hpp"

namespace dersim::report {

namespace {

json opt_cost(const std::optional<u64>& v) {
  if (v) return *v;
  return "inf";
}

json opt_i64(const std::optional<std::int64_t>& v) {
  if (v) return *v;
  return "undefined";
}

}  // namespace

json exec_result(const ExecutionResult& r) {
  json j;
  j["status"] = to_string(r.status);
  if (r.trap) j["trap"] = to_string(*r.trap);
  j["steps_executed"] = r.steps_executed;
  if (r.status == RunStatus::Halted) {
    j["output_bytes"] = r.output.size();
    j["output_hex"] = to_hex({r.output.data(), r.output.size()});
  }
  return j;
}

json cost_report(const CostReport& c) {
  json j;
  j["cost_bits"] = opt_cost(c.cost_bits);
  j["program_bits"] = c.program_bits;
  j["log_time_bits"] = c.log_time_bits;
  j["halt_steps"] = c.halt_steps;
  j["comparable"] = c.comparable;
  j["status"] = to_string(c.status);
  if (c.trap) j["trap"] = to_string(*c.trap);
  if (c.output) j["output_bytes"] = c.output->size();
  return j;
}

json dersim_report(const DerSimReport& r, const VerdictSummary& v) {
  json j;
  j["plaintiff"] = cost_report(r.plaintiff_cost);
  j["defendant"] = cost_report(r.defendant_cost);
  j["dersim_bits"] = opt_i64(r.dersim_bits);
  j["k_upper_bits"] = r.k_upper_bits;
  j["k_upper_source"] = r.k_upper_source;
  json n;
  n["num"] = r.normalized_num;
  n["den"] = r.normalized_den;
  j["normalized"] = n;
  j["band"] = to_string(v.band);
  if (v.band == VerdictBand::Undefined) j["failed_side"] = v.failed_side;
  return j;
}

json bound_report(const BoundReport& b) {
  json j;
  j["kind"] = b.kind == BoundReport::Kind::ExactWithinBudget
                  ? "exact_within_budget"
                  : "upper_bound";
  j["value_bits"] = b.value_bits;
  j["budget_bits"] = b.budget_bits;
  j["exhaustive"] = b.exhaustive;
  j["witness_bytes"] = b.witness.bytecode.size();
  j["witness_hex"] =
      to_hex({b.witness.bytecode.data(), b.witness.bytecode.size()});
  return j;
}

json dersim_bounds(const DerSimBounds& b) {
  json j;
  j["rigor"] = b.exact ? "exact" : "heuristic";
  j["k_bg"] = b.k_bg ? bound_report(*b.k_bg) : json("no_witness");
  j["k_bg_x"] = b.k_bg_x ? bound_report(*b.k_bg_x) : json("no_witness");
  if (b.exact)
    j["dersim_exact"] = opt_i64(b.dersim_exact);
  else
    j["dersim_heuristic_gap"] = opt_i64(b.dersim_heuristic);
  return j;
}

json match_report(const MatchReport& m) {
  json j;
  j["c_p"] = opt_cost(m.c_p);
  j["c_r"] = opt_cost(m.c_r);
  j["dersim_bits"] = opt_i64(m.dersim_bits);
  j["verified_plaintiff"] = m.verified_plaintiff;
  j["verified_defendant"] = m.verified_defendant;
  j["outcome"] = m.outcome == MatchOutcome::Completed
                     ? "completed"
                     : "forbidden_tape_access";
  j["transcript_messages"] = m.transcript.size();
  return j;
}

json lint_findings(const std::vector<LintFinding>& findings) {
  json arr = json::array();
  for (const auto& f : findings) {
    json j;
    j["kind"] = to_string(f.kind);
    j["detail"] = f.detail;
    arr.push_back(j);
  }
  json out;
  out["findings"] = arr;
  out["clean"] = findings.empty();
  return out;
}

std::string wrap(const std::string& subcommand, const json& invocation,
                 const json& payload) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = subcommand;
  j["invocation"] = invocation;
  j["payload"] = payload;
  return j.dump(2) + "\n";
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j)
      flatten(v, prefix + "[" + std::to_string(i++) + "]", os);
    if (j.empty()) os << prefix << ": []\n";
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump())
       << "\n";
  }
}

}  // namespace

std::string human(const json& payload) {
  std::ostringstream os;
  flatten(payload, "", os);
  return os.str();
}

}  // namespace dersim::report
