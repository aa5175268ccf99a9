#pragma once

// Report rendering shared by the CLI and the golden tests: a JSON payload
// (schema-wrapped, byte-deterministic) and a flat human rendering of the
// same fields. Costs are emitted as exact integers; infinite costs as the
// string "inf".

#include <nlohmann/json.hpp>
#include <string>

#include "dersim/casebook.hpp"
#include "dersim/estimate.hpp"
#include "dersim/game.hpp"
#include "dersim/match.hpp"
#include "dersim/vm.hpp"

namespace dersim::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json exec_result(const ExecutionResult& r);
json cost_report(const CostReport& c);
json dersim_report(const DerSimReport& r, const VerdictSummary& v);
json bound_report(const BoundReport& b);  // witness program in hex
json dersim_bounds(const DerSimBounds& b);
json match_report(const MatchReport& m);
json lint_findings(const std::vector<LintFinding>& findings);

// Full report file: {"schema_version":1, "invocation":..., "payload":...}
// serialized with a trailing newline; identical inputs give identical bytes.
std::string wrap(const std::string& subcommand, const json& invocation,
                 const json& payload);

// Flat "key: value" rendering of the same payload for terminals.
std::string human(const json& payload);

}  // namespace dersim::report
