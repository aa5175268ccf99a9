#include "dersim/casebook.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "dersim/bytes.hpp"

namespace dersim {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const char* to_string(LintKind k) {
  switch (k) {
    case LintKind::ContextContainsTarget: return "context_contains_target";
    case LintKind::XorPairReconstruction: return "xor_pair_reconstruction";
    case LintKind::OversizeTape: return "oversize_tape";
    case LintKind::RelationNotReflexive: return "relation_not_reflexive";
  }
  return "?";
}

std::vector<LintFinding> validate_case(const Case& c) {
  std::vector<LintFinding> out;

  auto check_size = [&](const Bytes& t, const std::string& where,
                        std::size_t i) {
    if (t.size() > kMaxTapeLen)
      out.push_back({LintKind::OversizeTape,
                     where + "[" + std::to_string(i) + "] is " +
                         std::to_string(t.size()) + " bytes (limit " +
                         std::to_string(kMaxTapeLen) + ")"});
  };
  for (std::size_t i = 0; i < c.bg.noncopy_x.size(); ++i)
    check_size(c.bg.noncopy_x[i], "noncopy_x", i);
  for (std::size_t i = 0; i < c.bg.noncopy_y.size(); ++i)
    check_size(c.bg.noncopy_y[i], "noncopy_y", i);
  for (std::size_t i = 0; i < c.bg.context.size(); ++i)
    check_size(c.bg.context[i], "context", i);

  // (a) y embedded verbatim in a context tape. An empty y is a substring
  // of everything, so the scan only applies to non-empty targets.
  if (!c.y.empty()) {
    for (std::size_t i = 0; i < c.bg.context.size(); ++i) {
      const Bytes& t = c.bg.context[i];
      if (t.size() >= c.y.size() &&
          std::search(t.begin(), t.end(), c.y.begin(), c.y.end()) != t.end())
        out.push_back({LintKind::ContextContainsTarget,
                       "y appears inside context[" + std::to_string(i) + "]"});
    }
  }

  // (b) 2-of-2 secret sharing: a pair of context tapes XORing to y.
  for (std::size_t i = 0; i < c.bg.context.size(); ++i) {
    const Bytes& a = c.bg.context[i];
    if (a.size() != c.y.size() || c.y.empty()) continue;
    for (std::size_t j = i + 1; j < c.bg.context.size(); ++j) {
      const Bytes& b = c.bg.context[j];
      if (b.size() != c.y.size()) continue;
      if (bytes::xor_equals({a.data(), a.size()}, {b.data(), b.size()},
                            {c.y.data(), c.y.size()}))
        out.push_back({LintKind::XorPairReconstruction,
                       "context[" + std::to_string(i) + "] ^ context[" +
                           std::to_string(j) + "] == y"});
    }
  }

  // (d) relation reflexivity over the case's own works.
  const Bytes samples_arr[] = {c.x, c.y};
  auto diag = check_reflexive(c.relation, {samples_arr, 2});
  if (!diag.all_pass)
    out.push_back({LintKind::RelationNotReflexive,
                   "relation fails compare(r, s, s) on case material"});

  return out;
}

namespace {

Bytes read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f)
    throw LoadError(LoadError::Kind::MissingFile,
                    "missing file: " + p.string());
  Bytes data((std::istreambuf_iterator<char>(f)),
             std::istreambuf_iterator<char>());
  return data;
}

void write_file(const fs::path& p, std::span<const u8> data) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f.write(reinterpret_cast<const char*>(data.data()),
          static_cast<std::streamsize>(data.size()));
  if (!f) throw std::runtime_error("cannot write " + p.string());
}

Relation relation_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exact") return Relation::exact();
  if (kind == "hamming") return Relation::hamming(j.at("max").get<u64>());
  throw LoadError(LoadError::Kind::BadManifest,
                  "unknown relation kind: " + kind);
}

json relation_to_json(const Relation& r) {
  json j;
  if (r.kind == Relation::Kind::ExactEquality) {
    j["kind"] = "exact";
  } else {
    j["kind"] = "hamming";
    j["max"] = r.max_distance;
  }
  return j;
}

}  // namespace

Case load_case(const fs::path& dir, bool strict_lint) {
  const fs::path mpath = dir / "manifest.json";
  std::ifstream mf(mpath);
  if (!mf)
    throw LoadError(LoadError::Kind::MissingFile,
                    "missing manifest: " + mpath.string());
  json m;
  try {
    mf >> m;
  } catch (const json::exception& e) {
    throw LoadError(LoadError::Kind::BadManifest,
                    "bad manifest json: " + std::string(e.what()));
  }

  Case c;
  try {
    c.name = m.at("name").get<std::string>();
    c.seed = m.value("seed", u64{0});
    c.relation = relation_from_json(m.at("relation"));
    const json& files = m.at("files");
    c.x = read_file(dir / files.at("x").get<std::string>());
    c.y = read_file(dir / files.at("y").get<std::string>());
    for (const auto& f : files.value("noncopy_x", json::array()))
      c.bg.noncopy_x.push_back(read_file(dir / f.get<std::string>()));
    for (const auto& f : files.value("noncopy_y", json::array()))
      c.bg.noncopy_y.push_back(read_file(dir / f.get<std::string>()));
    for (const auto& f : files.value("context", json::array()))
      c.bg.context.push_back(read_file(dir / f.get<std::string>()));
    if (files.contains("plaintiff_program")) {
      Bytes b = read_file(dir / files["plaintiff_program"].get<std::string>());
      auto p = decode_program({b.data(), b.size()});
      if (!p)
        throw LoadError(LoadError::Kind::BadManifest,
                        "plaintiff program is empty");
      c.plaintiff_program = std::move(*p);
    }
    if (files.contains("defendant_program")) {
      Bytes b = read_file(dir / files["defendant_program"].get<std::string>());
      auto p = decode_program({b.data(), b.size()});
      if (!p)
        throw LoadError(LoadError::Kind::BadManifest,
                        "defendant program is empty");
      c.defendant_program = std::move(*p);
    }
    if (m.contains("expected")) {
      Expected e;
      e.dersim_band = m["expected"].at("dersim_band").get<std::string>();
      e.threshold_bits = m["expected"].at("threshold_bits").get<std::int64_t>();
      c.expected = e;
    }
  } catch (const json::exception& e) {
    throw LoadError(LoadError::Kind::BadManifest,
                    "manifest field error: " + std::string(e.what()));
  }

  auto findings = validate_case(c);
  for (const auto& f : findings)
    if (f.kind == LintKind::OversizeTape)
      throw LoadError(LoadError::Kind::OversizeTape, f.detail);
  if (strict_lint && !findings.empty()) {
    std::string what = "lint findings:";
    for (const auto& f : findings)
      what += std::string(" ") + to_string(f.kind) + " (" + f.detail + ")";
    throw LoadError(LoadError::Kind::LintFailure, what);
  }
  return c;
}

void emit_case(const Case& c, const fs::path& dir) {
  fs::create_directories(dir);
  json files;
  files["x"] = "x.bin";
  files["y"] = "y.bin";
  write_file(dir / "x.bin", {c.x.data(), c.x.size()});
  write_file(dir / "y.bin", {c.y.data(), c.y.size()});

  auto section = [&](const char* key, const char* sub,
                     const std::vector<Bytes>& tapes) {
    json names = json::array();
    for (std::size_t i = 0; i < tapes.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "%s/%03zu.bin", sub, i);
      names.push_back(name);
      write_file(dir / name, {tapes[i].data(), tapes[i].size()});
    }
    files[key] = names;
  };
  section("noncopy_x", "noncopy_x", c.bg.noncopy_x);
  section("noncopy_y", "noncopy_y", c.bg.noncopy_y);
  section("context", "context", c.bg.context);

  if (c.plaintiff_program) {
    files["plaintiff_program"] = "programs/plaintiff.dvm";
    write_file(dir / "programs/plaintiff.dvm",
               {c.plaintiff_program->bytecode.data(),
                c.plaintiff_program->bytecode.size()});
  }
  if (c.defendant_program) {
    files["defendant_program"] = "programs/defendant.dvm";
    write_file(dir / "programs/defendant.dvm",
               {c.defendant_program->bytecode.data(),
                c.defendant_program->bytecode.size()});
  }

  json m;
  m["name"] = c.name;
  m["seed"] = c.seed;
  m["relation"] = relation_to_json(c.relation);
  m["files"] = files;
  if (c.expected) {
    m["expected"] = {{"dersim_band", c.expected->dersim_band},
                     {"threshold_bits", c.expected->threshold_bits}};
  }
  std::ofstream mf(dir / "manifest.json", std::ios::trunc);
  mf << m.dump(2) << '\n';
  if (!mf) throw std::runtime_error("cannot write manifest");
}

bool expected_holds(const Expected& e, const DerSimReport& rep) {
  const VerdictSummary v = verdict(rep);
  if (e.dersim_band != to_string(v.band)) return false;
  if (!rep.dersim_bits) return false;
  if (e.dersim_band == "negligible")
    return std::abs(*rep.dersim_bits) <= e.threshold_bits;
  if (e.dersim_band == "near-total")
    return *rep.dersim_bits >= e.threshold_bits;
  return true;
}

}  // namespace dersim
