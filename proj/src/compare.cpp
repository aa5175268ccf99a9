#include "dersim/compare.hpp"

#include <stdexcept>

#include "dersim/bytes.hpp"

namespace dersim {

bool compare(const Relation& r, std::span<const u8> z, std::span<const u8> y) {
  switch (r.kind) {
    case Relation::Kind::ExactEquality:
      return bytes::equal(z, y);
    case Relation::Kind::HammingThreshold:
      if (z.size() != y.size()) return false;
      return bytes::hamming(z, y) <= r.max_distance;
  }
  return false;
}

ReflexivityDiagnostics check_reflexive(const Relation& r,
                                       std::span<const Bytes> samples) {
  ReflexivityDiagnostics d;
  d.per_sample.reserve(samples.size());
  for (const Bytes& s : samples) {
    const bool ok = compare(r, {s.data(), s.size()}, {s.data(), s.size()});
    d.per_sample.push_back(ok);
    d.all_pass = d.all_pass && ok;
  }
  return d;
}

Relation parse_relation(const std::string& text) {
  if (text == "exact") return Relation::exact();
  if (text.rfind("hamming:", 0) == 0)
    return Relation::hamming(std::stoull(text.substr(8)));
  throw std::invalid_argument("bad relation spec: " + text +
                              " (want \"exact\" or \"hamming:N\")");
}

std::string relation_to_string(const Relation& r) {
  switch (r.kind) {
    case Relation::Kind::ExactEquality:
      return "exact";
    case Relation::Kind::HammingThreshold:
      return "hamming:" + std::to_string(r.max_distance);
  }
  return "?";
}

}  // namespace dersim
