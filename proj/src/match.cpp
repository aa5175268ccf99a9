#include "dersim/match.hpp"

#include <cstring>
#include <sstream>

namespace dersim {

namespace {

void put_u32(Bytes& b, std::uint32_t v) {
  b.push_back(static_cast<u8>(v >> 24));
  b.push_back(static_cast<u8>(v >> 16));
  b.push_back(static_cast<u8>(v >> 8));
  b.push_back(static_cast<u8>(v));
}

void put_u64(Bytes& b, u64 v) {
  for (int i = 56; i >= 0; i -= 8) b.push_back(static_cast<u8>(v >> i));
}

u64 get_u64(std::span<const u8> p) {
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v = v << 8 | p[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

const char* to_string(Role r) {
  return r == Role::Plaintiff ? "plaintiff" : "defendant";
}

Digest background_digest(const Background& bg) {
  Bytes buf;
  auto put_section = [&](const std::vector<Bytes>& tapes) {
    put_u32(buf, static_cast<std::uint32_t>(tapes.size()));
    for (const Bytes& t : tapes) {
      put_u32(buf, static_cast<std::uint32_t>(t.size()));
      buf.insert(buf.end(), t.begin(), t.end());
    }
  };
  put_section(bg.noncopy_x);
  put_section(bg.noncopy_y);
  put_section(bg.context);
  return sha256({buf.data(), buf.size()});
}

Commitment commit(const Submission& sub) {
  Bytes preimage;
  preimage.reserve(33 + sub.program.bytecode.size());
  preimage.insert(preimage.end(), sub.salt.begin(), sub.salt.end());
  preimage.push_back(static_cast<u8>(sub.role));
  preimage.insert(preimage.end(), sub.program.bytecode.begin(),
                  sub.program.bytecode.end());
  Commitment c;
  c.role = sub.role;
  c.digest = sha256({preimage.data(), preimage.size()});
  c.bg_digest = sub.bg_digest;
  c.claimed_cost_bits = sub.claimed_cost_bits;
  c.claimed_fuel_bound = sub.claimed_fuel_bound;
  return c;
}

bool verify_opening(const Commitment& c, const Salt& salt, Role role,
                    const Program& program) {
  Submission s;
  s.role = role;
  s.program = program;
  s.salt = salt;
  return commit(s).digest == c.digest && role == c.role;
}

Bytes serialize_transcript(const Transcript& t) {
  Bytes out;
  for (const TranscriptMessage& m : t) {
    out.push_back(m.type);
    put_u32(out, static_cast<std::uint32_t>(m.payload.size()));
    out.insert(out.end(), m.payload.begin(), m.payload.end());
  }
  return out;
}

Transcript parse_transcript(std::span<const u8> data) {
  Transcript t;
  std::size_t i = 0;
  while (i < data.size()) {
    if (i + 5 > data.size())
      throw MatchError(MatchError::Kind::BadTranscript,
                       "truncated transcript record header");
    TranscriptMessage m;
    m.type = data[i];
    const std::size_t n = static_cast<std::size_t>(data[i + 1]) << 24 |
                          static_cast<std::size_t>(data[i + 2]) << 16 |
                          static_cast<std::size_t>(data[i + 3]) << 8 |
                          data[i + 4];
    i += 5;
    if (i + n > data.size())
      throw MatchError(MatchError::Kind::BadTranscript,
                       "truncated transcript payload");
    m.payload.assign(data.begin() + static_cast<std::ptrdiff_t>(i),
                     data.begin() + static_cast<std::ptrdiff_t>(i + n));
    i += n;
    t.push_back(std::move(m));
  }
  return t;
}

namespace {

TranscriptMessage commit_message(const Commitment& c) {
  TranscriptMessage m;
  m.type = TranscriptMessage::kCommit;
  m.payload.push_back(static_cast<u8>(c.role));
  m.payload.insert(m.payload.end(), c.digest.begin(), c.digest.end());
  put_u64(m.payload, c.claimed_cost_bits);
  put_u64(m.payload, c.claimed_fuel_bound);
  m.payload.insert(m.payload.end(), c.bg_digest.begin(), c.bg_digest.end());
  return m;
}

TranscriptMessage open_message(const Submission& s) {
  TranscriptMessage m;
  m.type = TranscriptMessage::kOpen;
  m.payload.push_back(static_cast<u8>(s.role));
  m.payload.insert(m.payload.end(), s.salt.begin(), s.salt.end());
  put_u32(m.payload, static_cast<std::uint32_t>(s.program.bytecode.size()));
  m.payload.insert(m.payload.end(), s.program.bytecode.begin(),
                   s.program.bytecode.end());
  return m;
}

TranscriptMessage result_message(const MatchReport& r) {
  TranscriptMessage m;
  m.type = TranscriptMessage::kResult;
  m.payload.push_back(r.c_p.has_value() ? 1 : 0);
  put_u64(m.payload, r.c_p.value_or(0));
  m.payload.push_back(r.c_r.has_value() ? 1 : 0);
  put_u64(m.payload, r.c_r.value_or(0));
  m.payload.push_back(r.dersim_bits.has_value() ? 1 : 0);
  put_u64(m.payload, static_cast<u64>(r.dersim_bits.value_or(0)));
  m.payload.push_back(r.verified_plaintiff ? 1 : 0);
  m.payload.push_back(r.verified_defendant ? 1 : 0);
  m.payload.push_back(static_cast<u8>(r.outcome));
  return m;
}

}  // namespace

std::string render_transcript(const Transcript& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const TranscriptMessage& m = t[i];
    os << i << ": ";
    switch (m.type) {
      case TranscriptMessage::kCommit: {
        const char* role = m.payload[0] == 0x01 ? "plaintiff" : "defendant";
        os << "COMMIT role=" << role << " digest="
           << to_hex({m.payload.data() + 1, 32})
           << " claimed_cost_bits=" << get_u64({m.payload.data() + 33, 8})
           << " claimed_fuel_bound=" << get_u64({m.payload.data() + 41, 8})
           << " bg_digest=" << to_hex({m.payload.data() + 49, 32});
        break;
      }
      case TranscriptMessage::kOpen: {
        const char* role = m.payload[0] == 0x01 ? "plaintiff" : "defendant";
        os << "OPEN role=" << role << " salt="
           << to_hex({m.payload.data() + 1, 32}) << " program_bytes="
           << (m.payload.size() - 37);
        break;
      }
      case TranscriptMessage::kResult: {
        const u8* p = m.payload.data();
        os << "RESULT c_P=";
        if (p[0]) os << get_u64({p + 1, 8}); else os << "inf";
        os << " c_R=";
        if (p[9]) os << get_u64({p + 10, 8}); else os << "inf";
        os << " dersim_bits=";
        if (p[18]) os << static_cast<std::int64_t>(get_u64({p + 19, 8}));
        else os << "undefined";
        os << " verified_plaintiff=" << (p[27] ? "true" : "false")
           << " verified_defendant=" << (p[28] ? "true" : "false")
           << " outcome="
           << (p[29] == 0 ? "completed" : "forbidden_tape_access");
        break;
      }
      default:
        os << "UNKNOWN type=" << int(m.type);
    }
    os << '\n';
  }
  return os.str();
}

Match::Match(const Case& c) : case_(c) {
  case_bg_digest_ = background_digest(c.bg);
}

void Match::record_commitment(const Commitment& c) {
  if (c.bg_digest != case_bg_digest_)
    throw MatchError(MatchError::Kind::BgDigestMismatch,
                     std::string(to_string(c.role)) +
                         " commitment binds a different background");
  auto& slot = c.role == Role::Plaintiff ? commit_p_ : commit_d_;
  slot = c;
  transcript_.push_back(commit_message(c));
}

void Match::open(const Submission& sub) {
  const auto& slot = sub.role == Role::Plaintiff ? commit_p_ : commit_d_;
  if (!slot)
    throw MatchError(MatchError::Kind::OpeningWithoutCommitment,
                     std::string(to_string(sub.role)) +
                         " opened without a recorded commitment");
  if (!verify_opening(*slot, sub.salt, sub.role, sub.program))
    throw MatchError(MatchError::Kind::CommitmentMismatch,
                     std::string(to_string(sub.role)) +
                         " opening does not match its commitment");
  if (sub.bg_digest != case_bg_digest_)
    throw MatchError(MatchError::Kind::BgDigestMismatch,
                     std::string(to_string(sub.role)) +
                         " opening binds a different background");
  auto& dst = sub.role == Role::Plaintiff ? open_p_ : open_d_;
  dst = sub;
  transcript_.push_back(open_message(sub));
}

MatchReport Match::run(u64 fuel_cap) {
  if (!open_p_ || !open_d_)
    throw MatchError(MatchError::Kind::OpeningWithoutCommitment,
                     "match run before both sides opened");

  const TapeEnvironment env_p =
      build_env(case_.bg, true, {case_.x.data(), case_.x.size()});
  const TapeEnvironment env_d = build_env(case_.bg, false);

  const CostReport cp =
      levin_cost(open_p_->program, {case_.y.data(), case_.y.size()},
                 case_.relation, env_p, fuel_cap);
  const CostReport cr =
      levin_cost(open_d_->program, {case_.y.data(), case_.y.size()},
                 case_.relation, env_d, fuel_cap);

  MatchReport r;
  r.c_p = cp.cost_bits;
  r.c_r = cr.cost_bits;
  if (cp.finite() && cr.finite())
    r.dersim_bits = static_cast<std::int64_t>(*cr.cost_bits) -
                    static_cast<std::int64_t>(*cp.cost_bits);
  r.verified_plaintiff =
      cp.finite() && *cp.cost_bits == open_p_->claimed_cost_bits;
  r.verified_defendant =
      cr.finite() && *cr.cost_bits == open_d_->claimed_cost_bits;
  if (cr.trap == TrapKind::UnmountedTape)
    r.outcome = MatchOutcome::ForbiddenTapeAccess;

  r.transcript = transcript_;
  r.transcript.push_back(result_message(r));
  return r;
}

MatchReport run_match(const Case& c, const Submission& plaintiff,
                      const Submission& defendant, u64 fuel_cap) {
  Match m(c);
  m.record_commitment(commit(plaintiff));
  m.record_commitment(commit(defendant));
  m.open(plaintiff);
  m.open(defendant);
  return m.run(fuel_cap);
}

}  // namespace dersim
