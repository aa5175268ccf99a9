#pragma once

// Commit-reveal submission protocol with a trusted referee. Each party
// binds to its program with a salted SHA-256 commitment and announces a
// claimed cost and fuel bound; after both commitments are on the
// transcript, openings are verified and the referee recomputes both costs
// in the correct environments (the defendant's environment never mounts
// x). Public outputs are the two costs and their difference, matching the
// information flow of a zero-knowledge submission without a proof system:
// the counterparty learns your cost either way, so only the program itself
// is worth hiding.

#include <optional>
#include <string>
#include <vector>

#include "dersim/casebook.hpp"
#include "dersim/sha256.hpp"
#include "dersim/vm.hpp"

namespace dersim {

enum class Role : u8 { Plaintiff = 0x01, Defendant = 0x02 };

const char* to_string(Role r);

using Salt = std::array<u8, 32>;

struct Submission {
  Role role = Role::Plaintiff;
  Program program;
  Salt salt{};
  Digest bg_digest{};       // must equal the case background's digest
  u64 claimed_cost_bits = 0;
  u64 claimed_fuel_bound = 0;
};

struct Commitment {
  Role role = Role::Plaintiff;
  Digest digest{};  // SHA-256(salt || role byte || program bytes)
  Digest bg_digest{};
  u64 claimed_cost_bits = 0;
  u64 claimed_fuel_bound = 0;
};

// Canonical digest of the agreed background (length-framed sections), the
// value both submissions must bind to.
Digest background_digest(const Background& bg);

Commitment commit(const Submission& sub);
bool verify_opening(const Commitment& c, const Salt& salt, Role role,
                    const Program& program);

struct TranscriptMessage {
  enum : u8 { kCommit = 0x01, kOpen = 0x02, kResult = 0x03 };
  u8 type = 0;
  Bytes payload;
};

using Transcript = std::vector<TranscriptMessage>;

Bytes serialize_transcript(const Transcript& t);
Transcript parse_transcript(std::span<const u8> data);  // throws MatchError
std::string render_transcript(const Transcript& t);     // human-readable

enum class MatchOutcome : u8 {
  Completed,
  // The defendant's program read the tape id where x would be mounted;
  // named protocol violation, defendant cost infinite.
  ForbiddenTapeAccess,
};

struct MatchReport {
  std::optional<u64> c_p;  // recomputed plaintiff cost; empty = infinite
  std::optional<u64> c_r;  // recomputed defendant cost
  std::optional<std::int64_t> dersim_bits;  // c_r - c_p when both finite
  bool verified_plaintiff = false;          // claim equals recomputed cost
  bool verified_defendant = false;
  MatchOutcome outcome = MatchOutcome::Completed;
  Transcript transcript;
};

class MatchError : public std::runtime_error {
 public:
  enum class Kind {
    BgDigestMismatch,
    CommitmentMismatch,
    OpeningWithoutCommitment,
    BadTranscript,
  };

  MatchError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Sequential protocol state machine: both commitments, then both openings,
// then the referee run. Openings without a prior matching commitment are
// rejected.
class Match {
 public:
  explicit Match(const Case& c);

  void record_commitment(const Commitment& c);
  void open(const Submission& sub);  // verifies against the commitment
  MatchReport run(u64 fuel_cap = kDefaultFuelCap);

 private:
  const Case& case_;
  Digest case_bg_digest_{};
  std::optional<Commitment> commit_p_, commit_d_;
  std::optional<Submission> open_p_, open_d_;
  Transcript transcript_;
};

// Convenience honest path: commit both, open both, run.
MatchReport run_match(const Case& c, const Submission& plaintiff,
                      const Submission& defendant,
                      u64 fuel_cap = kDefaultFuelCap);

}  // namespace dersim
