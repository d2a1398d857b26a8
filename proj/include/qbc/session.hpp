#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbc/bb84.hpp"
#include "qbc/key_buffer.hpp"
#include "qbc/protocol.hpp"

namespace qbc {

/// What a transcript keeps beyond the commitments and the key ledger.
struct TranscriptDetail {
  bool frames = true;    ///< one summary per frame
  bool records = false;  ///< every measurement record inside frame summaries
  bool events = true;    ///< protocol event log
};

struct SessionConfig {
  std::uint64_t n_quarter = 2;
  BigInt codebook_size = 6;
  ChannelModel channel{};
  std::optional<double> q_tol;  ///< key-rate tolerance; defaults to channel.flip_prob
  double f_ec = math::kDefaultEcEfficiency;
  std::uint64_t seed = 1;
  AcceptancePolicy policy{2, 0.25};
  bool commit_bit = false;
  std::optional<bool> unveil_bit;  ///< defaults to commit_bit
  CheatStrategy strategy = CheatStrategy::honest;
  std::uint64_t frame_budget = 1000;
  std::uint64_t max_commits = 1;
  PayloadMode payload_mode = PayloadMode::raw;
  std::array<ChannelTiming, 2> timing{};
  /// Commit only in frames whose announced same-basis counts already meet n_tol.
  bool require_verifiable_frame = true;
  std::optional<std::uint64_t> tamper_p1_bit;  ///< flip this ciphertext bit on the way to P1
  TranscriptDetail detail{};

  double effective_q_tol() const { return q_tol.value_or(channel.flip_prob); }
  bool effective_unveil_bit() const { return unveil_bit.value_or(commit_bit); }

  /// Throws DomainError naming the offending field.
  void validate() const;
};

enum class FrameRole { committed, normal, unverifiable, key_short };
const char* to_string(FrameRole r);

struct FrameSummary {
  std::uint64_t id;
  std::uint64_t time;
  FrameClass classification;
  bool eligible;
  FrameRole role;
  std::uint64_t sifted;
  std::uint64_t key_credited;
  std::vector<MeasurementRecord> records;  ///< empty unless detail.records
};

struct RelayLeg {
  CommitMessage sent;
  BitString delivered;  ///< ciphertext as received; differs from sent when tampered
  bool tampered = false;
  std::uint64_t receipt_time = 0;
  std::uint64_t decrypt_time = 0;
  std::optional<BitString> decrypted;
};

struct CommitmentRecord {
  std::uint64_t frame_id = 0;
  bool committed_bit = false;
  bool claimed_bit = false;
  CheatStrategy strategy = CheatStrategy::honest;
  BitString payload;
  std::array<RelayLeg, 2> relays;
  UnveilSchedule schedule;
  std::optional<Disclosure> disclosure;
  std::optional<bool> relays_consistent;
  VerificationCounts counts;
  std::optional<Verdict> verdict;
  std::uint64_t verify_time = 0;
};

struct AbortedCommit {
  std::uint64_t frame_id;
  std::string reason;
};

struct TranscriptEvent {
  std::uint64_t time;
  std::string agent;
  std::string kind;
  std::uint64_t frame_id;
};

struct SessionStats {
  std::uint64_t frames = 0;
  std::uint64_t commitment_candidates = 0;
  std::uint64_t commit_eligible = 0;
  std::uint64_t committed = 0;
  std::uint64_t normal_distilled = 0;
  std::uint64_t sifted = 0;
  std::uint64_t key_credited = 0;
  std::uint64_t pulses_sent = 0;
};

enum class SessionOutcome { accept0, accept1, reject, no_commit_frame };
const char* to_string(SessionOutcome o);

struct SessionTranscript {
  SessionConfig config;
  SessionStats stats;
  std::vector<FrameSummary> frames;
  std::vector<CommitmentRecord> commitments;
  std::vector<AbortedCommit> aborted;
  std::array<KeyBuffer, 2> buffers;  ///< Alice->P0 and Alice->P1 pads
  std::vector<TranscriptEvent> events;
  SessionOutcome outcome = SessionOutcome::no_commit_frame;
};

/// Runs preparation, commitment and unveiling for one seeded session.
SessionTranscript run_session(const SessionConfig& config);

struct CheatEstimate {
  std::uint64_t trials = 0;
  std::uint64_t committed_trials = 0;  ///< trials that reached a commitment
  std::uint64_t accepted0 = 0;
  std::uint64_t accepted1 = 0;
  double p0_hat = 0.0;
  double p1_hat = 0.0;
};

/// For each trial, runs the same seeded session twice: once opening 0 and
/// once opening 1, with `strategy` applied whenever the opened bit differs
/// from config.commit_bit. Frequencies are over trials that committed.
CheatEstimate simulate_cheating_alice(CheatStrategy strategy, const SessionConfig& config, std::uint64_t trials);

}  // namespace qbc
