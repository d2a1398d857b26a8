#include "qbc/session.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "qbc/errors.hpp"
#include "qbc/event_queue.hpp"
#include "qbc/rng.hpp"

namespace qbc {

void SessionConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& what) {
    throw DomainError(field + ": " + what);
  };
  if (n_quarter == 0) fail("n_quarter", "must be >= 1");
  if (codebook_size < 0) fail("codebook_size", "must be non-negative");
  if (codebook_size > codebook_capacity(n_quarter)) fail("codebook_size", "exceeds C(2N, N)");
  try {
    channel.validate();
  } catch (const DomainError& e) {
    fail("channel", e.what());
  }
  const double q = effective_q_tol();
  if (!(q >= 0.0 && q < 0.5)) fail("q_tol", "must lie in [0, 0.5)");
  if (!(f_ec >= 1.0)) fail("f_ec", "must be >= 1");
  if (policy.n_tol == 0) fail("n_tol", "must be >= 1");
  if (!(policy.e_tol >= 0.0 && policy.e_tol < 0.5)) fail("e_tol", "must lie in [0, 0.5)");
  if (frame_budget == 0) fail("frame_budget", "must be >= 1");
  if (max_commits == 0) fail("max_commits", "must be >= 1");
  if (tamper_p1_bit) {
    const Codebook cb(n_quarter, codebook_size);
    if (*tamper_p1_bit >= payload_length(cb, payload_mode)) fail("tamper_p1_bit", "beyond payload length");
  }
}

const char* to_string(FrameRole r) {
  switch (r) {
    case FrameRole::committed: return "committed";
    case FrameRole::normal: return "normal";
    case FrameRole::unverifiable: return "unverifiable";
    case FrameRole::key_short: return "key_short";
  }
  return "?";
}

const char* to_string(SessionOutcome o) {
  switch (o) {
    case SessionOutcome::accept0: return "Accept0";
    case SessionOutcome::accept1: return "Accept1";
    case SessionOutcome::reject: return "Reject";
    case SessionOutcome::no_commit_frame: return "NoCommitFrame";
  }
  return "?";
}

namespace {

struct FrameReady {
  std::uint64_t frame_id;
};
struct Deliver {
  std::size_t commitment;
  Relay relay;
};
struct Release {
  std::size_t commitment;
  Relay relay;
};
struct Disclose {
  std::size_t commitment;
};
struct Verify {
  std::size_t commitment;
};

using Event = std::variant<FrameReady, Deliver, Release, Disclose, Verify>;

class SessionRunner {
 public:
  explicit SessionRunner(const SessionConfig& config)
      : config_(config),
        codebook_(config.n_quarter, config.codebook_size),
        physical_(config.channel, derive_seed(config.seed, 0), derive_seed(config.seed, 1)),
        distiller_(math::final_key_rate(config.effective_q_tol(), config.f_ec)) {
    out_.config = config;
  }

  SessionTranscript run() {
    queue_.push(0, FrameReady{0});
    while (!queue_.empty()) {
      auto entry = queue_.pop();
      std::visit([&](const auto& ev) { handle(entry.time, ev); }, entry.event);
    }
    out_.stats.pulses_sent = physical_.pulses_sent();
    out_.stats.committed = out_.commitments.size();
    out_.stats.sifted = distiller_.sifted();
    out_.stats.key_credited = distiller_.credited();
    out_.outcome = summarize();
    return std::move(out_);
  }

 private:
  void log(std::uint64_t time, const char* agent, const char* kind, std::uint64_t frame_id) {
    if (config_.detail.events) out_.events.push_back({time, agent, kind, frame_id});
  }

  // Alice: a new frame of 4N detections is complete.
  void handle(std::uint64_t now, const FrameReady& ev) {
    Frame frame = physical_.next_frame(ev.frame_id, config_.n_quarter);
    ++out_.stats.frames;
    if (ev.frame_id + 1 < config_.frame_budget) queue_.push(now + 1, FrameReady{ev.frame_id + 1});

    FrameSummary summary{frame.id, now, frame.classification, false, FrameRole::normal, 0, 0, {}};
    const Basis basis = basis_for_bit(config_.commit_bit);

    if (frame.classification == FrameClass::commitment_candidate) {
      ++out_.stats.commitment_candidates;
      summary.eligible = codebook_.contains(outcome_substring(frame, basis));
      if (summary.eligible) ++out_.stats.commit_eligible;
    }

    if (summary.eligible && out_.commitments.size() < config_.max_commits) {
      if (config_.require_verifiable_frame && !verifiable(frame)) {
        summary.role = FrameRole::unverifiable;
      } else {
        summary.role = commit(now, frame) ? FrameRole::committed : FrameRole::key_short;
      }
    }

    if (summary.role != FrameRole::committed) {
      const auto before = distiller_.sifted();
      const BitString key = distiller_.absorb(frame);
      ++out_.stats.normal_distilled;
      summary.sifted = distiller_.sifted() - before;
      summary.key_credited = key.size();
      for (std::size_t i = 0; i < key.size(); ++i) {
        out_.buffers[allocated_++ % 2].append(BitString(1, key[i]));
      }
    }
    if (config_.detail.frames) {
      if (config_.detail.records) summary.records = frame.records;
      out_.frames.push_back(std::move(summary));
    }
  }

  // Bob announces his preparation bases for the frame, as in BB84 sifting;
  // Alice checks that both same-basis counts will reach n_tol.
  bool verifiable(const Frame& frame) const {
    std::uint64_t rect = 0, diag = 0;
    for (const auto& r : frame.records) {
      if (!r.sifted()) continue;
      (r.alice_basis == Basis::rectilinear ? rect : diag)++;
    }
    return rect >= config_.policy.n_tol && diag >= config_.policy.n_tol;
  }

  bool commit(std::uint64_t now, const Frame& frame) {
    std::optional<CommitPair> pair;
    try {
      pair = try_commit(frame, config_.commit_bit, codebook_, config_.payload_mode, out_.buffers[0],
                        out_.buffers[1]);
    } catch (const InsufficientKey& e) {
      out_.aborted.push_back({frame.id, e.what()});
      log(now, "Alice", "commit_aborted", frame.id);
      return false;
    }
    if (!pair) throw std::logic_error("eligible frame did not yield a commitment");

    CommitmentRecord rec;
    rec.frame_id = frame.id;
    rec.committed_bit = config_.commit_bit;
    rec.claimed_bit = config_.effective_unveil_bit();
    rec.strategy = config_.strategy;
    rec.payload = pair->payload;
    rec.schedule = plan_unveil(now, config_.timing);
    rec.relays[0].sent = std::move(pair->to_p0);
    rec.relays[1].sent = std::move(pair->to_p1);
    for (auto& leg : rec.relays) leg.delivered = leg.sent.ciphertext;
    if (config_.tamper_p1_bit) {
      rec.relays[1].delivered.flip(*config_.tamper_p1_bit);
      rec.relays[1].tampered = true;
    }

    const std::size_t idx = out_.commitments.size();
    out_.commitments.push_back(std::move(rec));
    committed_frames_.push_back(frame);
    log(now, "Alice", "commit_sent", frame.id);

    const auto& sched = out_.commitments[idx].schedule;
    for (Relay r : kRelays) queue_.push(sched.receipt[index_of(r)], Deliver{idx, r});
    for (Relay r : kRelays) queue_.push(sched.epoch, Release{idx, r});
    queue_.push(sched.epoch, Disclose{idx});
    queue_.push(sched.epoch, Verify{idx});
    return true;
  }

  // Relay: ciphertext arrives and is held.
  void handle(std::uint64_t now, const Deliver& ev) {
    auto& leg = out_.commitments[ev.commitment].relays[index_of(ev.relay)];
    leg.receipt_time = now;
    log(now, to_string(ev.relay), "commit_received", out_.commitments[ev.commitment].frame_id);
  }

  // Relay: waiting time over; decrypt with the channel pad and submit to Bob.
  void handle(std::uint64_t now, const Release& ev) {
    auto& rec = out_.commitments[ev.commitment];
    auto& leg = rec.relays[index_of(ev.relay)];
    leg.decrypt_time = now;
    leg.decrypted = otp_decrypt(leg.delivered, out_.buffers[index_of(ev.relay)], leg.sent.key_offset);
    log(now, to_string(ev.relay), "payload_submitted", rec.frame_id);
  }

  // Alice: disclose bases and outcomes and name the opened bit.
  void handle(std::uint64_t now, const Disclose& ev) {
    auto& rec = out_.commitments[ev.commitment];
    rec.disclosure =
        make_disclosure(committed_frames_[ev.commitment], rec.committed_bit, rec.claimed_bit, rec.strategy);
    log(now, "Alice", "bases_disclosed", rec.frame_id);
  }

  // Bob: relay consistency, then counts and thresholds.
  void handle(std::uint64_t now, const Verify& ev) {
    auto& rec = out_.commitments[ev.commitment];
    rec.verify_time = now;
    rec.relays_consistent = relay_consistency_check(rec.relays[0].decrypted, rec.relays[1].decrypted);
    const auto& records = committed_frames_[ev.commitment].records;
    rec.counts = count_verification(records, *rec.disclosure);
    rec.verdict = *rec.relays_consistent
                      ? bob_verify(rec.counts, *rec.disclosure, *rec.relays[0].decrypted, codebook_,
                                   config_.payload_mode, config_.policy)
                      : Verdict::reject;
    log(now, "Bob", to_string(*rec.verdict), rec.frame_id);
  }

  SessionOutcome summarize() const {
    if (out_.commitments.empty()) return SessionOutcome::no_commit_frame;
    for (const auto& c : out_.commitments) {
      if (c.verdict != Verdict::accept0 && c.verdict != Verdict::accept1) return SessionOutcome::reject;
    }
    return out_.commitments.front().verdict == Verdict::accept1 ? SessionOutcome::accept1
                                                                : SessionOutcome::accept0;
  }

  const SessionConfig& config_;
  Codebook codebook_;
  PhysicalLayer physical_;
  KeyDistiller distiller_;
  EventQueue<Event> queue_;
  SessionTranscript out_;
  std::vector<Frame> committed_frames_;
  std::uint64_t allocated_ = 0;
};

}  // namespace

SessionTranscript run_session(const SessionConfig& config) {
  config.validate();
  return SessionRunner(config).run();
}

CheatEstimate simulate_cheating_alice(CheatStrategy strategy, const SessionConfig& config, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("simulate_cheating_alice: trials must be >= 1");
  CheatEstimate est;
  est.trials = trials;
  SessionConfig cfg = config;
  cfg.strategy = strategy;
  cfg.max_commits = 1;
  cfg.detail = {false, false, false};
  for (std::uint64_t t = 0; t < trials; ++t) {
    cfg.seed = derive_seed(config.seed, 1000 + t);
    std::array<bool, 2> accepted{};
    bool committed = false;
    for (bool open : {false, true}) {
      cfg.unveil_bit = open;
      const auto tr = run_session(cfg);
      if (tr.commitments.empty()) break;
      committed = true;
      const auto want = open ? Verdict::accept1 : Verdict::accept0;
      accepted[open] = tr.commitments.front().verdict == want;
    }
    if (!committed) continue;
    ++est.committed_trials;
    est.accepted0 += accepted[0];
    est.accepted1 += accepted[1];
  }
  if (est.committed_trials > 0) {
    est.p0_hat = static_cast<double>(est.accepted0) / static_cast<double>(est.committed_trials);
    est.p1_hat = static_cast<double>(est.accepted1) / static_cast<double>(est.committed_trials);
  }
  return est;
}

}  // namespace qbc
