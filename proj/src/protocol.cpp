#include "qbc/protocol.hpp"

#include <algorithm>
#include <stdexcept>

#include "qbc/errors.hpp"
#include "qbc/math_core.hpp"

namespace qbc {

const char* to_string(Relay r) { return r == Relay::p0 ? "P0" : "P1"; }

const char* to_string(PayloadMode m) { return m == PayloadMode::raw ? "raw" : "compressed"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::accept0: return "Accept0";
    case Verdict::accept1: return "Accept1";
    case Verdict::reject: return "Reject";
  }
  return "?";
}

const char* to_string(CheatStrategy s) {
  return s == CheatStrategy::honest ? "honest" : "claim_other_basis";
}

BitString encode_payload(const BitString& codeword, bool bit, const Codebook& cb, PayloadMode mode) {
  if (mode == PayloadMode::raw) return codeword;
  BitString out = encode_index(cb.index_of(codeword), cb.index_width());
  out.push_back(bit);
  return out;
}

std::uint64_t payload_length(const Codebook& cb, PayloadMode mode) {
  return mode == PayloadMode::raw ? 2 * cb.n_half() : cb.index_width() + 1;
}

std::optional<DecodedPayload> decode_payload(const BitString& payload, const Codebook& cb, PayloadMode mode) {
  if (payload.size() != payload_length(cb, mode)) return std::nullopt;
  if (mode == PayloadMode::raw) {
    if (!cb.contains(payload)) return std::nullopt;
    return DecodedPayload{payload, std::nullopt};
  }
  const BigInt index = decode_index(payload.slice(0, cb.index_width()));
  if (index >= cb.size()) return std::nullopt;
  return DecodedPayload{cb.codeword(index), payload[payload.size() - 1]};
}

std::optional<CommitPair> try_commit(const Frame& frame, bool bit, const Codebook& cb, PayloadMode mode,
                                     KeyBuffer& to_p0, KeyBuffer& to_p1) {
  if (frame.classification != FrameClass::commitment_candidate) {
    throw ProtocolError("try_commit requires a CommitmentCandidate frame");
  }
  const BitString substring = outcome_substring(frame, basis_for_bit(bit));
  if (substring.size() != 2 * cb.n_half() || !cb.contains(substring)) return std::nullopt;

  const BitString payload = encode_payload(substring, bit, cb, mode);
  const auto need = payload.size();
  if (to_p0.available() < need) throw InsufficientKey(need, to_p0.available());
  if (to_p1.available() < need) throw InsufficientKey(need, to_p1.available());

  auto c0 = otp_encrypt(payload, to_p0, frame.id);
  auto c1 = otp_encrypt(payload, to_p1, frame.id);
  return CommitPair{payload,
                    {frame.id, Relay::p0, std::move(c0.ciphertext), c0.key_offset},
                    {frame.id, Relay::p1, std::move(c1.ciphertext), c1.key_offset}};
}

bool relay_consistency_check(const std::optional<BitString>& from_p0, const std::optional<BitString>& from_p1) {
  if (!from_p0) throw ProtocolError("relay P0 holds no payload for this frame");
  if (!from_p1) throw ProtocolError("relay P1 holds no payload for this frame");
  return *from_p0 == *from_p1;
}

BitString Disclosure::substring(Basis basis) const {
  BitString out;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i] == basis) out.push_back(outcomes[i]);
  }
  return out;
}

Disclosure make_disclosure(const Frame& frame, bool committed_bit, bool claimed_bit, CheatStrategy strategy) {
  Disclosure d;
  d.claimed_bit = claimed_bit;
  d.bases.reserve(frame.records.size());
  const bool swap = strategy == CheatStrategy::claim_other_basis && committed_bit != claimed_bit;
  for (const auto& r : frame.records) {
    d.bases.push_back(swap ? other(r.alice_basis) : r.alice_basis);
    d.outcomes.push_back(r.outcome);
  }
  return d;
}

VerificationCounts count_verification(std::span<const MeasurementRecord> records, const Disclosure& disclosure) {
  if (disclosure.bases.size() != records.size() || disclosure.outcomes.size() != records.size()) {
    throw ProtocolError("disclosure does not cover the frame");
  }
  VerificationCounts c;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& truth = records[i].ground_truth;
    if (disclosure.bases[i] != truth.basis) continue;
    const bool error = disclosure.outcomes[i] != truth.bit;
    if (truth.basis == Basis::rectilinear) {
      ++c.n_rect;
      c.n_err_rect += error;
    } else {
      ++c.n_diag;
      c.n_err_diag += error;
    }
  }
  return c;
}

Verdict bob_verify(const VerificationCounts& counts, const Disclosure& disclosure, const BitString& payload,
                   const Codebook& cb, PayloadMode mode, const AcceptancePolicy& policy) {
  if (counts.n_rect < policy.n_tol || counts.n_diag < policy.n_tol) return Verdict::reject;

  const bool bit = disclosure.claimed_bit;
  const std::uint64_t errors = bit ? counts.n_err_diag : counts.n_err_rect;
  if (errors > math::tolerated_errors(policy.e_tol, policy.n_tol)) return Verdict::reject;

  const auto decoded = decode_payload(payload, cb, mode);
  if (!decoded) return Verdict::reject;
  if (decoded->bit && *decoded->bit != bit) return Verdict::reject;
  if (decoded->codeword != disclosure.substring(basis_for_bit(bit))) return Verdict::reject;
  return bit ? Verdict::accept1 : Verdict::accept0;
}

bool UnveilSchedule::consistent() const {
  for (std::size_t c = 0; c < 2; ++c) {
    if (receipt[c] != send_time + timing[c].latency) return false;
    if (epoch < receipt[c] + timing[c].wait) return false;
  }
  return true;
}

UnveilSchedule plan_unveil(std::uint64_t send_time, const std::array<ChannelTiming, 2>& timing) {
  UnveilSchedule s;
  s.send_time = send_time;
  s.timing = timing;
  for (std::size_t c = 0; c < 2; ++c) {
    s.receipt[c] = send_time + timing[c].latency;
    s.epoch = std::max(s.epoch, s.receipt[c] + timing[c].wait);
  }
  return s;
}

}  // namespace qbc
