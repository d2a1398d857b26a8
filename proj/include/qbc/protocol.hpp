#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qbc/bb84.hpp"
#include "qbc/bits.hpp"
#include "qbc/codebook.hpp"
#include "qbc/key_buffer.hpp"

namespace qbc {

enum class Relay : std::uint8_t { p0 = 0, p1 = 1 };
inline constexpr std::array<Relay, 2> kRelays{Relay::p0, Relay::p1};
inline std::size_t index_of(Relay r) { return static_cast<std::size_t>(r); }
const char* to_string(Relay r);

/// raw: the 2N outcome bits. compressed: codeword index (ceil(log2 x) bits)
/// followed by one bit naming the basis.
enum class PayloadMode { raw, compressed };
const char* to_string(PayloadMode m);

enum class Verdict { accept0, accept1, reject };
const char* to_string(Verdict v);

enum class CheatStrategy { honest, claim_other_basis };
const char* to_string(CheatStrategy s);

struct CommitMessage {
  std::uint64_t frame_id;
  Relay relay;
  BitString ciphertext;
  std::uint64_t key_offset;
};

struct CommitPair {
  BitString payload;
  CommitMessage to_p0;
  CommitMessage to_p1;
};

BitString encode_payload(const BitString& codeword, bool bit, const Codebook& cb, PayloadMode mode);
std::uint64_t payload_length(const Codebook& cb, PayloadMode mode);

struct DecodedPayload {
  BitString codeword;
  std::optional<bool> bit;  ///< present in compressed mode only
};

/// Empty when the payload is malformed or does not name a codeword.
std::optional<DecodedPayload> decode_payload(const BitString& payload, const Codebook& cb, PayloadMode mode);

/// Commits `bit` in a CommitmentCandidate frame when the outcomes measured in
/// the bit's basis form a codeword: two independently encrypted copies, one
/// per relay channel. Returns empty when the substring is not a codeword.
/// Throws ProtocolError for Normal frames and InsufficientKey (consuming
/// nothing from either buffer) when a buffer is short.
std::optional<CommitPair> try_commit(const Frame& frame, bool bit, const Codebook& cb, PayloadMode mode,
                                     KeyBuffer& to_p0, KeyBuffer& to_p1);

/// Throws ProtocolError when either relay holds no payload.
bool relay_consistency_check(const std::optional<BitString>& from_p0, const std::optional<BitString>& from_p1);

/// Alice's unveiling: the bases and outcomes she claims for every record of
/// the frame, and the bit she opens.
struct Disclosure {
  std::vector<Basis> bases;
  BitString outcomes;
  bool claimed_bit = false;

  BitString substring(Basis basis) const;
};

/// What Alice discloses when she committed `committed_bit` and now opens
/// `claimed_bit`. claim_other_basis swaps her basis labels when the two bits
/// differ, so the relays' payload lines up with the claimed basis.
Disclosure make_disclosure(const Frame& frame, bool committed_bit, bool claimed_bit, CheatStrategy strategy);

struct VerificationCounts {
  std::uint64_t n_rect = 0;
  std::uint64_t n_diag = 0;
  std::uint64_t n_err_rect = 0;
  std::uint64_t n_err_diag = 0;
};

/// Same-basis detections per disclosed basis, and mismatches between the
/// disclosed outcome and the bit Bob sent.
VerificationCounts count_verification(std::span<const MeasurementRecord> records, const Disclosure& disclosure);

struct AcceptancePolicy {
  std::uint64_t n_tol = 1;
  double e_tol = 0.0;
};

/// Bob's decision once the relays agree. Accepts the claimed bit b only when
/// both same-basis counts reach n_tol, errors in basis(b) stay within
/// floor(e_tol * n_tol), and the payload names the disclosed basis(b)
/// substring.
Verdict bob_verify(const VerificationCounts& counts, const Disclosure& disclosure, const BitString& payload,
                   const Codebook& cb, PayloadMode mode, const AcceptancePolicy& policy);

struct ChannelTiming {
  std::uint64_t latency = 1;  ///< Alice -> relay delivery time
  std::uint64_t wait = 0;     ///< relay holding time after receipt
};

/// Unveiling timetable for one commitment: each relay releases at the common
/// epoch, which is no earlier than any relay's receipt plus its wait.
struct UnveilSchedule {
  std::uint64_t send_time = 0;
  std::array<ChannelTiming, 2> timing{};
  std::array<std::uint64_t, 2> receipt{};
  std::uint64_t epoch = 0;

  bool consistent() const;
};

UnveilSchedule plan_unveil(std::uint64_t send_time, const std::array<ChannelTiming, 2>& timing);

}  // namespace qbc
