#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qbc/bits.hpp"
#include "qbc/math_core.hpp"
#include "qbc/rng.hpp"

namespace qbc {

enum class Basis : std::uint8_t { rectilinear = 0, diagonal = 1 };

inline Basis other(Basis b) { return b == Basis::rectilinear ? Basis::diagonal : Basis::rectilinear; }
inline Basis basis_for_bit(bool bit) { return bit ? Basis::diagonal : Basis::rectilinear; }
inline char to_char(Basis b) { return b == Basis::rectilinear ? 'R' : 'D'; }

/// One prepared pulse. (basis, bit) selects H/V (rectilinear 0/1) or
/// D/A (diagonal 0/1).
struct Pulse {
  std::uint64_t index;
  Basis basis;
  bool bit;
};

/// Single-photon loss and flip channel.
struct ChannelModel {
  double detection_prob = 1.0;
  double flip_prob = 0.0;  ///< error rate of same-basis measurements

  void validate() const;
};

/// Bob's preparation for one record. Kept for the verifier and for test
/// oracles; Alice's decisions never read it.
struct GroundTruth {
  Basis basis;
  bool bit;
};

struct MeasurementRecord {
  std::uint64_t index;
  Basis alice_basis;
  bool outcome;
  GroundTruth ground_truth;

  bool sifted() const noexcept { return alice_basis == ground_truth.basis; }
};

enum class FrameClass { commitment_candidate, normal };

const char* to_string(FrameClass c);

struct Frame {
  std::uint64_t id = 0;
  std::vector<MeasurementRecord> records;
  FrameClass classification = FrameClass::normal;
};

std::vector<Pulse> prepare_pulses(std::uint64_t count, std::uint64_t seed);

/// Undetected pulses are dropped; presence in the output is the detection
/// notification.
std::vector<MeasurementRecord> transmit_and_measure(std::span<const Pulse> pulses,
                                                    const ChannelModel& channel,
                                                    std::uint64_t seed);

FrameClass classify(std::span<const MeasurementRecord> records, std::uint64_t n_quarter);

/// Consecutive groups of 4N records; a trailing partial group is dropped.
std::vector<Frame> assemble_frames(std::span<const MeasurementRecord> records, std::uint64_t n_quarter);

/// Outcomes Alice measured in the given basis, in record order.
BitString outcome_substring(const Frame& frame, Basis basis);

/// Streams detected records with the same draws prepare_pulses and
/// transmit_and_measure would make for the same two seeds.
class PhysicalLayer {
 public:
  PhysicalLayer(const ChannelModel& channel, std::uint64_t pulse_seed, std::uint64_t channel_seed);

  MeasurementRecord next_detection();
  Frame next_frame(std::uint64_t id, std::uint64_t n_quarter);
  std::uint64_t pulses_sent() const noexcept { return sent_; }

 private:
  ChannelModel channel_;
  Rng pulse_rng_;
  Rng channel_rng_;
  std::uint64_t sent_ = 0;
};

/// Incremental key distillation bookkeeping. After absorbing frames with a
/// total of s sifted records, exactly floor(s * max(0, r)) key bits have been
/// credited, taken in order from the sifted outcomes.
class KeyDistiller {
 public:
  explicit KeyDistiller(double rate);

  /// Sifts one frame and returns the newly credited key bits.
  BitString absorb(const Frame& frame);

  std::uint64_t sifted() const noexcept { return sifted_; }
  std::uint64_t credited() const noexcept { return credited_; }
  double rate() const noexcept { return rate_; }

 private:
  double rate_;
  std::uint64_t sifted_ = 0;
  std::uint64_t credited_ = 0;
  BitString pending_;
  std::size_t pending_head_ = 0;
};

/// Distills key from the Normal frames in `frames`; other frames are skipped.
BitString sift_and_distill(std::span<const Frame> frames, const math::RateParams& params);

}  // namespace qbc
