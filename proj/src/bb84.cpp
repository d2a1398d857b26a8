#include "qbc/bb84.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

Pulse draw_pulse(Rng& rng, std::uint64_t index) {
  const Basis basis = rng.coin() ? Basis::diagonal : Basis::rectilinear;
  const bool bit = rng.coin();
  return {index, basis, bit};
}

// Returns false when the pulse is lost.
bool measure(Rng& rng, const ChannelModel& channel, const Pulse& pulse, MeasurementRecord& out) {
  if (!rng.bernoulli(channel.detection_prob)) return false;
  const Basis alice = rng.coin() ? Basis::diagonal : Basis::rectilinear;
  bool outcome;
  if (alice == pulse.basis) {
    outcome = pulse.bit != rng.bernoulli(channel.flip_prob);
  } else {
    outcome = rng.coin();
  }
  out = {pulse.index, alice, outcome, {pulse.basis, pulse.bit}};
  return true;
}

}  // namespace

void ChannelModel::validate() const {
  if (!(detection_prob > 0.0 && detection_prob <= 1.0)) {
    throw DomainError("detection_prob must lie in (0, 1]");
  }
  if (!(flip_prob >= 0.0 && flip_prob < 0.5)) throw DomainError("flip_prob must lie in [0, 0.5)");
}

const char* to_string(FrameClass c) {
  return c == FrameClass::commitment_candidate ? "CommitmentCandidate" : "Normal";
}

std::vector<Pulse> prepare_pulses(std::uint64_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("prepare_pulses: count must be >= 1");
  Rng rng(seed);
  std::vector<Pulse> pulses;
  pulses.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) pulses.push_back(draw_pulse(rng, i));
  return pulses;
}

std::vector<MeasurementRecord> transmit_and_measure(std::span<const Pulse> pulses,
                                                    const ChannelModel& channel,
                                                    std::uint64_t seed) {
  channel.validate();
  Rng rng(seed);
  std::vector<MeasurementRecord> records;
  records.reserve(static_cast<std::size_t>(std::ceil(static_cast<double>(pulses.size()) * channel.detection_prob)));
  MeasurementRecord rec{};
  for (const auto& pulse : pulses) {
    if (measure(rng, channel, pulse, rec)) records.push_back(rec);
  }
  return records;
}

FrameClass classify(std::span<const MeasurementRecord> records, std::uint64_t n_quarter) {
  if (records.size() != 4 * n_quarter) return FrameClass::normal;
  const auto rect = std::count_if(records.begin(), records.end(),
                                  [](const auto& r) { return r.alice_basis == Basis::rectilinear; });
  return static_cast<std::uint64_t>(rect) == 2 * n_quarter ? FrameClass::commitment_candidate
                                                           : FrameClass::normal;
}

std::vector<Frame> assemble_frames(std::span<const MeasurementRecord> records, std::uint64_t n_quarter) {
  if (n_quarter == 0) throw std::invalid_argument("assemble_frames: n_quarter must be >= 1");
  const std::size_t size = 4 * n_quarter;
  std::vector<Frame> frames;
  frames.reserve(records.size() / size);
  for (std::size_t start = 0; start + size <= records.size(); start += size) {
    Frame f;
    f.id = frames.size();
    f.records.assign(records.begin() + static_cast<std::ptrdiff_t>(start),
                     records.begin() + static_cast<std::ptrdiff_t>(start + size));
    f.classification = classify(f.records, n_quarter);
    frames.push_back(std::move(f));
  }
  return frames;
}

BitString outcome_substring(const Frame& frame, Basis basis) {
  BitString out;
  for (const auto& r : frame.records) {
    if (r.alice_basis == basis) out.push_back(r.outcome);
  }
  return out;
}

PhysicalLayer::PhysicalLayer(const ChannelModel& channel, std::uint64_t pulse_seed,
                             std::uint64_t channel_seed)
    : channel_(channel), pulse_rng_(pulse_seed), channel_rng_(channel_seed) {
  channel_.validate();
}

MeasurementRecord PhysicalLayer::next_detection() {
  MeasurementRecord rec{};
  for (;;) {
    const Pulse pulse = draw_pulse(pulse_rng_, sent_++);
    if (measure(channel_rng_, channel_, pulse, rec)) return rec;
  }
}

Frame PhysicalLayer::next_frame(std::uint64_t id, std::uint64_t n_quarter) {
  Frame f;
  f.id = id;
  f.records.reserve(4 * n_quarter);
  for (std::uint64_t i = 0; i < 4 * n_quarter; ++i) f.records.push_back(next_detection());
  f.classification = classify(f.records, n_quarter);
  return f;
}

KeyDistiller::KeyDistiller(double rate) : rate_(std::max(0.0, rate)) {}

BitString KeyDistiller::absorb(const Frame& frame) {
  for (const auto& r : frame.records) {
    if (r.sifted()) {
      pending_.push_back(r.outcome);
      ++sifted_;
    }
  }
  const auto target = static_cast<std::uint64_t>(std::floor(static_cast<double>(sifted_) * rate_));
  const auto fresh = static_cast<std::size_t>(target - credited_);
  BitString out = pending_.slice(pending_head_, fresh);
  pending_head_ += fresh;
  credited_ = target;
  if (pending_head_ > 4096 && pending_head_ * 2 > pending_.size()) {
    pending_ = pending_.slice(pending_head_, pending_.size() - pending_head_);
    pending_head_ = 0;
  }
  return out;
}

BitString sift_and_distill(std::span<const Frame> frames, const math::RateParams& params) {
  KeyDistiller distiller(math::final_key_rate(params.q_tol, params.f_ec));
  BitString key;
  for (const auto& f : frames) {
    if (f.classification == FrameClass::normal) key.append(distiller.absorb(f));
  }
  return key;
}

}  // namespace qbc
