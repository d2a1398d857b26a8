#include "qbc/transcript.hpp"

#include "qbc/config.hpp"

namespace qbc {

namespace {

using nlohmann::ordered_json;

std::string bases_string(const std::vector<Basis>& bases) {
  std::string s;
  s.reserve(bases.size());
  for (auto b : bases) s.push_back(to_char(b));
  return s;
}

ordered_json record_json(const MeasurementRecord& r) {
  return {{"index", r.index},
          {"alice_basis", std::string(1, to_char(r.alice_basis))},
          {"outcome", r.outcome ? 1 : 0},
          {"bob_basis", std::string(1, to_char(r.ground_truth.basis))},
          {"bob_bit", r.ground_truth.bit ? 1 : 0}};
}

ordered_json ledger_json(const char* channel, const KeyBuffer& buffer) {
  ordered_json spends = ordered_json::array();
  for (const auto& s : buffer.spends()) {
    spends.push_back({{"offset", s.offset}, {"length", s.length}, {"frame_id", s.tag}});
  }
  return {{"channel", channel},
          {"credited", buffer.total()},
          {"consumed", buffer.consumed()},
          {"available", buffer.available()},
          {"spends", std::move(spends)}};
}

ordered_json commitment_json(const CommitmentRecord& c, PayloadMode mode) {
  ordered_json messages = ordered_json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& leg = c.relays[i];
    messages.push_back({{"relay", to_string(leg.sent.relay)},
                        {"key_offset", leg.sent.key_offset},
                        {"length", leg.sent.ciphertext.size()},
                        {"ciphertext_hex", to_hex(pack(leg.sent.ciphertext))},
                        {"delivered_hex", to_hex(pack(leg.delivered))},
                        {"tampered", leg.tampered},
                        {"send_time", c.schedule.send_time},
                        {"receipt_time", leg.receipt_time},
                        {"decrypt_time", leg.decrypt_time},
                        {"decrypted", leg.decrypted ? ordered_json(leg.decrypted->to_string()) : ordered_json()}});
  }
  ordered_json channels = ordered_json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    channels.push_back({{"relay", to_string(kRelays[i])},
                        {"latency", c.schedule.timing[i].latency},
                        {"wait", c.schedule.timing[i].wait},
                        {"receipt", c.schedule.receipt[i]}});
  }
  ordered_json j;
  j["frame_id"] = c.frame_id;
  j["committed_bit"] = c.committed_bit ? 1 : 0;
  j["claimed_bit"] = c.claimed_bit ? 1 : 0;
  j["strategy"] = to_string(c.strategy);
  j["payload_mode"] = to_string(mode);
  j["payload"] = c.payload.to_string();
  j["messages"] = std::move(messages);
  j["schedule"] = {{"send_time", c.schedule.send_time}, {"epoch", c.schedule.epoch}, {"channels", std::move(channels)}};
  if (c.disclosure) {
    j["disclosure"] = {{"bases", bases_string(c.disclosure->bases)},
                       {"outcomes", c.disclosure->outcomes.to_string()},
                       {"claimed_bit", c.disclosure->claimed_bit ? 1 : 0}};
  } else {
    j["disclosure"] = nullptr;
  }
  j["relays_consistent"] = c.relays_consistent ? ordered_json(*c.relays_consistent) : ordered_json();
  j["counts"] = {{"n_rect", c.counts.n_rect},
                 {"n_diag", c.counts.n_diag},
                 {"n_err_rect", c.counts.n_err_rect},
                 {"n_err_diag", c.counts.n_err_diag}};
  j["verdict"] = c.verdict ? ordered_json(to_string(*c.verdict)) : ordered_json();
  j["verify_time"] = c.verify_time;
  return j;
}

}  // namespace

ordered_json to_json(const SessionTranscript& t) {
  ordered_json j;
  j["schema"] = "qbc.session_transcript/1";
  j["config"] = config::to_json(t.config);
  j["outcome"] = to_string(t.outcome);
  j["stats"] = {{"frames", t.stats.frames},
                {"commitment_candidates", t.stats.commitment_candidates},
                {"commit_eligible", t.stats.commit_eligible},
                {"committed", t.stats.committed},
                {"normal_distilled", t.stats.normal_distilled},
                {"sifted", t.stats.sifted},
                {"key_credited", t.stats.key_credited},
                {"pulses_sent", t.stats.pulses_sent}};
  j["key_ledger"] = ordered_json::array({ledger_json("P0", t.buffers[0]), ledger_json("P1", t.buffers[1])});

  ordered_json commitments = ordered_json::array();
  for (const auto& c : t.commitments) commitments.push_back(commitment_json(c, t.config.payload_mode));
  j["commitments"] = std::move(commitments);

  ordered_json aborted = ordered_json::array();
  for (const auto& a : t.aborted) aborted.push_back({{"frame_id", a.frame_id}, {"reason", a.reason}});
  j["aborted_commits"] = std::move(aborted);

  ordered_json frames = ordered_json::array();
  for (const auto& f : t.frames) {
    ordered_json fj{{"id", f.id},
                    {"time", f.time},
                    {"classification", to_string(f.classification)},
                    {"eligible", f.eligible},
                    {"role", to_string(f.role)},
                    {"sifted", f.sifted},
                    {"key_credited", f.key_credited}};
    if (t.config.detail.records) {
      ordered_json recs = ordered_json::array();
      for (const auto& r : f.records) recs.push_back(record_json(r));
      fj["records"] = std::move(recs);
    }
    frames.push_back(std::move(fj));
  }
  j["frames"] = std::move(frames);

  ordered_json events = ordered_json::array();
  for (const auto& e : t.events) {
    events.push_back({{"time", e.time}, {"agent", e.agent}, {"kind", e.kind}, {"frame_id", e.frame_id}});
  }
  j["events"] = std::move(events);
  return j;
}

ordered_json to_json(const routing::PathChoice& path) {
  return {{"nodes", path.nodes}, {"edge_probs", path.edge_probs}, {"probability", path.probability()}};
}

ordered_json to_json(const routing::ReservationReport& r) {
  ordered_json changes = ordered_json::array();
  for (const auto& c : r.load_changes) {
    changes.push_back({{"a", c.edge.a}, {"b", c.edge.b}, {"load_before", c.before}, {"load_after", c.after}});
  }
  ordered_json handles = ordered_json::array();
  for (const auto& h : r.handles) {
    ordered_json hj{{"id", h.id}, {"relay", h.relay}, {"mode", routing::to_string(h.mode)}};
    hj["outcome"] = h.outcome ? ordered_json(to_string(*h.outcome)) : ordered_json();
    handles.push_back(std::move(hj));
  }
  return {{"path", r.path},
          {"probs_before", r.probs_before},
          {"probs_after", r.probs_after},
          {"load_changes", std::move(changes)},
          {"handles", std::move(handles)},
          {"committed", r.committed}};
}

}  // namespace qbc
