#include "qbc/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qbc/errors.hpp"

namespace qbc::config {

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const json& node, const std::string& field) {
  if (!node.is_object()) throw ConfigError(field.empty() ? "<root>" : field, "must be an object");
}

void reject_unknown(const json& node, const std::string& prefix, std::initializer_list<const char*> known) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, _] : node.items()) {
    if (!allowed.contains(key)) throw ConfigError(join(prefix, key), "unknown field");
  }
}

double number(const json& node, const std::string& field) {
  if (!node.is_number()) throw ConfigError(field, "must be a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

std::uint64_t count(const json& node, const std::string& field) {
  if (!node.is_number_integer() || (!node.is_number_unsigned() && node.get<std::int64_t>() < 0)) {
    throw ConfigError(field, "must be a non-negative integer");
  }
  return node.get<std::uint64_t>();
}

bool flag(const json& node, const std::string& field) {
  if (!node.is_boolean()) throw ConfigError(field, "must be true or false");
  return node.get<bool>();
}

bool bit(const json& node, const std::string& field) {
  if (node.is_boolean()) return node.get<bool>();
  const auto v = count(node, field);
  if (v > 1) throw ConfigError(field, "must be 0 or 1");
  return v == 1;
}

std::string text(const json& node, const std::string& field) {
  if (!node.is_string()) throw ConfigError(field, "must be a string");
  return node.get<std::string>();
}

BigInt big_count(const json& node, const std::string& field) {
  if (node.is_string()) {
    const auto s = node.get<std::string>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ConfigError(field, "must be a decimal integer");
    }
    return BigInt(s);
  }
  return BigInt(count(node, field));
}

template <typename T, typename F>
T optional_field(const json& node, const std::string& prefix, const char* key, T fallback, F read) {
  const auto it = node.find(key);
  if (it == node.end()) return fallback;
  return read(*it, join(prefix, key));
}

ChannelTiming parse_timing(const json& node, const std::string& field) {
  require_object(node, field);
  reject_unknown(node, field, {"latency", "wait"});
  ChannelTiming t;
  t.latency = optional_field(node, field, "latency", t.latency, count);
  t.wait = optional_field(node, field, "wait", t.wait, count);
  return t;
}

json timing_json(const ChannelTiming& t) { return {{"latency", t.latency}, {"wait", t.wait}}; }

}  // namespace

SessionConfig parse_session(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "",
                 {"n_quarter", "codebook_size", "channel", "q_tol", "f_ec", "seed", "n_tol", "e_tol", "commit_bit",
                  "unveil_bit", "strategy", "frame_budget", "max_commits", "payload_mode", "timing",
                  "require_verifiable_frame", "tamper_p1_bit", "transcript"});
  SessionConfig c;
  c.n_quarter = optional_field(doc, "", "n_quarter", c.n_quarter, count);
  c.codebook_size = optional_field(doc, "", "codebook_size", c.codebook_size, big_count);
  if (const auto it = doc.find("channel"); it != doc.end()) {
    require_object(*it, "channel");
    reject_unknown(*it, "channel", {"detection_prob", "flip_prob"});
    c.channel.detection_prob = optional_field(*it, "channel", "detection_prob", c.channel.detection_prob, number);
    c.channel.flip_prob = optional_field(*it, "channel", "flip_prob", c.channel.flip_prob, number);
  }
  if (doc.contains("q_tol")) c.q_tol = number(doc["q_tol"], "q_tol");
  c.f_ec = optional_field(doc, "", "f_ec", c.f_ec, number);
  c.seed = optional_field(doc, "", "seed", c.seed, count);
  c.policy.n_tol = optional_field(doc, "", "n_tol", c.policy.n_tol, count);
  c.policy.e_tol = optional_field(doc, "", "e_tol", c.policy.e_tol, number);
  c.commit_bit = optional_field(doc, "", "commit_bit", c.commit_bit, bit);
  if (doc.contains("unveil_bit")) c.unveil_bit = bit(doc["unveil_bit"], "unveil_bit");
  if (const auto it = doc.find("strategy"); it != doc.end()) {
    const auto s = text(*it, "strategy");
    if (s == "honest") c.strategy = CheatStrategy::honest;
    else if (s == "claim_other_basis") c.strategy = CheatStrategy::claim_other_basis;
    else throw ConfigError("strategy", "must be \"honest\" or \"claim_other_basis\"");
  }
  c.frame_budget = optional_field(doc, "", "frame_budget", c.frame_budget, count);
  c.max_commits = optional_field(doc, "", "max_commits", c.max_commits, count);
  if (const auto it = doc.find("payload_mode"); it != doc.end()) {
    const auto s = text(*it, "payload_mode");
    if (s == "raw") c.payload_mode = PayloadMode::raw;
    else if (s == "compressed") c.payload_mode = PayloadMode::compressed;
    else throw ConfigError("payload_mode", "must be \"raw\" or \"compressed\"");
  }
  if (const auto it = doc.find("timing"); it != doc.end()) {
    require_object(*it, "timing");
    reject_unknown(*it, "timing", {"p0", "p1"});
    if (it->contains("p0")) c.timing[0] = parse_timing((*it)["p0"], "timing.p0");
    if (it->contains("p1")) c.timing[1] = parse_timing((*it)["p1"], "timing.p1");
  }
  c.require_verifiable_frame =
      optional_field(doc, "", "require_verifiable_frame", c.require_verifiable_frame, flag);
  if (doc.contains("tamper_p1_bit")) c.tamper_p1_bit = count(doc["tamper_p1_bit"], "tamper_p1_bit");
  if (const auto it = doc.find("transcript"); it != doc.end()) {
    require_object(*it, "transcript");
    reject_unknown(*it, "transcript", {"frames", "records", "events"});
    c.detail.frames = optional_field(*it, "transcript", "frames", c.detail.frames, flag);
    c.detail.records = optional_field(*it, "transcript", "records", c.detail.records, flag);
    c.detail.events = optional_field(*it, "transcript", "events", c.detail.events, flag);
  }

  try {
    c.validate();
  } catch (const DomainError& e) {
    const std::string what = e.what();
    const auto colon = what.find(':');
    throw ConfigError(colon == std::string::npos ? "<root>" : what.substr(0, colon),
                      colon == std::string::npos ? what : what.substr(colon + 2));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("codebook_size", e.what());
  }
  return c;
}

nlohmann::ordered_json to_json(const SessionConfig& c) {
  nlohmann::ordered_json j;
  j["n_quarter"] = c.n_quarter;
  if (c.codebook_size <= BigInt(UINT64_MAX)) {
    j["codebook_size"] = c.codebook_size.convert_to<std::uint64_t>();
  } else {
    j["codebook_size"] = c.codebook_size.str();
  }
  j["channel"] = {{"detection_prob", c.channel.detection_prob}, {"flip_prob", c.channel.flip_prob}};
  j["q_tol"] = c.effective_q_tol();
  j["f_ec"] = c.f_ec;
  j["seed"] = c.seed;
  j["n_tol"] = c.policy.n_tol;
  j["e_tol"] = c.policy.e_tol;
  j["commit_bit"] = c.commit_bit ? 1 : 0;
  j["unveil_bit"] = c.effective_unveil_bit() ? 1 : 0;
  j["strategy"] = to_string(c.strategy);
  j["frame_budget"] = c.frame_budget;
  j["max_commits"] = c.max_commits;
  j["payload_mode"] = to_string(c.payload_mode);
  j["timing"] = {{"p0", timing_json(c.timing[0])}, {"p1", timing_json(c.timing[1])}};
  j["require_verifiable_frame"] = c.require_verifiable_frame;
  if (c.tamper_p1_bit) j["tamper_p1_bit"] = *c.tamper_p1_bit;
  j["transcript"] = {{"frames", c.detail.frames}, {"records", c.detail.records}, {"events", c.detail.events}};
  return j;
}

NetworkDocument parse_network(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"nodes", "edges", "traffic"});
  NetworkDocument out;

  const auto nodes = doc.find("nodes");
  if (nodes == doc.end() || !nodes->is_array()) throw ConfigError("nodes", "must be an array");
  if (nodes->empty()) throw ConfigError("nodes", "network has no nodes");
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    const auto field = "nodes[" + std::to_string(i) + "]";
    try {
      out.graph.add_node(text((*nodes)[i], field));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  }

  const auto edges = doc.find("edges");
  if (edges == doc.end() || !edges->is_array()) throw ConfigError("edges", "must be an array");
  for (std::size_t i = 0; i < edges->size(); ++i) {
    const auto field = "edges[" + std::to_string(i) + "]";
    const auto& e = (*edges)[i];
    require_object(e, field);
    reject_unknown(e, field, {"a", "b", "buffer_bits"});
    for (const char* key : {"a", "b", "buffer_bits"}) {
      if (!e.contains(key)) throw ConfigError(join(field, key), "missing");
    }
    try {
      out.graph.add_edge(text(e["a"], join(field, "a")), text(e["b"], join(field, "b")),
                         count(e["buffer_bits"], join(field, "buffer_bits")));
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(field, ex.what());
    }
  }

  const auto traffic = doc.find("traffic");
  if (traffic == doc.end()) throw ConfigError("traffic", "missing");
  require_object(*traffic, "traffic");
  reject_unknown(*traffic, "traffic", {"src", "dst", "n_packets", "packet_len"});
  for (const char* key : {"src", "dst", "n_packets", "packet_len"}) {
    if (!traffic->contains(key)) throw ConfigError(join("traffic", key), "missing");
  }
  out.traffic.source = text((*traffic)["src"], "traffic.src");
  out.traffic.destination = text((*traffic)["dst"], "traffic.dst");
  out.traffic.n_packets = count((*traffic)["n_packets"], "traffic.n_packets");
  out.traffic.packet_len = count((*traffic)["packet_len"], "traffic.packet_len");
  if (out.traffic.n_packets == 0) throw ConfigError("traffic.n_packets", "must be >= 1");
  if (out.traffic.packet_len == 0) throw ConfigError("traffic.packet_len", "must be >= 1");
  if (!out.graph.has_node(out.traffic.source)) throw ConfigError("traffic.src", "unknown node");
  if (!out.graph.has_node(out.traffic.destination)) throw ConfigError("traffic.dst", "unknown node");
  if (out.traffic.source == out.traffic.destination) throw ConfigError("traffic.dst", "must differ from src");
  return out;
}

std::vector<double> parse_grid(const json& node, const std::string& field) {
  std::vector<double> values;
  if (node.is_array()) {
    if (node.empty()) throw ConfigError(field, "grid is empty");
    for (std::size_t i = 0; i < node.size(); ++i) values.push_back(number(node[i], field + "[" + std::to_string(i) + "]"));
  } else if (node.is_number()) {
    values.push_back(number(node, field));
  } else if (node.is_object()) {
    reject_unknown(node, field, {"start", "stop", "count"});
    for (const char* key : {"start", "stop", "count"}) {
      if (!node.contains(key)) throw ConfigError(join(field, key), "missing");
    }
    const double start = number(node["start"], join(field, "start"));
    const double stop = number(node["stop"], join(field, "stop"));
    const auto n = count(node["count"], join(field, "count"));
    if (n == 0) throw ConfigError(join(field, "count"), "must be >= 1");
    if (stop < start) throw ConfigError(join(field, "stop"), "must be >= start");
    if (n == 1) {
      if (start != stop) throw ConfigError(join(field, "count"), "a single point needs start == stop");
      values.push_back(start);
    } else {
      for (std::uint64_t i = 0; i < n; ++i) {
        values.push_back(i + 1 == n ? stop : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1));
      }
    }
  } else {
    throw ConfigError(field, "must be a number, a list, or {start, stop, count}");
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

RatesConfig parse_rates(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"n_quarter", "q_tol", "p"});
  RatesConfig c;
  c.n_quarter = optional_field(doc, "", "n_quarter", c.n_quarter, count);
  if (c.n_quarter == 0) throw ConfigError("n_quarter", "must be >= 1");
  if (doc.contains("q_tol")) c.q_tol = parse_grid(doc["q_tol"], "q_tol");
  if (doc.contains("p")) c.p = parse_grid(doc["p"], "p");
  for (double q : c.q_tol) {
    if (!(q >= 0.0 && q < 0.5)) throw ConfigError("q_tol", "values must lie in [0, 0.5)");
  }
  for (double p : c.p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p", "values must lie in [0, 1]");
  }
  return c;
}

BindingConfig parse_binding(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"p", "n_tol", "e_tol", "variant", "delta_grid"});
  BindingConfig c;
  if (doc.contains("p")) c.p = parse_grid(doc["p"], "p");
  if (doc.contains("e_tol")) c.e_tol = parse_grid(doc["e_tol"], "e_tol");
  if (const auto it = doc.find("n_tol"); it != doc.end()) {
    c.n_tol.clear();
    const json list = it->is_array() ? *it : json::array({*it});
    if (list.empty()) throw ConfigError("n_tol", "grid is empty");
    for (std::size_t i = 0; i < list.size(); ++i) c.n_tol.push_back(count(list[i], "n_tol[" + std::to_string(i) + "]"));
    std::sort(c.n_tol.begin(), c.n_tol.end());
    c.n_tol.erase(std::unique(c.n_tol.begin(), c.n_tol.end()), c.n_tol.end());
  }
  if (const auto it = doc.find("variant"); it != doc.end()) {
    const auto s = text(*it, "variant");
    if (s == "literal") c.variants = {math::BindingVariant::literal};
    else if (s == "hoeffding") c.variants = {math::BindingVariant::hoeffding};
    else if (s == "both") c.variants = {math::BindingVariant::literal, math::BindingVariant::hoeffding};
    else throw ConfigError("variant", "must be \"literal\", \"hoeffding\" or \"both\"");
  }
  c.delta_grid = optional_field(doc, "", "delta_grid", c.delta_grid, count);
  if (c.delta_grid < 2) throw ConfigError("delta_grid", "must be >= 2");
  for (double p : c.p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p", "values must lie in [0, 1]");
  }
  for (auto n : c.n_tol) {
    if (n <= 1) throw ConfigError("n_tol", "values must be >= 2 (n_tol = 1 divides by zero)");
  }
  for (double e : c.e_tol) {
    if (!(e >= 0.0 && e < 0.5)) throw ConfigError("e_tol", "values must lie in [0, 0.5)");
  }
  return c;
}

}  // namespace qbc::config
