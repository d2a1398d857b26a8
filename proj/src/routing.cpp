#include "qbc/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "qbc/errors.hpp"
#include "qbc/rng.hpp"

namespace qbc::routing {

EdgeKey::EdgeKey(NodeId x, NodeId y) : a(std::move(x)), b(std::move(y)) {
  if (b < a) std::swap(a, b);
}

void NetworkGraph::add_node(const NodeId& id) {
  if (id.empty()) throw std::invalid_argument("node id must not be empty");
  if (!adjacency_.try_emplace(id).second) throw std::invalid_argument("duplicate node '" + id + "'");
}

void NetworkGraph::add_edge(const NodeId& a, const NodeId& b, std::uint64_t buffer_bits) {
  if (a == b) throw std::invalid_argument("self-loop on '" + a + "'");
  if (!has_node(a)) throw std::invalid_argument("unknown node '" + a + "'");
  if (!has_node(b)) throw std::invalid_argument("unknown node '" + b + "'");
  if (!buffers_.try_emplace(EdgeKey(a, b), buffer_bits).second) {
    throw std::invalid_argument("duplicate edge " + a + "-" + b);
  }
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
}

bool NetworkGraph::has_edge(const NodeId& a, const NodeId& b) const {
  return buffers_.contains(EdgeKey(a, b));
}

std::uint64_t NetworkGraph::buffer(const NodeId& a, const NodeId& b) const {
  const auto it = buffers_.find(EdgeKey(a, b));
  if (it == buffers_.end()) throw std::invalid_argument("no edge " + a + "-" + b);
  return it->second;
}

const std::set<NodeId>& NetworkGraph::neighbors(const NodeId& id) const {
  const auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw std::invalid_argument("unknown node '" + id + "'");
  return it->second;
}

std::vector<NodeId> NetworkGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(adjacency_.size());
  for (const auto& [id, _] : adjacency_) out.push_back(id);
  return out;
}

void TrafficSpec::validate() const {
  if (n_packets == 0) throw DomainError("n_packets must be >= 1");
  if (packet_len == 0) throw DomainError("packet_len must be >= 1");
  if (source == destination) throw DomainError("source and destination must differ");
}

double PathChoice::probability() const {
  double p = 1.0;
  for (double e : edge_probs) p *= e;
  return p;
}

double serve_probability(std::uint64_t buffer_bits, std::uint64_t n_packets, std::uint64_t packet_len) {
  if (n_packets == 0 || packet_len == 0) throw DomainError("serve_probability: n and L must be >= 1");
  const double demand = static_cast<double>(n_packets) * static_cast<double>(packet_len);
  const double b = static_cast<double>(buffer_bits);
  return b < demand ? b / demand : 1.0;
}

namespace {

void fill_probs(const NetworkGraph& graph, const TrafficSpec& traffic,
                const std::map<EdgeKey, std::uint64_t>& load, PathChoice& path) {
  path.edge_probs.clear();
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    const EdgeKey key(path.nodes[i], path.nodes[i + 1]);
    path.edge_probs.push_back(serve_probability(graph.buffer(key.a, key.b), load.at(key), traffic.packet_len));
  }
  path.score = path.probability();
}

// Strict "a is a better choice than b" given scores already compared equal.
bool tie_break(const PathChoice& a, const PathChoice& b) {
  if (a.hops() != b.hops()) return a.hops() < b.hops();
  return a.nodes < b.nodes;
}

template <typename Score>
const PathChoice& argmax(std::span<const PathChoice> paths, Score score) {
  if (paths.empty()) throw std::invalid_argument("path selection over an empty set");
  const PathChoice* best = &paths.front();
  double best_score = score(*best);
  for (const auto& p : paths.subspan(1)) {
    const double s = score(p);
    if (s > best_score || (s == best_score && tie_break(p, *best))) {
      best = &p;
      best_score = s;
    }
  }
  return *best;
}

}  // namespace

Discovery flood_discover(const NetworkGraph& graph, const TrafficSpec& traffic) {
  traffic.validate();
  if (!graph.has_node(traffic.source)) throw std::invalid_argument("unknown source '" + traffic.source + "'");
  if (!graph.has_node(traffic.destination)) {
    throw std::invalid_argument("unknown destination '" + traffic.destination + "'");
  }

  Discovery out;
  // Each queued request carries the route it has travelled.
  std::deque<std::vector<NodeId>> requests{{traffic.source}};
  while (!requests.empty()) {
    auto route = std::move(requests.front());
    requests.pop_front();
    const NodeId& at = route.back();
    if (at == traffic.destination) {
      out.paths.push_back(PathChoice{std::move(route), {}, 0.0});
      continue;
    }
    for (const auto& next : graph.neighbors(at)) {
      if (std::find(route.begin(), route.end(), next) != route.end()) continue;
      auto forwarded = route;
      forwarded.push_back(next);
      requests.push_back(std::move(forwarded));
    }
  }

  std::sort(out.paths.begin(), out.paths.end(), [](const PathChoice& a, const PathChoice& b) {
    return a.hops() != b.hops() ? a.hops() < b.hops() : a.nodes < b.nodes;
  });
  for (const auto& p : out.paths) {
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) out.edge_load[EdgeKey(p.nodes[i], p.nodes[i + 1])] += traffic.n_packets;
  }
  for (auto& p : out.paths) fill_probs(graph, traffic, out.edge_load, p);
  return out;
}

PathChoice datagram_select(std::span<const PathChoice> paths) {
  return argmax(paths, [](const PathChoice& p) { return p.probability(); });
}

CircuitChoice vc_select(std::span<const PathChoice> paths, double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("vc_select: alpha must be non-negative");
  auto score = [alpha](const PathChoice& p) {
    return std::log2(p.probability()) - alpha * static_cast<double>(p.hops());
  };
  PathChoice best = argmax(paths, score);
  best.score = score(best);
  const bool viable = best.score > -std::numeric_limits<double>::infinity();
  return {std::move(best), viable};
}

const char* to_string(CommitMode m) { return m == CommitMode::fast ? "fast" : "full"; }

bool ReservationLedger::has(const NodeId& source, const NodeId& destination) const {
  return entries_.contains({source, destination});
}

const Reservation* ReservationLedger::find(const NodeId& source, const NodeId& destination) const {
  const auto it = entries_.find({source, destination});
  return it == entries_.end() ? nullptr : &it->second;
}

void ReservationLedger::record(Reservation reservation) {
  auto key = std::make_pair(reservation.traffic.source, reservation.traffic.destination);
  if (entries_.contains(key)) throw ProtocolError("traffic already holds a reserved circuit");
  entries_.emplace(std::move(key), std::move(reservation));
}

ReservationReport reserve_circuit(const NetworkGraph& graph, const TrafficSpec& traffic, const PathChoice& chosen,
                                  const Discovery& discovery, ReservationLedger& ledger,
                                  const ReservationOptions& options) {
  const auto candidate = std::find_if(discovery.paths.begin(), discovery.paths.end(),
                                      [&](const PathChoice& p) { return p.nodes == chosen.nodes; });
  if (candidate == discovery.paths.end()) throw std::invalid_argument("chosen path is not a discovered candidate");
  if (ledger.has(traffic.source, traffic.destination)) {
    throw ProtocolError("traffic " + traffic.source + "->" + traffic.destination + " is already bound to a circuit");
  }

  ReservationReport report;
  report.traffic = traffic;
  report.path = candidate->nodes;
  report.probs_before = candidate->edge_probs;

  // Only the chosen path keeps this flow's load.
  std::map<EdgeKey, std::uint64_t> after;
  for (std::size_t i = 0; i + 1 < report.path.size(); ++i) {
    after[EdgeKey(report.path[i], report.path[i + 1])] = traffic.n_packets;
  }
  for (const auto& [edge, load] : discovery.edge_load) {
    const auto it = after.find(edge);
    const std::uint64_t now = it == after.end() ? 0 : it->second;
    if (now != load) report.load_changes.push_back({edge, load, now});
  }
  PathChoice updated{report.path, {}, 0.0};
  fill_probs(graph, traffic, after, updated);
  report.probs_after = updated.edge_probs;

  for (std::size_t i = 1; i < report.path.size(); ++i) {
    CommitmentHandle h{ledger.next_handle(), report.path[i], options.mode, std::nullopt};
    if (options.mode == CommitMode::full) {
      SessionConfig cfg = options.session;
      cfg.commit_bit = true;
      cfg.unveil_bit = true;
      cfg.strategy = CheatStrategy::honest;
      cfg.seed = derive_seed(options.session.seed, h.id);
      cfg.detail = {false, false, false};
      h.outcome = run_session(cfg).outcome;
      if (h.outcome != SessionOutcome::accept1) report.committed = false;
    }
    report.handles.push_back(std::move(h));
  }
  if (report.committed) ledger.record({traffic, report.path, report.handles});
  return report;
}

}  // namespace qbc::routing
