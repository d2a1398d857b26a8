#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbc/session.hpp"

namespace qbc::routing {

using NodeId = std::string;

/// Unordered node pair, stored with the smaller id first.
struct EdgeKey {
  NodeId a;
  NodeId b;

  EdgeKey(NodeId x, NodeId y);
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Undirected relay network; each link carries a key buffer of b_AB bits.
class NetworkGraph {
 public:
  void add_node(const NodeId& id);
  /// Throws std::invalid_argument on self-loops, unknown nodes or duplicates.
  void add_edge(const NodeId& a, const NodeId& b, std::uint64_t buffer_bits);

  bool has_node(const NodeId& id) const { return adjacency_.contains(id); }
  bool has_edge(const NodeId& a, const NodeId& b) const;
  std::uint64_t buffer(const NodeId& a, const NodeId& b) const;
  /// Neighbours in ascending id order.
  const std::set<NodeId>& neighbors(const NodeId& id) const;
  std::vector<NodeId> nodes() const;
  const std::map<EdgeKey, std::uint64_t>& edges() const noexcept { return buffers_; }

 private:
  std::map<NodeId, std::set<NodeId>> adjacency_;
  std::map<EdgeKey, std::uint64_t> buffers_;
};

struct TrafficSpec {
  NodeId source;
  NodeId destination;
  std::uint64_t n_packets = 1;
  std::uint64_t packet_len = 1;

  void validate() const;
};

struct PathChoice {
  std::vector<NodeId> nodes;
  std::vector<double> edge_probs;
  double score = 0.0;

  std::size_t hops() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
  /// Product of the per-edge serve probabilities (independent service).
  double probability() const;
};

/// P_AB = b / (nL) when b < nL, else 1.
double serve_probability(std::uint64_t buffer_bits, std::uint64_t n_packets, std::uint64_t packet_len);

struct Discovery {
  std::vector<PathChoice> paths;                 ///< every simple path, by (hops, node ids)
  std::map<EdgeKey, std::uint64_t> edge_load;    ///< packets that may cross each edge
};

/// Floods requests from the source; each request is forwarded to every
/// neighbour not already on its path. An edge's load is the number of
/// discovered paths crossing it times n_packets, and each path's edge_probs
/// follow from those loads. Throws std::invalid_argument for unknown nodes.
Discovery flood_discover(const NetworkGraph& graph, const TrafficSpec& traffic);

/// Maximum path probability; ties go to fewer hops, then smaller node ids.
/// Throws std::invalid_argument on an empty set.
PathChoice datagram_select(std::span<const PathChoice> paths);

inline constexpr double kDefaultAlpha = 0.5;

struct CircuitChoice {
  PathChoice path;   ///< score = log2(probability) - alpha * hops
  bool viable;       ///< false when every candidate has a zero-probability edge
};

CircuitChoice vc_select(std::span<const PathChoice> paths, double alpha = kDefaultAlpha);

enum class CommitMode { fast, full };
const char* to_string(CommitMode m);

struct CommitmentHandle {
  std::uint64_t id;
  NodeId relay;
  CommitMode mode;
  std::optional<SessionOutcome> outcome;  ///< full mode only
};

struct Reservation {
  TrafficSpec traffic;
  std::vector<NodeId> path;
  std::vector<CommitmentHandle> handles;
};

/// Source-side record of committed circuits. One routing decision at a time.
class ReservationLedger {
 public:
  bool has(const NodeId& source, const NodeId& destination) const;
  const Reservation* find(const NodeId& source, const NodeId& destination) const;
  const std::map<std::pair<NodeId, NodeId>, Reservation>& entries() const noexcept { return entries_; }

  std::uint64_t next_handle() { return next_handle_++; }
  void record(Reservation reservation);

 private:
  std::map<std::pair<NodeId, NodeId>, Reservation> entries_;
  std::uint64_t next_handle_ = 1;
};

struct LoadChange {
  EdgeKey edge;
  std::uint64_t before;
  std::uint64_t after;
};

struct ReservationReport {
  TrafficSpec traffic;
  std::vector<NodeId> path;
  std::vector<double> probs_before;
  std::vector<double> probs_after;
  std::vector<LoadChange> load_changes;
  std::vector<CommitmentHandle> handles;
  bool committed = true;  ///< false when a full-mode commitment session failed
};

struct ReservationOptions {
  CommitMode mode = CommitMode::fast;
  SessionConfig session{};  ///< used per relay in full mode
};

/// Commits the source to `chosen` at every relay after the source and
/// releases the provisional load of every other candidate path. Throws
/// std::invalid_argument when chosen is not a candidate and ProtocolError
/// when the traffic already holds a reservation.
ReservationReport reserve_circuit(const NetworkGraph& graph, const TrafficSpec& traffic, const PathChoice& chosen,
                                  const Discovery& discovery, ReservationLedger& ledger,
                                  const ReservationOptions& options = {});

}  // namespace qbc::routing
