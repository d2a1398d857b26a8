#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qbc/math_core.hpp"
#include "qbc/routing.hpp"
#include "qbc/session.hpp"

namespace qbc::config {

/// A configuration document is malformed; field() names the offending key
/// as a dotted path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

SessionConfig parse_session(const nlohmann::json& doc);
nlohmann::ordered_json to_json(const SessionConfig& config);

struct NetworkDocument {
  routing::NetworkGraph graph;
  routing::TrafficSpec traffic;
};

/// {nodes: [...], edges: [{a, b, buffer_bits}], traffic: {src, dst, n_packets, packet_len}}
NetworkDocument parse_network(const nlohmann::json& doc);

/// A sweep axis: either an explicit list or {start, stop, count} (inclusive,
/// evenly spaced). Values come back sorted ascending.
std::vector<double> parse_grid(const nlohmann::json& node, const std::string& field);

struct RatesConfig {
  std::uint64_t n_quarter = 100;
  std::vector<double> q_tol{0.0};
  std::vector<double> p{0.0};
};

RatesConfig parse_rates(const nlohmann::json& doc);

struct BindingConfig {
  std::vector<double> p{0.1};
  std::vector<std::uint64_t> n_tol{10, 20, 40, 80, 160, 320};
  std::vector<double> e_tol{0.05};
  std::vector<math::BindingVariant> variants{math::BindingVariant::literal, math::BindingVariant::hoeffding};
  std::uint64_t delta_grid = 10000;
};

BindingConfig parse_binding(const nlohmann::json& doc);

}  // namespace qbc::config
