#pragma once

#include <string>

#include "json.hpp"

#include "qbc/config.hpp"
#include "qbc/routing.hpp"
#include "qbc/session.hpp"

namespace qbc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kReject = 2,
  kNoCommitFrame = 3,
  kUnreachable = 4,
  kUsage = 64,
};

/// Shortest text that reads back to the same double.
std::string format_double(double v);

/// Header: q_tol,p,r,r_prime. Rows ordered by q_tol, then p.
std::string rates_csv(const config::RatesConfig& config);

/// Header: p,n_tol,e_tol,variant,eps_b. Rows ordered by p, n_tol, e_tol, variant.
std::string binding_csv(const config::BindingConfig& config);

struct SimulateResult {
  nlohmann::ordered_json transcript;
  int exit_code;
};

SimulateResult simulate(const SessionConfig& config);

enum class RouteMode { datagram, vc };

struct RouteOptions {
  RouteMode mode = RouteMode::datagram;
  double alpha = routing::kDefaultAlpha;
  routing::ReservationOptions reservation{};
};

struct RouteResult {
  nlohmann::ordered_json report;
  int exit_code;
};

/// Discovery and selection; vc mode also reserves the chosen circuit.
RouteResult route(const config::NetworkDocument& network, const RouteOptions& options);

}  // namespace qbc::cli
