#include "qbc/cli.hpp"

#include <charconv>
#include <sstream>

#include "qbc/transcript.hpp"

namespace qbc::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string rates_csv(const config::RatesConfig& config) {
  std::ostringstream out;
  out << "q_tol,p,r,r_prime\n";
  for (double q : config.q_tol) {
    const double r = math::final_key_rate(q);
    for (double p : config.p) {
      out << format_double(q) << ',' << format_double(p) << ',' << format_double(r) << ','
          << format_double(math::redundant_key_rate(q, p, config.n_quarter)) << '\n';
    }
  }
  return out.str();
}

std::string binding_csv(const config::BindingConfig& config) {
  std::ostringstream out;
  out << "p,n_tol,e_tol,variant,eps_b\n";
  for (double p : config.p) {
    for (auto n : config.n_tol) {
      for (double e : config.e_tol) {
        for (auto variant : config.variants) {
          const double eps = math::binding_bound({p, n, e, config.delta_grid, variant});
          out << format_double(p) << ',' << n << ',' << format_double(e) << ',' << math::to_string(variant) << ','
              << format_double(eps) << '\n';
        }
      }
    }
  }
  return out.str();
}

SimulateResult simulate(const SessionConfig& config) {
  const auto transcript = run_session(config);
  int code = kSuccess;
  if (transcript.outcome == SessionOutcome::reject) code = kReject;
  if (transcript.outcome == SessionOutcome::no_commit_frame) code = kNoCommitFrame;
  return {to_json(transcript), code};
}

RouteResult route(const config::NetworkDocument& network, const RouteOptions& options) {
  using nlohmann::ordered_json;
  const auto discovery = routing::flood_discover(network.graph, network.traffic);

  ordered_json report;
  report["schema"] = "qbc.route_report/1";
  report["mode"] = options.mode == RouteMode::datagram ? "datagram" : "vc";
  report["alpha"] = options.mode == RouteMode::vc ? ordered_json(options.alpha) : ordered_json();
  report["traffic"] = {{"src", network.traffic.source},
                       {"dst", network.traffic.destination},
                       {"n_packets", network.traffic.n_packets},
                       {"packet_len", network.traffic.packet_len}};
  ordered_json candidates = ordered_json::array();
  for (const auto& p : discovery.paths) candidates.push_back(to_json(p));
  report["candidates"] = std::move(candidates);
  ordered_json loads = ordered_json::array();
  for (const auto& [edge, load] : discovery.edge_load) loads.push_back({{"a", edge.a}, {"b", edge.b}, {"load", load}});
  report["edge_load"] = std::move(loads);

  if (discovery.paths.empty()) {
    report["status"] = "unreachable";
    report["chosen"] = nullptr;
    report["viable"] = false;
    report["reservation"] = nullptr;
    return {std::move(report), kUnreachable};
  }

  int code = kSuccess;
  if (options.mode == RouteMode::datagram) {
    const auto chosen = routing::datagram_select(discovery.paths);
    report["status"] = "ok";
    report["chosen"] = to_json(chosen);
    report["viable"] = chosen.probability() > 0.0;
    report["reservation"] = nullptr;
  } else {
    const auto choice = routing::vc_select(discovery.paths, options.alpha);
    report["chosen"] = to_json(choice.path);
    report["chosen"]["score"] = choice.viable ? ordered_json(choice.path.score) : ordered_json();
    report["viable"] = choice.viable;
    if (!choice.viable) {
      report["status"] = "no_viable_circuit";
      report["reservation"] = nullptr;
    } else {
      routing::ReservationLedger ledger;
      const auto r = routing::reserve_circuit(network.graph, network.traffic, choice.path, discovery, ledger,
                                              options.reservation);
      report["status"] = r.committed ? "ok" : "commitment_failed";
      report["reservation"] = to_json(r);
      if (!r.committed) code = kReject;
    }
  }
  return {std::move(report), code};
}

}  // namespace qbc::cli
