// qbc: command-line front end for the BB84-embedded bit commitment toolkit.
//
//   qbc rates    [--config rates.json]   -> CSV q_tol,p,r,r_prime
//   qbc binding  [--config binding.json] -> CSV p,n_tol,e_tol,variant,eps_b
//   qbc simulate --config session.json [--seed S] -> transcript JSON
//   qbc route    --network net.json [--mode datagram|vc] [--alpha A] -> report JSON
//
// Output goes to --out, else $QBC_OUTPUT_DIR/<default name>, else stdout.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qbc/cli.hpp"
#include "qbc/config.hpp"

namespace {

using qbc::cli::ExitCode;

nlohmann::json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qbc::config::ConfigError(path, "cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw qbc::config::ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
}

void emit(const std::string& content, const std::string& out_path, const char* default_name) {
  std::string target = out_path;
  if (target.empty()) {
    if (const char* dir = std::getenv("QBC_OUTPUT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      target = (std::filesystem::path(dir) / default_name).string();
    }
  }
  if (target.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + target);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and calculator for bit commitment embedded in BB84 key distribution"};
  app.require_subcommand(1);
  app.fallthrough();  // global --out and --seed may follow the subcommand

  std::string out_path;
  std::optional<std::uint64_t> seed;
  app.add_option("-o,--out", out_path, "Output file (default: $QBC_OUTPUT_DIR/<name> or stdout)");
  app.add_option("--seed", seed, "Global seed; overrides the config document's seed");

  std::string rates_config;
  auto* rates = app.add_subcommand("rates", "Sweep the final and redundant key rates over (q_tol, p)");
  rates->add_option("-c,--config", rates_config, "Rates document {n_quarter, q_tol, p}")->check(CLI::ExistingFile);

  std::string binding_config;
  auto* binding = app.add_subcommand("binding", "Tabulate the binding bound eps_b over (p, n_tol, e_tol)");
  binding->add_option("-c,--config", binding_config, "Binding document {p, n_tol, e_tol, variant, delta_grid}")
      ->check(CLI::ExistingFile);

  std::string session_config;
  auto* simulate = app.add_subcommand("simulate", "Run one commit/unveil session and write its transcript");
  simulate->add_option("-c,--config", session_config, "Session document")->required()->check(CLI::ExistingFile);

  std::string network_path;
  std::string mode = "datagram";
  double alpha = qbc::routing::kDefaultAlpha;
  std::string commit_mode = "fast";
  std::string route_session;
  auto* route = app.add_subcommand("route", "Discover paths and select a datagram route or virtual circuit");
  route->add_option("-n,--network", network_path, "Network document")->required()->check(CLI::ExistingFile);
  route->add_option("-m,--mode", mode, "datagram or vc")->check(CLI::IsMember({"datagram", "vc"}));
  route->add_option("-a,--alpha", alpha, "Hop penalty for vc scoring")->check(CLI::NonNegativeNumber);
  route->add_option("--commit-mode", commit_mode, "fast (ledger entries) or full (protocol session per relay)")
      ->check(CLI::IsMember({"fast", "full"}));
  route->add_option("--session", route_session, "Session document used in full commit mode")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ExitCode::kUsage;
  }

  try {
    if (*rates) {
      const auto cfg = qbc::config::parse_rates(rates_config.empty() ? nlohmann::json::object()
                                                                     : load_document(rates_config));
      emit(qbc::cli::rates_csv(cfg), out_path, "rates.csv");
      return ExitCode::kSuccess;
    }
    if (*binding) {
      const auto cfg = qbc::config::parse_binding(binding_config.empty() ? nlohmann::json::object()
                                                                         : load_document(binding_config));
      emit(qbc::cli::binding_csv(cfg), out_path, "binding.csv");
      return ExitCode::kSuccess;
    }
    if (*simulate) {
      auto doc = load_document(session_config);
      if (seed && doc.is_object()) doc["seed"] = *seed;
      const auto cfg = qbc::config::parse_session(doc);
      const auto result = qbc::cli::simulate(cfg);
      emit(result.transcript.dump(2) + "\n", out_path, "transcript.json");
      return result.exit_code;
    }
    if (*route) {
      const auto network = qbc::config::parse_network(load_document(network_path));
      qbc::cli::RouteOptions options;
      options.mode = mode == "vc" ? qbc::cli::RouteMode::vc : qbc::cli::RouteMode::datagram;
      options.alpha = alpha;
      options.reservation.mode = commit_mode == "full" ? qbc::routing::CommitMode::full : qbc::routing::CommitMode::fast;
      if (!route_session.empty()) {
        auto doc = load_document(route_session);
        if (seed && doc.is_object()) doc["seed"] = *seed;
        options.reservation.session = qbc::config::parse_session(doc);
      } else if (seed) {
        options.reservation.session.seed = *seed;
      }
      const auto result = qbc::cli::route(network, options);
      emit(result.report.dump(2) + "\n", out_path, "route_report.json");
      return result.exit_code;
    }
  } catch (const qbc::config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ExitCode::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return ExitCode::kUsage;
}
