#include <sstream>

#include "doctest.h"
#include "qbc/cli.hpp"
#include "qbc/config.hpp"

using namespace qbc;
using namespace qbc::config;
using nlohmann::json;

namespace {

std::string failing_field(const json& doc) {
  try {
    parse_session(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("session defaults and overrides") {
  const auto c = parse_session(json::object());
  CHECK(c.n_quarter == 2);
  CHECK(c.codebook_size == 6);
  CHECK(c.policy.n_tol == 2);

  const auto d = parse_session(json::parse(R"({
    "n_quarter": 3, "codebook_size": "20", "channel": {"flip_prob": 0.01},
    "seed": 99, "commit_bit": 1, "unveil_bit": false, "strategy": "claim_other_basis",
    "payload_mode": "compressed", "timing": {"p1": {"latency": 4, "wait": 2}},
    "transcript": {"records": true}
  })"));
  CHECK(d.n_quarter == 3);
  CHECK(d.codebook_size == 20);
  CHECK(d.effective_q_tol() == 0.01);
  CHECK(d.seed == 99);
  CHECK(d.commit_bit);
  CHECK_FALSE(d.effective_unveil_bit());
  CHECK(d.strategy == CheatStrategy::claim_other_basis);
  CHECK(d.payload_mode == PayloadMode::compressed);
  CHECK(d.timing[1].latency == 4);
  CHECK(d.timing[0].latency == 1);
  CHECK(d.detail.records);
}

TEST_CASE("session errors name the field") {
  CHECK(failing_field(json::parse(R"({"n_quarter": 0})")) == "n_quarter");
  CHECK(failing_field(json::parse(R"({"codebook_size": 7})")) == "codebook_size");
  CHECK(failing_field(json::parse(R"({"codebook_size": "12a"})")) == "codebook_size");
  CHECK(failing_field(json::parse(R"({"channel": {"flip_prob": 0.7}})")) == "channel");
  CHECK(failing_field(json::parse(R"({"channel": {"flip": 0.1}})")) == "channel.flip");
  CHECK(failing_field(json::parse(R"({"seed": -1})")) == "seed");
  CHECK(failing_field(json::parse(R"({"commit_bit": 2})")) == "commit_bit");
  CHECK(failing_field(json::parse(R"({"e_tol": 0.5})")) == "e_tol");
  CHECK(failing_field(json::parse(R"({"strategy": "lie"})")) == "strategy");
  CHECK(failing_field(json::parse(R"({"timing": {"p0": {"latency": 1.5}}})")) == "timing.p0.latency");
  CHECK(failing_field(json::parse(R"({"bogus": 1})")) == "bogus");
  CHECK(failing_field(json::parse(R"([1, 2])")) == "<root>");
}

TEST_CASE("session config round trips through JSON") {
  auto c = parse_session(json::parse(R"({"n_quarter": 100, "codebook_size": "90548514656103281165404177077484163874504374132131579822080", "seed": 5, "tamper_p1_bit": 3})"));
  const auto j = to_json(c);
  CHECK(j["codebook_size"] == "90548514656103281165404177077484163874504374132131579822080");
  const auto again = parse_session(json::parse(j.dump()));
  CHECK(again.codebook_size == c.codebook_size);
  CHECK(again.tamper_p1_bit == 3u);
  CHECK(to_json(again).dump() == j.dump());
}

TEST_CASE("network documents") {
  const auto doc = parse_network(json::parse(R"({
    "nodes": ["A", "B", "C"],
    "edges": [{"a": "A", "b": "B", "buffer_bits": 10}, {"a": "B", "b": "C", "buffer_bits": 0}],
    "traffic": {"src": "A", "dst": "C", "n_packets": 2, "packet_len": 8}
  })"));
  CHECK(doc.graph.nodes().size() == 3);
  CHECK(doc.graph.buffer("C", "B") == 0);
  CHECK(doc.traffic.packet_len == 8);

  auto field_of = [](const char* text) {
    try {
      parse_network(json::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string();
  };
  CHECK(field_of(R"({"nodes": [], "edges": [], "traffic": {}})") == "nodes");
  CHECK(field_of(R"({"nodes": ["A"], "edges": [{"a": "A", "b": "A", "buffer_bits": 1}], "traffic": {}})") == "edges[0]");
  CHECK(field_of(R"({"nodes": ["A", "B"], "edges": [], "traffic": {"src": "A", "dst": "Z", "n_packets": 1, "packet_len": 1}})") == "traffic.dst");
  CHECK(field_of(R"({"nodes": ["A", "B"], "edges": [], "traffic": {"src": "A", "dst": "B", "n_packets": 0, "packet_len": 1}})") == "traffic.n_packets");
}

TEST_CASE("grids") {
  CHECK(parse_grid(json(0.5), "x") == std::vector<double>{0.5});
  CHECK(parse_grid(json::parse("[0.3, 0.1, 0.3]"), "x") == std::vector<double>{0.1, 0.3});
  const auto g = parse_grid(json::parse(R"({"start": 0, "stop": 0.06, "count": 7})"), "x");
  REQUIRE(g.size() == 7);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 0.06);
  CHECK_THROWS_AS(parse_grid(json::parse("[]"), "x"), ConfigError);
  CHECK_THROWS_AS(parse_grid(json::parse(R"({"start": 1, "stop": 0, "count": 3})"), "x"), ConfigError);
}

TEST_CASE("rates CSV") {
  RatesConfig single;
  const auto one = lines(cli::rates_csv(single));
  REQUIRE(one.size() == 2);
  CHECK(one[0] == "q_tol,p,r,r_prime");
  CHECK(one[1] == "0,0,1,1");

  const auto c = parse_rates(json::parse(R"({"q_tol": [0.02, 0], "p": [0.001]})"));
  const auto rows = lines(cli::rates_csv(c));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].rfind("0,0.001,1,", 0) == 0);
  CHECK(rows[2] == "0.02,0.001," + cli::format_double(math::final_key_rate(0.02)) + "," +
                       cli::format_double(math::redundant_key_rate(0.02, 0.001, 100)));
  CHECK_THROWS_AS(parse_rates(json::parse(R"({"q_tol": [0.5]})")), ConfigError);
}

TEST_CASE("binding CSV") {
  const auto c = parse_binding(json::parse(R"({"p": [0, 0.1], "n_tol": [20], "variant": "hoeffding", "delta_grid": 100})"));
  const auto rows = lines(cli::binding_csv(c));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "p,n_tol,e_tol,variant,eps_b");
  CHECK(rows[1] == "0,20,0.05,hoeffding,0");
  CHECK(rows[2] == "0.1,20,0.05,hoeffding," +
                       cli::format_double(math::binding_bound({0.1, 20, 0.05, 100, math::BindingVariant::hoeffding})));
  CHECK_THROWS_AS(parse_binding(json::parse(R"({"n_tol": [1, 10]})")), ConfigError);
  CHECK_THROWS_AS(parse_binding(json::parse(R"({"variant": "other"})")), ConfigError);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.0, 1.0, 0.1, 1e-300, 123456.789, -0.28082903267953767}) {
    CHECK(std::stod(cli::format_double(v)) == v);
  }
  CHECK(cli::format_double(0.5) == "0.5");
}

TEST_CASE("simulate and route exit codes") {
  CHECK(cli::simulate(parse_session(json::parse(R"({"frame_budget": 200})"))).exit_code == cli::kSuccess);
  CHECK(cli::simulate(parse_session(json::parse(R"({"frame_budget": 200, "tamper_p1_bit": 0})"))).exit_code ==
        cli::kReject);
  CHECK(cli::simulate(parse_session(json::parse(R"({"frame_budget": 1})"))).exit_code == cli::kNoCommitFrame);

  const auto net = parse_network(json::parse(R"({
    "nodes": ["A", "B", "C", "D", "E"],
    "edges": [{"a": "A", "b": "B", "buffer_bits": 50}, {"a": "B", "b": "D", "buffer_bits": 100},
              {"a": "A", "b": "C", "buffer_bits": 90}, {"a": "C", "b": "D", "buffer_bits": 100}],
    "traffic": {"src": "A", "dst": "D", "n_packets": 10, "packet_len": 10}
  })"));
  const auto dg = cli::route(net, {});
  CHECK(dg.exit_code == cli::kSuccess);
  CHECK(dg.report["chosen"]["nodes"] == json::parse(R"(["A", "C", "D"])"));
  cli::RouteOptions vc;
  vc.mode = cli::RouteMode::vc;
  vc.alpha = 0.0;
  const auto v = cli::route(net, vc);
  CHECK(v.report["chosen"]["nodes"] == dg.report["chosen"]["nodes"]);
  CHECK(v.report.contains("reservation"));

  auto cut = net;
  cut.traffic.destination = "E";
  const auto none = cli::route(cut, {});
  CHECK(none.exit_code == cli::kUnreachable);
  CHECK(none.report["status"] == "unreachable");
}

}  // TEST_SUITE
