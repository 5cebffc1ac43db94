#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sympos/cli.hpp"
#include "sympos/json_io.hpp"

using namespace sympos;

namespace {

Json model_weight_json() {
  return Json{{"A", Json::array({Json::array({Json::array({0.0, 0.0})})})},
              {"L", Json::array({Json::array({Json::array({1.0, 0.0})})})}};
}

Json scalar_q_json(Complex lambda) {
  auto mat = [](Complex v) {
    return Json::array({Json::array({Json::array({v.real(), v.imag()})})});
  };
  return Json{{"Q1", mat({0, 0})}, {"Q2", mat(0.5 * lambda)}, {"Q3", mat({0, 0})}};
}

Json toeplitz_instance(Complex lambda) {
  return Json{{"kind", "toeplitz"},
              {"payload", Json{{"Phi0", model_weight_json()}, {"q", scalar_q_json(lambda)}}}};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

int run_args(std::vector<std::string> args) {
  std::vector<const char*> argv{"sympos"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("canonical serialization round-trips byte-identically") {
  const Json report = run_instance(toeplitz_instance(Complex(-1, 0)), CliOptions{});
  const std::string first = canonical_dump(report, 2);
  const Json reparsed = Json::parse(first);
  CHECK(canonical_dump(reparsed, 2) == first);
  CHECK(reparsed == report);
}

TEST_CASE("reports are deterministic for identical instance and seed") {
  const std::string a = canonical_dump(run_instance(toeplitz_instance(Complex(-1, 0)), {}), 2);
  const std::string b = canonical_dump(run_instance(toeplitz_instance(Complex(-1, 0)), {}), 2);
  CHECK(a == b);
}

TEST_CASE("toeplitz element: lambda = -1 report content") {
  const Json rep = run_instance(toeplitz_instance(Complex(-1, 0)), CliOptions{});
  const Json& e = rep["results"][0];
  CHECK(e["bounded"]["status"] == "StrictlyPositive");
  CHECK(e["bounded"]["route_agreement"] == true);
  CHECK(e["trace_class"] == true);
  CHECK(std::abs(e["trace"][0].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(e["trace"][1].get<double>()) < 1e-12);
  CHECK(rep["schema_version"] == "1");
  CHECK(rep["timing_ms"] == 0);
}

TEST_CASE("map element: identity instance is degenerate with agreeing routes") {
  Json instance{{"kind", "map"},
                {"payload",
                 Json{{"M", to_json(CMatrix(CMatrix::Identity(2, 2)))},
                      {"Phi1", model_weight_json()},
                      {"Phi2", model_weight_json()}}}};
  const Json rep = run_instance(instance, CliOptions{});
  const Json& e = rep["results"][0];
  CHECK(e["positivity"]["status"] == "DegeneratePositive");
  CHECK(e["positivity"]["route_agreement"] == true);
  CHECK(e["tri_equivalence"]["agree"] == true);
}

TEST_CASE("weight element: negative Levi direction is a verdict, not an error") {
  Json weight{{"A", Json::array({Json::array({Json::array({0.0, 0.0})})})},
              {"L", Json::array({Json::array({Json::array({-1.0, 0.0})})})}};
  Json instance{{"kind", "weight"}, {"payload", Json{{"Phi", weight}}}};
  const Json rep = run_instance(instance, CliOptions{});
  CHECK(rep["results"][0]["strictly_plurisubharmonic"] == false);
}

TEST_CASE("sweep expansion produces one result per patch") {
  Json instance = toeplitz_instance(Complex(-1, 0));
  instance["sweep"] = Json::array({Json{{"q", scalar_q_json(Complex(-1, 0))}},
                                   Json{{"q", scalar_q_json(Complex(0.4, 0))}}});
  const Json rep = run_instance(instance, CliOptions{});
  REQUIRE(rep["results"].size() == 2);
  CHECK(rep["results"][0]["bounded"]["status"] == "StrictlyPositive");
  CHECK(rep["results"][1]["bounded"]["status"] == "NotPositive");
}

TEST_CASE("instance validation failures") {
  CHECK_THROWS_AS(run_instance(Json{{"kind", "toeplitz"}}, CliOptions{}), InvalidInstance);
  CHECK_THROWS_AS(parse_complex(Json::array({1.0})), InvalidInstance);
  CHECK_THROWS_AS(
      parse_complex(Json::array({std::numeric_limits<double>::infinity(), 0.0})),
      InvalidInstance);
  Json bad = toeplitz_instance(Complex(-1, 0));
  bad["payload"]["q"]["Q2"] = Json::array({Json::array({Json::array({0.1, 0.0})}),
                                           Json::array({Json::array({0.1, 0.0})})});
  CHECK_THROWS_AS(run_instance(bad, CliOptions{}), InvalidInstance);
}

TEST_CASE("cli entry point: exit codes and report files") {
  const auto good =
      write_temp("sympos_ok.json", canonical_dump(toeplitz_instance(Complex(-1, 0))));
  const auto report_path = std::filesystem::temp_directory_path() / "sympos_report.json";
  CHECK(run_args({"toeplitz", good.string(), "--format", "json", "-o",
                  report_path.string()}) == kExitOk);
  std::ifstream in(report_path);
  REQUIRE(in.good());
  const Json written = Json::parse(in);
  CHECK(written["results"][0]["trace_class"] == true);

  const auto broken = write_temp("sympos_broken.json", "{not json");
  CHECK(run_args({"toeplitz", broken.string()}) == kExitInvalid);

  CHECK(run_args({"toeplitz", "/nonexistent/instance.json"}) == kExitInvalid);

  // Kind/subcommand mismatch is invalid input.
  CHECK(run_args({"map", good.string()}) == kExitInvalid);

  // A divergent oracle integral is a numerical failure.
  Json div{{"kind", "validate"}, {"payload", Json{{"q", scalar_q_json(Complex(3.0, 0))}}}};
  const auto divp = write_temp("sympos_div.json", canonical_dump(div));
  CHECK(run_args({"validate", divp.string()}) == kExitNumerical);

  std::filesystem::remove(good);
  std::filesystem::remove(broken);
  std::filesystem::remove(divp);
  std::filesystem::remove(report_path);
}

TEST_CASE("validate element: comparison against a prior toeplitz report") {
  const Json prior = run_instance(toeplitz_instance(Complex(-1, 0)), CliOptions{});
  const auto prior_path = write_temp("sympos_prior.json", canonical_dump(prior, 2));

  CliOptions opts;
  opts.truncation = 40;
  Json instance{{"kind", "validate"},
                {"payload", Json{{"q", scalar_q_json(Complex(-1, 0))},
                                 {"compare_report", prior_path.string()}}}};
  const Json rep = run_instance(instance, opts);
  const Json& cmp = rep["results"][0]["comparison"];
  CHECK(cmp["symbolic_status"] == "StrictlyPositive");
  CHECK(cmp["trace_abs_difference"].get<double>() < 1e-7);
  CHECK(cmp["unitary_flag_consistent"] == true);
  std::filesystem::remove(prior_path);
}

TEST_CASE("text rendering mentions the key verdicts") {
  const Json rep = run_instance(toeplitz_instance(Complex(-1, 0)), CliOptions{});
  const std::string text = render_text(rep);
  CHECK(text.find("toeplitz") != std::string::npos);
  CHECK(text.find("StrictlyPositive") != std::string::npos);
  CHECK(text.find("trace class: yes") != std::string::npos);
}
