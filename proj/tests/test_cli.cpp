#include "doctest.h"

#include "chamber/cli.hpp"
#include "chamber/dvr_toric.hpp"
#include "chamber/errors.hpp"
#include "chamber/io.hpp"
#include "chamber/root_data.hpp"
#include "fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace chamber;
using namespace chamber::fixtures;
using io::json;

namespace {

struct Run {
  int code;
  json report;
  std::string err;
};

Run run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  json report;
  if (!out.str().empty() && out.str().front() == '{') report = json::parse(out.str());
  return {code, report, err.str()};
}

std::string write_temp(const std::string &name, const std::string &text) {
  const auto dir = std::filesystem::temp_directory_path() / "chamber_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string write_fan(const std::string &name, const Fan &f) {
  return write_temp(name, io::encode_fan(f).dump());
}

bool structurally_equal(const Fan &a, const Fan &b) {
  return a.rank() == b.rank() && a.rays() == b.rays() && a.cones() == b.cones();
}

} // namespace

TEST_CASE("integers beyond 53 bits are written as strings") {
  CHECK(io::encode_integer(Integer(42)) == json(42));
  CHECK(io::encode_integer(Integer(-7)) == json(-7));
  const Integer edge = (Integer(1) << 53) - 1;
  CHECK(io::encode_integer(edge).is_number());
  CHECK(io::encode_integer(edge + 1).is_string());
  CHECK(io::encode_integer(-(edge + 1)).is_string());
  const Integer big("-123456789012345678901234567890");
  CHECK(io::encode_integer(big) == json("-123456789012345678901234567890"));
  CHECK(io::decode_integer(io::encode_integer(big)) == big);
  CHECK(io::decode_integer(json(18446744073709551615ULL)) == Integer("18446744073709551615"));
  CHECK_THROWS_AS(io::decode_integer(json(1.5)), ParseError);
  CHECK_THROWS_AS(io::decode_integer(json("12a")), ParseError);
  CHECK(io::encode_rational(Rational(3, 6)) == json("1/2"));
  CHECK(io::encode_rational(Rational(4, 2)) == json(2));
}

TEST_CASE("FanDocument round trip over the corpus") {
  std::vector<Fan> corpus{projective_line(), projective_plane(), p1_times_p1(), twisted_prism(),
                          untwisted_prism(), cube_fan(), standard_orthant(3),
                          single_cone(2, {{2, 1}, {1, 2}})};
  for (const char *name : {"A1", "A2", "B2", "G2"})
    corpus.push_back(weyl_fan(build_root_datum(cartan_preset(name), LatticeForm::Adjoint)));
  const auto rank2 = complete_rank2_fans(1);
  for (std::size_t i = 0; i < rank2.size(); i += 5) corpus.push_back(rank2[i]);
  const LatticeVector huge{1, 0};
  LatticeVector far(2);
  far[0] = Integer("1000000000000000000000");
  far[1] = 1;
  corpus.push_back(single_cone(2, {huge, far}));

  for (const auto &f : corpus) {
    const json doc = io::encode_fan(f);
    CHECK(doc["schema_version"] == "1");
    const Fan back = io::decode_fan(io::parse(doc.dump()));
    CHECK(structurally_equal(back, f));
    CHECK(io::encode_fan(back).dump() == doc.dump());
  }
}

TEST_CASE("FanDocument decoding rejects bad input") {
  CHECK_THROWS_AS(io::parse("{bad"), ParseError);
  CHECK_THROWS_AS(io::decode_fan(json::parse(R"({"rank":1,"rays":[[1]],"cones":[[0]]})")),
                  ParseError);
  CHECK_THROWS_AS(
      io::decode_fan(json::parse(R"({"schema_version":"2","rank":1,"rays":[[1]],"cones":[[0]]})")),
      ParseError);
  CHECK_THROWS_AS(
      io::decode_fan(json::parse(R"({"schema_version":"1","rank":1,"rays":[[1]],"cones":[[3]]})")),
      ParseError);
  CHECK_THROWS_AS(
      io::decode_fan(json::parse(R"({"schema_version":"1","rank":2,"rays":[[1]],"cones":[]})")),
      ParseError);
  // overlapping cones
  CHECK_THROWS_AS(io::decode_fan(json::parse(
                      R"({"schema_version":"1","rank":2,"rays":[[1,0],[1,2],[1,1],[0,1]],)"
                      R"("cones":[[0,1],[2,3]]})")),
                  InvalidFan);
  // faces are added on decode
  const Fan f = io::decode_fan(
      json::parse(R"({"schema_version":"1","rank":2,"rays":[[1,0],[0,1]],"cones":[[0,1]]})"));
  CHECK(f.cones().size() == 4);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(io::fnv1a64("") == "cbf29ce484222325");
  CHECK(io::fnv1a64("a") == "af63dc4c8601ec8c");
  CHECK(io::fnv1a64("foobar") == "85944171f73967e8");
}

TEST_CASE("fan check") {
  const auto p1 = write_fan("p1.json", projective_line());
  auto r = run({"fan", "check", p1, "--complete", "--smooth", "--projective"});
  CHECK(r.code == 0);
  CHECK(r.report["verdicts"]["projective"] == true);
  CHECK(r.report["witnesses"]["projective"]["verified"] == true);

  const RootDatum sc = build_root_datum(cartan_preset("A2"), LatticeForm::SimplyConnected);
  const auto chamber = write_fan("sc_a2.json", chamber_fan(sc));
  r = run({"fan", "check", chamber, "--smooth"});
  CHECK(r.code == 1);
  CHECK(r.report["witnesses"]["smooth"]["index"] == 3);

  r = run({"fan", "check", write_temp("bad.json", "{\"schema_version\": ")});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "ParseError");
  CHECK(run({"fan", "check", "/nonexistent/fan.json"}).code == 2);

  const auto prism = write_fan("prism.json", twisted_prism());
  r = run({"fan", "check", prism});
  CHECK(r.code == 1);
  CHECK(r.report["verdicts"]["complete"] == true);
  CHECK(r.report["verdicts"]["projective"] == false);

  const auto group = write_temp("neg.json", R"({"schema_version":"1","rank":1,"generators":[[[-1]]]})");
  CHECK(run({"fan", "check", p1, "--stable", group}).code == 0);
  const auto half = write_fan("half.json", single_cone(1, {LatticeVector{1}}));
  r = run({"fan", "check", half, "--stable", group});
  CHECK(r.code == 1);
  CHECK(r.report["witnesses"]["stable"]["moved_cone"].is_array());
  r = run({"fan", "check", half, "--complete"});
  CHECK(r.code == 1);

  const auto five = write_temp(
      "rank5.json", R"({"schema_version":"1","rank":5,"rays":[[1,0,0,0,0]],"cones":[[0]]})");
  r = run({"fan", "check", five});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "UsageError");
}

TEST_CASE("fan saturate") {
  const auto half = write_fan("half.json", single_cone(1, {LatticeVector{1}}));
  const auto group = write_temp("neg.json", R"({"schema_version":"1","rank":1,"generators":[[[-1]]]})");
  auto r = run({"fan", "saturate", half, "--group", group});
  CHECK(r.code == 0);
  CHECK(same_fan(io::decode_fan(r.report["result"]["fan"]), projective_line()));

  const auto cone = write_fan("overlap.json", single_cone(2, {{2, 1}, {-1, 1}}));
  const auto swap =
      write_temp("swap.json", R"({"schema_version":"1","rank":2,"generators":[[[0,1],[1,0]]]})");
  r = run({"fan", "saturate", cone, "--group", swap});
  CHECK(r.code == 1);
  CHECK(r.report["witnesses"]["saturated"]["reason"] == "OverlapError");

  CHECK(run({"fan", "saturate", half, "--group", swap}).code == 2);
  const auto not_unimodular =
      write_temp("two.json", R"({"schema_version":"1","rank":1,"generators":[[[2]]]})");
  CHECK(run({"fan", "saturate", half, "--group", not_unimodular}).code == 2);
}

TEST_CASE("refine") {
  auto r = run({"refine", "--preset", "A2", "--form", "sc"});
  CHECK(r.code == 0);
  const Fan sigma = io::decode_fan(r.report["result"]["sigma"]);
  const Fan sat = io::decode_fan(r.report["result"]["saturated"]);
  CHECK(is_smooth(sat).smooth);
  CHECK(sigma.rank() == 2);
  for (const auto &[k, v] : r.report["verdicts"].items()) CHECK_MESSAGE(v == true, k);

  r = run({"refine", "--preset", "A1"});
  CHECK(r.code == 0);
  const Fan a1 = io::decode_fan(r.report["result"]["sigma"]);
  CHECK(a1.rays().size() == 1);
  CHECK(r.report["witnesses"]["trace"]["steps"].empty());

  const auto sc = write_fan("sc_cone.json", single_cone(2, {{2, 1}, {1, 2}}));
  r = run({"refine", "--fan", sc, "--budget", "0"});
  CHECK(r.code == 1);
  CHECK(r.report["verdicts"]["within_budget"] == false);
  r = run({"refine", "--fan", sc});
  CHECK(r.code == 0);
  CHECK(r.report["verdicts"]["refines"] == true);

  const auto cartan = write_temp("g2.json", R"({"schema_version":"1","cartan":[[2,-1],[-3,2]]})");
  CHECK(run({"refine", "--cartan", cartan}).code == 0);
  const auto affine = write_temp("aff.json", R"({"schema_version":"1","cartan":[[2,-2],[-2,2]]})");
  r = run({"refine", "--cartan", affine});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "NotFiniteType");
  CHECK(run({"refine", "--preset", "E8"}).code == 2);
  CHECK(run({"refine", "--preset", "A2", "--form", "simply"}).code == 2);
  CHECK(run({"refine"}).code == 2);
}

TEST_CASE("rootdatum verbs") {
  auto r = run({"rootdatum", "weylfan", "--preset", "B2"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["maximal_cones"] == 8);
  CHECK(r.report["result"]["weyl_group_order"] == 8);
  r = run({"rootdatum", "strata", "--preset", "A3"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["strata"].size() == 8);
  CHECK(r.report["result"]["divisors"].size() == 3);
  CHECK(run({"rootdatum", "strata", "--preset", "A2", "--form", "sc"}).code == 2);
}

TEST_CASE("monoid") {
  auto r = run({"monoid", "--generators", "2;3", "--saturate"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["saturated_generators"] == json::parse("[[1]]"));
  r = run({"monoid", "--generators", "0,1;2,1", "--saturate"});
  CHECK(r.report["result"]["added"] == json::parse("[[1,1]]"));
  CHECK(r.report["witnesses"]["certificates"][0]["multiple"] == 2);
  r = run({"monoid", "--generators", "1", "--saturate"});
  CHECK(r.report["verdicts"]["saturated"] == true);

  const auto doc = write_temp("gens.json", R"({"schema_version":"1","rank":2,"generators":[[1,0],[1,2]]})");
  r = run({"monoid", doc, "--hilbert"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["hilbert_basis"] == json::parse("[[1,0],[1,1],[1,2]]"));
  r = run({"monoid", doc, "--fiber-checks"});
  CHECK(r.code == 1);
  CHECK(r.report["verdicts"]["saturated"] == false);

  r = run({"monoid", "--generators", "1,0;-1,0", "--hilbert"});
  CHECK(r.code == 1);
  CHECK(r.report["witnesses"]["pointed"]["reason"] == "NotPointed");
  CHECK(run({"monoid", "--generators", "1,0;-1", "--hilbert"}).code == 2);
  CHECK(run({"monoid", "--generators", "1,0", "--hilbert", "--saturate"}).code == 2);
  CHECK(run({"monoid", "--generators", "1,x", "--hilbert"}).code == 2);
}

TEST_CASE("dvr analyze") {
  const auto vertical = write_fan("vertical.json", single_cone(2, {{0, 1}}));
  auto r = run({"dvr", "analyze", vertical});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["special_fiber_components"].size() == 1);
  CHECK(r.report["verdicts"]["constant_family"] == true);

  const auto pulled = write_fan("pullback.json", pullback(projective_line()).fan());
  r = run({"dvr", "analyze", pulled, "--matrix", "1"});
  CHECK(r.code == 2); // the identity is not a nontrivial unipotent
  r = run({"dvr", "analyze", pulled});
  CHECK(r.code == 0);
  CHECK(r.report["verdicts"]["constant_family"] == true);

  const auto negative = write_fan("neg_height.json", single_cone(2, {{1, -1}}));
  CHECK(run({"dvr", "analyze", negative}).code == 2);
}

TEST_CASE("counterexample") {
  auto r = run({"counterexample", "--ray-bound", "1"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["family_size"] == complete_rank2_fans(1).size());
  CHECK(r.report["result"]["orbit"].size() == 101);
  CHECK(r.report["result"]["orbit"][100] == json::parse("[100,1]"));
  CHECK(r.report["witnesses"]["candidates"].empty());

  r = run({"counterexample", "--ray-bound", "1", "--details", "--orbit-length", "3"});
  CHECK(r.report["witnesses"]["candidates"].size() == complete_rank2_fans(1).size());

  CHECK(run({"counterexample", "--matrix", "1 0 0 1"}).code == 2);
  CHECK(run({"counterexample", "--matrix", "2 0 0 1"}).code == 2);
  CHECK(run({"counterexample", "--matrix", "1 1 1"}).code == 2);
  CHECK(run({"counterexample", "--ray-bound", "3"}).code == 2);
}

TEST_CASE("cox") {
  auto r = run({"cox", write_fan("p1.json", projective_line())});
  CHECK(r.code == 0);
  CHECK(r.report["verdicts"]["verified"] == true);
  CHECK(r.report["witnesses"]["transcript"].size() == 4);
  r = run({"cox", write_fan("p1p1.json", p1_times_p1())});
  CHECK(r.code == 0);
  CHECK(r.report["witnesses"]["transcript"].size() == 16);

  r = run({"cox", write_fan("prism.json", twisted_prism()), "--box", "1"});
  CHECK(r.code == 1);
  CHECK(r.report["witnesses"]["search"]["reason"] == "SearchExhausted");

  const auto many = complete_rank2_fans(2);
  const auto big = std::find_if(many.begin(), many.end(),
                                [](const Fan &f) { return f.rays().size() > 12; });
  REQUIRE(big != many.end());
  r = run({"cox", write_fan("big.json", *big)});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "UsageError");
}

TEST_CASE("reports are deterministic and timing is opt-in") {
  const auto p2 = write_fan("p2.json", projective_plane());
  std::ostringstream a, b, e;
  cli::run({"cox", p2}, a, e);
  cli::run({"cox", p2}, b, e);
  CHECK(a.str() == b.str());
  CHECK(json::parse(a.str()).count("timing") == 0);
  const auto timed = run({"cox", p2, "--timing"});
  CHECK(timed.report.count("timing") == 1);
  CHECK(timed.report["inputs_digest"] == json::parse(a.str())["inputs_digest"]);

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  std::ostringstream help, herr;
  CHECK(cli::run({"--help"}, help, herr) == 0);
  CHECK(help.str().find("counterexample") != std::string::npos);
}
