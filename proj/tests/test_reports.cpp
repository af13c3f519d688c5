#include <doctest.h>

#include <fstream>
#include <thread>

#include "vxa/catalog.hpp"
#include "vxa/report_json.hpp"

using namespace vxa;
using nlohmann::json;

namespace {
json load_schema() {
  std::ifstream f(std::string(VXA_DATA_DIR) + "/report_schema.json");
  REQUIRE(f.good());
  return json::parse(f);
}
}  // namespace

TEST_CASE("verification reports validate against the shipped schema") {
  json schema = load_schema();
  DecompositionReport dr = verify_decomposition(1, 6);
  CHECK(validate_against_schema(to_json(dr), schema["decomposition_report"]) == "");
  CorollaryReport cr = verify_corollary(1, 0, 6);
  CHECK(validate_against_schema(to_json(cr), schema["corollary_report"]) == "");
  // a mutilated report must fail validation
  json broken = to_json(dr);
  broken.erase("matched");
  CHECK(validate_against_schema(broken, schema["decomposition_report"]) != "");
  json wrong_type = to_json(cr);
  wrong_type["s"] = "zero";
  CHECK(validate_against_schema(wrong_type, schema["corollary_report"]) != "");
}

TEST_CASE("acceptance items serialize to the documented report shape") {
  json schema = load_schema();
  json arr = json::array();
  arr.push_back({{"id", "1"},
                 {"name", "sample"},
                 {"pass", true},
                 {"expected_fail", false},
                 {"seconds", 0.25},
                 {"detail", ""}});
  CHECK(validate_against_schema(arr, schema["acceptance_report"]) == "");
  arr.push_back({{"id", "2"}, {"name", "broken"}});
  CHECK(validate_against_schema(arr, schema["acceptance_report"]) != "");
}

TEST_CASE("engine products are safe under concurrent use") {
  Algebra bp = bp_algebra();
  Engine eng(bp);
  FieldExpr gp = eng.gen_field("G+"), gm = eng.gen_field("G-");
  FieldExpr expect = eng.nth(eng.wick(gp, gm), eng.wick(gm, gp), 1);
  std::vector<std::thread> workers;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t)
    workers.emplace_back([&, t] {
      for (int i = 0; i < 20; ++i) {
        FieldExpr r = eng.nth(eng.wick(gp, gm), eng.wick(gm, gp), 1);
        if (!(r == expect)) return;
      }
      ok[t] = 1;
    });
  for (auto& w : workers) w.join();
  for (int t = 0; t < 8; ++t) CHECK(ok[t] == 1);
}
