////////////////////////////////////////////////////////////////////////////////
// Config loading and artifact serialization.
//
// The shipped configs/ directory and the compiled-in example list must agree
// exactly: the acceptance gate runs from the compiled list (it takes no file
// arguments), while the command line runs from the JSON files, so any drift
// between the two would let the gate certify hypersurfaces the CLI never
// touches.  The sync test locks them together.
////////////////////////////////////////////////////////////////////////////////

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <ffmoduli/acceptance.hpp>
#include <ffmoduli/json_io.hpp>

namespace fs = std::filesystem;
using namespace ffmoduli;
using Catch::Matchers::ContainsSubstring;

namespace {

// ctest runs from the build directory, a direct run from the repo root,
// and an out-of-tree build from anywhere; find the shipped configs in all
// three cases.
std::string configs_dir() {
  for (const char* cand : {"configs", "../configs", "../../configs"}) {
    if (fs::is_directory(cand)) return cand;
  }
#ifdef FFMODULI_SOURCE_DIR
  const std::string fixed = std::string(FFMODULI_SOURCE_DIR) + "/configs";
  if (fs::is_directory(fixed)) return fixed;
#endif
  FAIL("configs directory not found relative to the working directory");
  return {};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << body;
  return p.string();
}

}  // namespace

TEST_CASE("shipped configs mirror the compiled-in example list") {
  const std::string dir = configs_dir();
  const std::vector<ConfiguredExample> examples = configured_examples();
  REQUIRE(examples.size() == 5);

  for (const ConfiguredExample& ex : examples) {
    INFO("example " << ex.name);
    const LoadedConfig lc = load_config(dir + "/" + ex.name + ".json");
    CHECK(lc.p == ex.p);
    CHECK(lc.k == 1);
    CHECK(lc.f.n() == ex.f.n());
    CHECK(lc.f.d() == ex.f.d());
    CHECK(lc.f.terms() == ex.f.terms());
  }

  // No stray config without a compiled-in counterpart.
  std::size_t json_files = 0;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      json_files += 1;
  CHECK(json_files == examples.size());
}

TEST_CASE("config loading rejects malformed inputs") {
  REQUIRE_THROWS_WITH(load_config("/nonexistent/nowhere.json"),
                      ContainsSubstring("cannot open"));

  REQUIRE_THROWS_WITH(
      load_config(write_temp("ffm_bad_syntax.json", "{ not json")),
      ContainsSubstring("not valid JSON"));

  REQUIRE_THROWS_WITH(
      load_config(write_temp("ffm_no_d.json",
                             R"({"p":3,"n":2,"monomials":[]})")),
      ContainsSubstring("lacks field 'd'"));

  REQUIRE_THROWS_WITH(
      load_config(write_temp(
          "ffm_composite_p.json",
          R"({"p":6,"n":2,"d":2,"monomials":[{"exps":[1,1],"c":1}]})")),
      ContainsSubstring("is not prime"));

  REQUIRE_THROWS_WITH(
      load_config(write_temp("ffm_empty_monomials.json",
                             R"({"p":3,"n":2,"d":2,"monomials":[]})")),
      ContainsSubstring("nonempty array"));

  REQUIRE_THROWS_WITH(
      load_config(write_temp(
          "ffm_missing_c.json",
          R"({"p":3,"n":2,"d":2,"monomials":[{"exps":[1,1]}]})")),
      ContainsSubstring("needs 'exps' and 'c'"));

  REQUIRE_THROWS_WITH(
      load_config(write_temp(
          "ffm_array_coeff.json",
          R"({"p":3,"n":2,"d":2,"monomials":[{"exps":[1,1],"c":[1,0]}]})")),
      ContainsSubstring("integer coefficient"));

  // Structural validation is delegated to the form itself.
  REQUIRE_THROWS_WITH(
      load_config(write_temp(
          "ffm_short_exps.json",
          R"({"p":3,"n":2,"d":2,"monomials":[{"exps":[2],"c":1}]})")),
      ContainsSubstring("wrong length"));

  REQUIRE_THROWS_WITH(
      load_config(write_temp(
          "ffm_wrong_degree.json",
          R"({"p":3,"n":2,"d":2,"monomials":[{"exps":[1,0],"c":1}]})")),
      ContainsSubstring("!= form degree"));

  REQUIRE_THROWS_WITH(
      load_config(write_temp(
          "ffm_zero_form.json",
          R"({"p":3,"n":2,"d":2,"monomials":[
                {"exps":[1,1],"c":1},{"exps":[1,1],"c":-1}]})")),
      ContainsSubstring("identically zero"));
}

TEST_CASE("config loading accepts extension fields and merges monomials") {
  const LoadedConfig lc = load_config(write_temp(
      "ffm_ext_field.json",
      R"({"p":2,"k":2,"n":2,"d":2,"monomials":[
            {"exps":[1,1],"c":1},{"exps":[1,1],"c":2},{"exps":[2,0],"c":3}]})"));
  CHECK(lc.p == 2);
  CHECK(lc.k == 2);
  const Field F = field_of(lc);
  CHECK(F.q() == 4);
  // 1 + 2 = 3 on the mixed term; coefficients stay integers until reduced.
  REQUIRE(lc.f.terms().size() == 2);
  const HyperForm expect(2, 2, {{{1, 1}, 3}, {{2, 0}, 3}});
  CHECK(lc.f.terms() == expect.terms());
}

TEST_CASE("artifact envelope names schema, version, command, and field") {
  const Json j = output_envelope("demo-command");
  CHECK(j["schema"] == kSchema);
  CHECK(j["version"] == kVersion);
  CHECK(j["command"] == "demo-command");
  REQUIRE(j.contains("timestamp"));
  const std::string ts = j["timestamp"].get<std::string>();
  CHECK(ts.size() == 20);
  CHECK(ts.back() == 'Z');
  CHECK(ts[4] == '-');
  CHECK(ts[10] == 'T');

  Json f;
  embed_field(f, Field::extension(3, 2));
  CHECK(f["field"]["p"] == 3);
  CHECK(f["field"]["k"] == 2);
  CHECK(f["field"]["q"] == 9);
}

TEST_CASE("scalar serializers render exact values") {
  CHECK(json_bigint(BigInt("123456789012345678901234567890")) ==
        "123456789012345678901234567890");

  const Json r = json_bigrat(BigRat(53, 4));
  CHECK(r["num"] == "53");
  CHECK(r["den"] == "4");
  CHECK(r["approx"].get<double>() == 13.25);

  CHECK(json_ord(Ord::neg_inf()) == Json("-inf"));
  CHECK(json_ord(Ord(3)) == Json(3));

  const Field F(5);
  const Poly g = {F.from_int(2), F.zero(), F.one()};  // 2 + u^2
  const Json pj = json_poly(F, g);
  REQUIRE(pj.is_array());
  REQUIRE(pj.size() == 3);
  CHECK(pj[0] == 2);
  CHECK(pj[1] == 0);
  CHECK(pj[2] == 1);
}

TEST_CASE("artifacts round-trip through files byte for byte") {
  const Field F(3);
  Json j = output_envelope("roundtrip");
  j.erase("timestamp");  // the only run-dependent field
  embed_field(j, F);
  j["result"] = {{"N", json_bigint(BigInt(53))},
                 {"ratio", json_bigrat(BigRat(53, 1))}};

  const fs::path p = fs::temp_directory_path() / "ffm_roundtrip.json";
  write_output(j, p.string());

  std::ifstream in(p);
  REQUIRE(in.good());
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(body == j.dump(2) + "\n");
  CHECK(Json::parse(body) == j);

  // Same inputs, same bytes: ordered keys make the artifact reproducible.
  Json j2 = output_envelope("roundtrip");
  j2.erase("timestamp");
  embed_field(j2, F);
  j2["result"] = {{"N", json_bigint(BigInt(53))},
                  {"ratio", json_bigrat(BigRat(53, 1))}};
  CHECK(j2.dump(2) == j.dump(2));

  REQUIRE_THROWS_WITH(write_output(j, "/nonexistent/dir/out.json"),
                      ContainsSubstring("cannot open"));
}
