#include <string>
#include <vector>

#include "doctest.h"
#include "opal/dga.hpp"
#include "opal/io_json.hpp"
#include "opal/multicomplex.hpp"
#include "oracles.hpp"

namespace {

std::string data_path(const std::string& name) {
  return std::string(OPAL_DATA_DIR) + "/" + name;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

int count_substr(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("check-koszul certifies the associative preset") {
  oracles::ToolResult r = oracles::run_tool({"check-koszul", "preset:As"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "operad As (ns mode): 1 rewrite rule"));
  CHECK(contains(r.out, "1 critical monomial, confluent, Koszul"));
}

TEST_CASE("check-koszul reports both normal forms of the divergent variant") {
  oracles::ToolResult r =
      oracles::run_tool({"check-koszul", "preset:modified-As"});
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "1 critical monomial, not confluent, NotConcluded"));
  CHECK(contains(r.out, "2 distinct normal forms"));
  CHECK(count_substr(r.out, "  normal form: ") == 2);
}

TEST_CASE("check-koszul certifies the shuffle presets") {
  oracles::ToolResult lie = oracles::run_tool({"check-koszul", "preset:Lie"});
  CHECK(lie.exit_code == 0);
  CHECK(contains(lie.out, "1 critical monomial, confluent, Koszul"));

  oracles::ToolResult com = oracles::run_tool({"check-koszul", "preset:Com"});
  CHECK(com.exit_code == 0);
  CHECK(contains(com.out, "6 critical monomials, confluent, Koszul"));
}

TEST_CASE("check-koszul accepts a presentation file") {
  oracles::ToolResult r =
      oracles::run_tool({"check-koszul", data_path("as.opd")});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "Koszul"));
}

TEST_CASE("check-koszul writes diagrams and a deterministic certificate") {
  std::string dir = oracles::scratch_dir() + "/diagrams";
  std::string cert_a = oracles::scratch_dir() + "/cert_a.json";
  std::string cert_b = oracles::scratch_dir() + "/cert_b.json";
  oracles::ToolResult r = oracles::run_tool(
      {"check-koszul", "preset:As", "--emit-diagram", dir, "--json", cert_a});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "wrote 1 reduction diagram"));
  std::string dot = oracles::slurp(dir + "/critical_1.dot");
  CHECK(contains(dot, "digraph"));

  oracles::ToolResult again =
      oracles::run_tool({"check-koszul", "preset:As", "--json", cert_b});
  CHECK(again.exit_code == 0);
  std::string a = oracles::slurp(cert_a);
  CHECK(a != "");
  CHECK(a == oracles::slurp(cert_b));
  CHECK(contains(a, "koszul-certificate"));
  CHECK(contains(a, "\"verdict\": \"Koszul\""));
}

TEST_CASE("koszul-dual prints the dual presentation") {
  oracles::ToolResult com = oracles::run_tool({"koszul-dual", "preset:Com"});
  CHECK(com.exit_code == 0);
  CHECK(contains(com.out, "Com_dual"));
  CHECK(contains(com.out, "skew"));

  std::string out_file = oracles::scratch_dir() + "/as_dual.opd";
  oracles::ToolResult as =
      oracles::run_tool({"koszul-dual", "preset:As", "--out", out_file});
  CHECK(as.exit_code == 0);
  CHECK(contains(as.out, "m'"));
  CHECK(oracles::slurp(out_file) == as.out);
}

TEST_CASE("pbw enumerates normal-form bases per arity") {
  oracles::ToolResult as =
      oracles::run_tool({"pbw", "preset:As", "--max-arity", "5"});
  CHECK(as.exit_code == 0);
  CHECK(contains(as.out, "normal-form basis for As:"));
  CHECK(contains(as.out, "arity 2: 1 element"));
  CHECK(contains(as.out, "arity 5: 1 element"));
  CHECK(contains(as.out, "m(1,m(2,m(3,4)))"));

  oracles::ToolResult lie =
      oracles::run_tool({"pbw", "preset:Lie", "--max-arity", "4"});
  CHECK(lie.exit_code == 0);
  CHECK(contains(lie.out, "arity 3: 2 elements"));
  CHECK(contains(lie.out, "arity 4: 6 elements"));
}

TEST_CASE("pbw refuses a non-confluent presentation") {
  oracles::ToolResult r =
      oracles::run_tool({"pbw", "preset:modified-As", "--max-arity", "4"});
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "no normal-form basis"));
}

TEST_CASE("reduce rewrites an expression to its normal form") {
  oracles::ToolResult r = oracles::run_tool(
      {"reduce", "preset:As", "--expr", "m(m(m(1,2),3),4)"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "normal form: m(1,m(2,m(3,4)))"));
}

TEST_CASE("transfer reports homology, relations, and the Massey comparison") {
  oracles::ToolResult r = oracles::run_tool(
      {"transfer", data_path("borromean.json"), "--max-arity", "3", "--massey",
       "x", "y", "z", "--linfinity"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "input: 8 basis elements; homology dimension 4"));
  CHECK(contains(r.out, "H_2: h2_0 h2_1 h2_2"));
  CHECK(contains(r.out, "H_7: h7_0"));
  CHECK(contains(r.out, "structure relations: pass through arity 3"));
  CHECK(contains(r.out, "inclusion morphism: pass through arity 3"));
  CHECK(contains(
      r.out, "nonformality witnessed: transferred operation of arity 3"));
  CHECK(contains(r.out, "massey <x, y, z>:"));
  CHECK(contains(r.out, "classical representative: 2*h7_0"));
  CHECK(contains(r.out, "indeterminacy dimension: 0"));
  CHECK(contains(r.out, "transferred mu_3: 2*h7_0"));
  CHECK(contains(r.out, "mu_3 in the coset: yes; aligned (sign +1): yes"));
  CHECK(contains(r.out, "generalized Jacobi: pass through arity 3"));
}

TEST_CASE("transfer verifies shuffle vanishing for a commutative algebra") {
  oracles::ToolResult r = oracles::run_tool(
      {"transfer", data_path("truncated.json"), "--max-arity", "4",
       "--check-shuffles", "--linfinity"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "homology dimension 2"));
  CHECK(contains(r.out, "shuffle vanishing: pass through arity 4"));
  CHECK(contains(r.out, "generalized Jacobi: pass through arity 4"));
  CHECK(contains(r.out,
                 "higher A∞-Massey products vanish (formal through arity 4)"));
}

TEST_CASE("transfer JSON reports are deterministic") {
  std::string a = oracles::scratch_dir() + "/transfer_a.json";
  std::string b = oracles::scratch_dir() + "/transfer_b.json";
  oracles::ToolResult ra = oracles::run_tool(
      {"transfer", data_path("borromean.json"), "--max-arity", "3", "--massey",
       "x", "y", "z", "--json", a});
  oracles::ToolResult rb = oracles::run_tool(
      {"transfer", data_path("borromean.json"), "--max-arity", "3", "--massey",
       "x", "y", "z", "--json", b});
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);
  std::string ta = oracles::slurp(a);
  CHECK(ta != "");
  CHECK(ta == oracles::slurp(b));
  CHECK(contains(ta, "\"schema_version\": 1"));
  CHECK(contains(ta, "sign_convention"));
  CHECK(contains(ta, "\"mu3_in_coset_aligned\": true"));
}

TEST_CASE("multicomplex reports the staircase operator") {
  std::string a = oracles::scratch_dir() + "/mc_a.json";
  std::string b = oracles::scratch_dir() + "/mc_b.json";
  oracles::ToolResult r = oracles::run_tool(
      {"multicomplex", data_path("staircase.json"), "--json", a});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "bicomplex: 4 basis elements; homology dimension 2"));
  CHECK(contains(r.out, "h1_0 (col 0, row 1)"));
  CHECK(contains(r.out, "h2_0 (col 2, row 0)"));
  CHECK(contains(r.out, "d_2:"));
  CHECK(contains(r.out, "h2_0 -> h1_0"));
  CHECK(contains(r.out, "operator relations: pass through n = 4"));

  oracles::ToolResult again = oracles::run_tool(
      {"multicomplex", data_path("staircase.json"), "--json", b});
  CHECK(again.exit_code == 0);
  std::string ta = oracles::slurp(a);
  CHECK(ta != "");
  CHECK(ta == oracles::slurp(b));
  CHECK(contains(ta, "multicomplex-transfer"));
}

TEST_CASE("preset prints the built-in presentations") {
  oracles::ToolResult as = oracles::run_tool({"preset", "As"});
  CHECK(as.exit_code == 0);
  CHECK(contains(as.out, "operad As"));

  oracles::ToolResult lie = oracles::run_tool({"preset", "Lie"});
  CHECK(lie.exit_code == 0);
  CHECK(contains(lie.out, "skew"));

  oracles::ToolResult bad = oracles::run_tool({"preset", "Nope"});
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "error:"));
}

TEST_CASE("usage and input errors exit with code 2") {
  SUBCASE("missing file") {
    oracles::ToolResult r =
        oracles::run_tool({"check-koszul", data_path("no_such_file.opd")});
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "error:"));
    CHECK(contains(r.err, "cannot open"));
  }

  SUBCASE("unknown preset") {
    oracles::ToolResult r =
        oracles::run_tool({"check-koszul", "preset:Frob"});
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "error:"));
  }

  SUBCASE("syntax error in a presentation file") {
    oracles::ToolResult r =
        oracles::run_tool({"check-koszul", data_path("bad_syntax.opd")});
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "error:"));
    CHECK(contains(r.err, "line"));
  }

  SUBCASE("malformed JSON") {
    std::string path = oracles::scratch_dir() + "/broken.json";
    opal::write_text_file(path, "{ this is not json");
    oracles::ToolResult r = oracles::run_tool({"transfer", path});
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "invalid JSON"));
  }

  SUBCASE("unsupported schema version") {
    std::string path = oracles::scratch_dir() + "/future.json";
    opal::write_text_file(path,
                          "{\"schema_version\": 99, \"basis\": [], "
                          "\"differential\": [], \"product\": []}");
    oracles::ToolResult r = oracles::run_tool({"transfer", path});
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "schema_version"));
  }

  SUBCASE("missing required option") {
    oracles::ToolResult r = oracles::run_tool({"pbw", "preset:As"});
    CHECK(r.exit_code == 2);
    CHECK(r.err != "");
  }

  SUBCASE("arity outside the supported range") {
    oracles::ToolResult r =
        oracles::run_tool({"pbw", "preset:As", "--max-arity", "9"});
    CHECK(r.exit_code == 2);
  }

  SUBCASE("unknown subcommand") {
    oracles::ToolResult r = oracles::run_tool({"frobnicate"});
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("data files mirror the built-in fixtures") {
  opal::DgAlgebra parsed =
      opal::parse_dga_json(oracles::slurp(data_path("borromean.json")));
  opal::DgAlgebra fixture = oracles::borromean_dga();
  CHECK(parsed.complex.space == fixture.complex.space);
  CHECK(parsed.complex.d == fixture.complex.d);
  CHECK(parsed.product == fixture.product);

  opal::Multicomplex mc =
      opal::parse_bicomplex_json(oracles::slurp(data_path("staircase.json")));
  auto fix = oracles::staircase3();
  CHECK(mc.space == fix.mc.space);
  CHECK(mc.d == fix.mc.d);
  CHECK(mc.bidegree == fix.mc.bidegree);
  REQUIRE(mc.op(1) != nullptr);
  CHECK(*mc.op(1) == *fix.mc.op(1));
  CHECK(opal::untwisted_delta(mc) == fix.delta);
}
