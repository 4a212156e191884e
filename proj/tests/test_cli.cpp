#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cli_input.hpp"
#include "cli_report.hpp"
#include "doctest.h"
#include "fdalg/module.hpp"
#include "scenarios.hpp"

using namespace fdalg;
using namespace fdalg::cli;

namespace {

const Field Q = Field::rationals();
using KV = std::map<std::string, std::string>;

ParsedInput parse_text(const std::string& text, Field f = Q) {
  std::istringstream in(text);
  return parse_input(in, f, "test");
}

std::string example(const std::string& name) { return std::string(FDALG_EXAMPLES_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
};

Run run_tool(const std::string& args) {
  std::string cmd = std::string(FDALG_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("input grammar") {
  SUBCASE("structure constants of k[x]/(x^2)") {
    ParsedInput in = parse_input_file(example("dual_numbers.fda"), Q);
    REQUIRE(in.algebra);
    CHECK(in.algebra->dim() == 2);
    SparseVec x{{1, Rational(1)}};
    CHECK(in.algebra->mul(x, x).empty());
  }
  SUBCASE("quiver loop with x^3 = 0 multiplies like nakayama(3)") {
    ParsedInput in = parse_input_file(example("loop_cubed.fda"), Q);
    REQUIRE(in.algebra);
    REQUIRE(in.algebra->dim() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        SparseVec want;
        if (i + j < 3) want.push_back({static_cast<std::uint32_t>(i + j), Rational(1)});
        CHECK(in.algebra->product(i, j) == want);
      }
  }
  SUBCASE("malformed sc line names line and column") {
    try {
      parse_input_file(example("bad_sc.fda"), Q);
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("bad_sc.fda:3:") != std::string::npos);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_text("frobnicate 3\n"), InputError);
    CHECK_THROWS_AS(parse_text("algebra dim 2\nsc 0 0 5 1\n"), InputError);
    CHECK_THROWS_AS(parse_text("algebra nakayama 3\nmodule liu-schulz-ideal 0\n"), InputError);
    CHECK_THROWS_AS(parse_text("algebra nakayama 2\nmodule dim 1\nact 1\n1\n"), InputError);
    CHECK_THROWS_AS(parse_field("fp:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_phi("0,,1"), std::invalid_argument);
  }
  SUBCASE("phi and field") {
    CHECK(parse_phi("2,0,1,1") == std::vector<std::size_t>{0, 1, 2});
    ParsedInput in = parse_input_file(example("dual_numbers.fda"), parse_field("fp:7"));
    CHECK(in.algebra->field() == Field::prime(7));
  }
  SUBCASE("direct sum of module stanzas") {
    ParsedInput in = parse_input_file(example("nakayama3_x1.fda"), Q);
    REQUIRE(in.module);
    CHECK(in.module->dim() == 4);
    CHECK(*in.phi == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("format round trip") {
    Algebra a = nakayama(3);
    Module m = truncated_module(a, 2);
    ParsedInput in = parse_text(format_algebra(a) + format_module(m));
    REQUIRE(in.algebra);
    REQUIRE(in.module);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) CHECK(in.algebra->product(i, j) == a.product(i, j));
    for (std::size_t i = 0; i < a.dim(); ++i) CHECK(in.module->act(i) == m.act(i));
  }
}

TEST_CASE("reports") {
  SUBCASE("empty report") {
    Report r;
    r.command = "empty";
    json j = json::parse(render_structured(r));
    CHECK(j["verdict"] == "pass");
    CHECK(j["results"].empty());
    CHECK(render_text(r).find("verdict: pass") != std::string::npos);
  }
  SUBCASE("verdict ordering and exit codes") {
    Report r;
    r.note(Verdict::Inconclusive);
    CHECK(r.verdict == Verdict::Inconclusive);
    r.note(Verdict::Pass);
    CHECK(r.verdict == Verdict::Inconclusive);
    r.note(Verdict::Fail);
    r.note(Verdict::Inconclusive);
    CHECK(r.verdict == Verdict::Fail);
    CHECK(exit_code(Verdict::Pass) == 0);
    CHECK(exit_code(Verdict::Fail) == 1);
    CHECK(exit_code(Verdict::Inconclusive) == 2);
  }
  SUBCASE("text and structured carry the same values") {
    Report r = run_scenario("nakayama-green-dims", Params(KV{{"n", "3,4"}}));
    std::string text = render_text(r);
    json j = json::parse(render_structured(r));
    for (const auto& row : j["results"]["dims"]["rows"])
      for (const auto& c : row) CHECK(text.find(c.dump()) != std::string::npos);
    CHECK(text.find("verdict: " + j["verdict"].get<std::string>()) != std::string::npos);
  }
  SUBCASE("parameters") {
    CHECK_THROWS_AS(run_scenario("nope", Params()), ParamError);
    CHECK_THROWS_AS(run_scenario("nakayama-green-dims", Params(KV{{"bogus", "1"}})), ParamError);
    CHECK_THROWS_AS(run_scenario("nakayama-green-dims", Params(KV{{"phi", "0,1,2,4"}})), ParamError);
    Params p({{"seed", "0x10"}, {"n", "3-5"}});
    CHECK(p.seed() == 16);
    CHECK(p.list("n", "1") == std::vector<std::size_t>{3, 4, 5});
  }
}

TEST_CASE("determinism and goldens") {
  for (const char* name :
       {"liu-schulz-basics", "nakayama-green-dims", "green-assoc-grid", "orbit-distinguish", "graded-bar-check"}) {
    CAPTURE(name);
    std::string a = render_structured(run_scenario(name, Params()));
    std::string b = render_structured(run_scenario(name, Params()));
    CHECK(a == b);
    CHECK(a == slurp(std::string(FDALG_GOLDEN_DIR) + "/" + name + ".json"));
  }
}

TEST_CASE("binary") {
  SUBCASE("exit codes") {
    CHECK(run_tool("scenario nakayama-green-dims n=3").code == 0);
    CHECK(run_tool("scenario nope").code == 3);
    CHECK(run_tool("parse " + example("bad_sc.fda")).code == 3);
    CHECK(run_tool("parse /nonexistent.fda").code == 3);
    CHECK(run_tool("--field fp:x parse " + example("dual_numbers.fda")).code == 3);
    CHECK(run_tool("green probe-assoc " + example("nakayama3_x1.fda") + " --phi 0,1,2,4").code == 0);
    CHECK(run_tool("green build " + example("nakayama3_x1.fda") + " --phi 0,1,2,4").code == 3);
  }
  SUBCASE("structured output matches the golden file") {
    Run r = run_tool("scenario liu-schulz-basics --format structured");
    CHECK(r.code == 0);
    CHECK(r.out == slurp(std::string(FDALG_GOLDEN_DIR) + "/liu-schulz-basics.json"));
  }
  SUBCASE("flags before and after the subcommand agree") {
    Run a = run_tool("--format structured scenario orbit-distinguish r=3");
    Run b = run_tool("scenario orbit-distinguish r=3 --format structured");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  SUBCASE("commands on the examples") {
    Run g = run_tool("green build " + example("nakayama3_x1.fda") + " --format structured");
    CHECK(g.code == 0);
    CHECK(json::parse(g.out)["results"]["dim"] == 13);
    Run t = run_tool("stable theorem1 " + example("nakayama3_x1.fda") + " --bimodule syzygy --format structured");
    CHECK(t.code == 0);
    CHECK(json::parse(t.out)["results"]["certificate"]["status"] == "valid");
    Run gb = run_tool("graded bar " + example("graded_nakayama2.fda") + " --format structured");
    CHECK(json::parse(gb.out)["results"]["dim"] == 3);
    Run gc = run_tool("graded check " + example("graded_nakayama2.fda") + " --bimodule syzygy --shift 1");
    CHECK(gc.code == 0);
    Run m = run_tool("module nakayama-module 3 1");
    CHECK(parse_text(m.out).module->dim() == 1);
  }
}
