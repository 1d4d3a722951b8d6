#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "succinct/benchgen.hpp"
#include "succinct/ctl.hpp"
#include "support.hpp"

using namespace succinct;

namespace {

struct Run {
  int code;
  std::string out, err;

  std::string last_line() const {
    auto s = out;
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s.substr(s.rfind('\n') + 1);
  }
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "succinct_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = (scratch() / name).string();
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("synth then check") {
  const auto spec = write("agg.ctl", "inputs i;\noutputs g;\nAG g\n");
  const auto machine = (scratch() / "m.txt").string();
  auto s = run({"synth", "--spec", spec, "--out", machine});
  CHECK(s.code == 0);
  CHECK(s.last_line() == "RESULT: realizable k=0 states=1");
  auto c = run({"check", "--spec", spec, "--machine", machine});
  CHECK(c.code == 0);
  CHECK(c.last_line() == "RESULT: true");

  const auto other = write("agnotg.ctl", "inputs i;\noutputs g;\nAG !g\n");
  auto n = run({"check", "--spec", other, "--machine", machine});
  CHECK(n.code == 1);
  CHECK(n.last_line() == "RESULT: false");

  auto b = run({"synth", "--spec", spec, "--mode", "binsearch"});
  CHECK(b.code == 0);
  CHECK(b.out.find("0 {i} -> 0 / {g}") != std::string::npos);
}

TEST_CASE("synth from an explicit automaton") {
  auto r = run({"synth", "--automaton", testing::fixture("automata/request_grant.uca")});
  CHECK(r.code == 0);
  CHECK(r.last_line().rfind("RESULT: realizable", 0) == 0);
}

TEST_CASE("exit codes for failures") {
  const auto bad = write("bad.ctl", "inputs i;\noutputs g;\ng & !g\n");
  auto u = run({"synth", "--spec", bad, "--k-max", "2"});
  CHECK(u.code == 1);
  CHECK(u.last_line() == "RESULT: unknown at k-cap 2");
  CHECK(u.out.find("unknown at k-cap") != std::string::npos);

  const auto spec = write("agg2.ctl", "inputs i;\noutputs g;\nAG g\n");
  auto missing = run({"check", "--spec", spec, "--machine", (scratch() / "absent.txt").string()});
  CHECK(missing.code == 2);
  CHECK(missing.last_line() == "RESULT: error input");
  CHECK_FALSE(missing.err.empty());

  CHECK(run({}).code == 2);
  CHECK(run({"synth"}).code == 2);
  CHECK(run({"synth", "--spec", spec, "--mode", "fast"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto broken = write("broken.ctl", "inputs i;\noutputs g;\nAG (g\n");
  auto p = run({"synth", "--spec", broken});
  CHECK(p.code == 2);
  CHECK(p.err.find("4:") != std::string::npos);
  CHECK(p.last_line() == "RESULT: error input");
}

TEST_CASE("exec protocol") {
  const auto spec = write("agg3.ctl", "inputs i;\noutputs g;\nAG g\n");
  auto r = run({"exec", "--spec", spec}, "\ni\n:whatif g=0\n:whatif g=1\n:undo\n:state\n:quit\n");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "initial: {g}\n"
        "in> out: {g}\n"
        "in> out: {g}\n"
        "in> whatif: losing\n"
        "in> whatif: winning\n"
        "in> undone, depth 1\n"
        "in> state: {A(false R g): 0} digest eda38a9d0a598946 depth 1\n"
        "in> \nRESULT: exec steps=1\n");
  auto bad = run({"exec", "--spec", spec}, "z\n:undo\n:undo\n");
  CHECK(bad.code == 0);
  CHECK(bad.err.find("nothing to undo") != std::string::npos);
  CHECK_FALSE(bad.err.empty());
  CHECK(bad.last_line() == "RESULT: exec steps=0");
}

TEST_CASE("verify-otm") {
  auto ok = run({"verify-otm", "--machine", testing::fixture("otm/copy.otm"), "--spec",
                 testing::fixture("otm/copy_ag_g_iff_i.ctl")});
  CHECK(ok.code == 0);
  CHECK(ok.last_line() == "RESULT: true");
  auto no = run({"verify-otm", "--machine", testing::fixture("otm/copy.otm"), "--spec",
                 testing::fixture("otm/ag_g.ctl")});
  CHECK(no.code == 1);
  CHECK(no.last_line() == "RESULT: false");
}

TEST_CASE("gen-bench output parses back to the same spec") {
  const auto atm = testing::fixture("atm/exists_branch.atm");
  const auto out = (scratch() / "bench.ctl").string();
  auto r = run({"gen-bench", "--atm", atm, "--out", out});
  CHECK(r.code == 0);
  CHECK(r.last_line().rfind("RESULT: generated", 0) == 0);
  const auto parsed = ctl::parse_spec(testing::read_file(out));
  const auto direct = bench::gen_phi_b(bench::parse_atm(testing::read_file(atm)));
  CHECK(parsed.inputs == direct.inputs);
  CHECK(parsed.outputs == direct.outputs);
  CHECK(ctl::render(parsed.formula) == ctl::render(direct.formula));
}
