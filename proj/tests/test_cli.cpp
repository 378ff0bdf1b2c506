#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "toric_ic/check.hpp"
#include "toric_ic/document.hpp"
#include "toric_ic/error.hpp"
#include "toric_ic/fan_io.hpp"
#include "toric_ic/report.hpp"
#include "toric_ic_cli/cli.hpp"

using namespace toric_ic;

namespace {

const char* kPlane = R"(# the affine plane
rank = 2
cone "sigma" = [[1,0],[0,1]]
)";

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("fan documents") {
  std::vector<std::string> warnings;
  Fan f = parse_fan(kPlane, &warnings);
  CHECK(f.cones().size() == 4);
  CHECK(warnings.empty());
  CHECK(f.cone(*f.find({make_vector({0, 1}), make_vector({1, 0})})).name == "sigma");

  Fan dup = parse_fan("rank = 2\ncone = [[1,0],[0,1]]\ncone = [[0,1],[1,0]]\n", &warnings);
  CHECK(dup.cones().size() == 4);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("duplicates") != std::string::npos);

  warnings.clear();
  Fan np = parse_fan("rank = 2\ncone = [[2,0]]\n", &warnings);
  CHECK(np.find({make_vector({1, 0})}));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("(1,0)") != std::string::npos);

  // Windows line endings and semicolons are accepted.
  CHECK(parse_fan("rank = 1;\r\ncone = [[1]];\r\ncone = [[-1]]").cones().size() == 3);
}

TEST_CASE("fan document errors") {
  CHECK(kind_of([] { parse_fan("rank = 2\ncone = [[1/2,0]]\n"); }) == ErrorKind::ParseError);
  try {
    parse_fan("rank = 2\ncone = [[1,0],\n  [0,x1]]\n");
    FAIL("expected a ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    parse_fan("rank = 2\ncone = [[1,0],\n  [0,1/2]]\n");
    FAIL("expected a ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3, column 7") != std::string::npos);
  }
  CHECK(kind_of([] { parse_fan("cone = [[1,0]]\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_fan("rank = 2\ncone = [[1,0,0]]\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_fan("rank = 2\ncolor = red\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_fan("rank = 2\ncone = [[1,0],[0,1]]\ncone = [[1,0],[1,2]]\n"); }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_fan("rank = 1\ncone = [[1],[-1]]\n"); }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_fan("rank = 2\ncone = [[0,0]]\n"); }) == ErrorKind::ValidationError);
}

TEST_CASE("fan write and reparse") {
  for (const std::string& name : corpus_fan_names()) {
    Fan f = builtin_fan(name);
    Fan g = parse_fan(write_fan(f));
    REQUIRE(g.cones().size() == f.cones().size());
    for (std::size_t i = 0; i < f.cones().size(); ++i) CHECK(g.cones()[i].generators == f.cones()[i].generators);
  }
}

TEST_CASE("document grammar") {
  Document d = parse_document("a \"x\" = { k = [1, -2, \"s\\\"q\"], w = word }\n# comment\nb = 123456789012345678901234567890");
  REQUIRE(d.statements.size() == 2);
  CHECK(d.statements[0].label == std::optional<std::string>("x"));
  CHECK(d.statements[0].value.field("w").as_word("w") == "word");
  CHECK(d.statements[0].value.field("k").as_list("k")[2].as_string("s") == "s\"q");
  CHECK(d.statements[1].value.as_integer("b") == Int("123456789012345678901234567890"));
  CHECK(parse_document(write_document(d)) == d);
  CHECK(kind_of([] { parse_document("a = [1, 2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_document("a = \"open"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_document("= 3"); }) == ErrorKind::ParseError);
}

TEST_CASE("reports round-trip and replay") {
  for (const auto& [name, character] : std::vector<std::pair<std::string, std::string>>{
           {"affine:2", "1/2,1/3"}, {"affine:2", "0,0"}, {"weighted_p112", "1/2,0"}, {"cone_over_square", "0,0,1/2"}}) {
    Fan f = builtin_fan(name);
    CheckOptions o;
    o.timing = true;
    RunReport r = run_check(f, Character::parse(character), Perversity::middle(static_cast<int>(f.ambient_rank())), o);
    const std::string text = write_report(r);
    RunReport back = parse_report(text);
    CHECK(back == r);
    CHECK(write_report(back) == text);
    CHECK(replay_report(back));
    CHECK_FALSE(render_report(r).empty());

    RunReport forged = back;
    forged.certificate.verdict =
        forged.certificate.verdict == Verdict::Vanishes ? Verdict::Inconclusive : Verdict::Vanishes;
    CHECK_FALSE(replay_report(forged));
  }
}

TEST_CASE("reports are deterministic without timing") {
  Fan f = builtin_fan("hirzebruch:2");
  RunReport a = run_check(f, Character::parse("1/4,1/6"), Perversity::middle(2));
  RunReport b = run_check(f, Character::parse("1/4,1/6"), Perversity::middle(2));
  CHECK(write_report(a) == write_report(b));
  CHECK_FALSE(a.timing_us);
}

TEST_CASE("run_check errors") {
  Fan plane = builtin_fan("affine:2");
  CHECK(kind_of([&] { run_check(plane, Character::parse("1/2"), Perversity::middle(2)); }) == ErrorKind::DimensionMismatch);
  Perversity non_gm(std::map<int, int>{{1, 0}, {2, 1}});
  CHECK(kind_of([&] { run_check(plane, Character::parse("1/2,0"), non_gm); }) == ErrorKind::PerversityUndefined);
  CheckOptions strict;
  strict.strict_gm = true;
  strict.dual_perversity = Perversity::zero(2);
  CHECK(kind_of([&] { run_check(plane, Character::parse("1/2,0"), non_gm, strict); }) == ErrorKind::PerversityUndefined);
  CheckOptions explicit_dual;
  explicit_dual.dual_perversity = Perversity::zero(2);
  CHECK(run_check(plane, Character::parse("1/2,0"), non_gm, explicit_dual).certificate.verdict == Verdict::Vanishes);
  CHECK(kind_of([&] { run_check(plane, Character::parse("1/2,0"), Perversity(std::map<int, int>{{1, 0}})); }) ==
        ErrorKind::PerversityUndefined);
}

TEST_CASE("oracle crosscheck") {
  OracleSummary s = run_oracle_crosscheck(5, 12, 200, 1);
  CHECK(s.cases == 200);
  CHECK(s.agreements == 200);
  CHECK(run_oracle_crosscheck(5, 12, 200, 1).agreements == s.agreements);

  OracleSummary z1 = run_oracle_crosscheck(1, 2, 0, 0, true);
  CHECK(z1.cases == 2);
  CHECK(z1.agreements == 2);

  OracleSummary t = run_oracle_crosscheck(2, 1, 0, 0, true);
  CHECK(t.cases == 2);
  for (const OracleCase& c : t.all) CHECK(is_trivial(c.character));
  CHECK(t.all.back().oracle == GradedRanks::canonical(0, {1, 2, 1}));
  CHECK(kind_of([] { run_oracle_crosscheck(0, 2, 1, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<std::atomic<int>> hits(500);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS(parallel_for(10, 3, [](std::size_t i) {
    if (i == 7) throw Error(ErrorKind::InvalidArgument, "boom");
  }));
}

TEST_CASE("command line exit codes") {
  CHECK(cli({"check", "--fan", "builtin:affine:2", "--character", "1/2,1/3", "--perversity", "middle"}).code == 0);
  CliRun inconclusive = cli({"check", "--fan", "builtin:affine:2", "--character", "0,0", "--perversity", "middle"});
  CHECK(inconclusive.code == 2);
  CHECK(inconclusive.out.find("verdict: Inconclusive") != std::string::npos);
  CHECK(cli({"check", "--fan", "builtin:weighted_p112", "--character", "1/2,0", "--perversity", "middle"}).code == 0);

  CliRun bad = cli({"check", "--fan", "builtin:affine:2", "--character", "1/2"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("DimensionMismatch") != std::string::npos);
  CHECK(cli({"check", "--fan", "builtin:nowhere", "--character", "1/2"}).code == 1);
  CHECK(cli({"check", "--fan", "builtin:affine:2"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"check", "--fan", "builtin:affine:3", "--character", "1/2,0,0", "--perversity", "p(2)=0,p(3)=2"}).code == 1);
  CHECK(cli({"check", "--fan", "builtin:affine:3", "--character", "1/2,0,0", "--perversity", "p(2)=0,p(3)=2",
             "--dual-perversity", "zero"})
            .code == 0);
  CHECK(cli({"check", "--fan", "builtin:affine:3", "--character", "1/2,0,0", "--perversity", "p(2)=0,p(3)=2",
             "--dual-perversity", "zero", "--strict-gm"})
            .code == 1);

  CliRun stalk = cli({"stalk", "--fan", "builtin:affine:2", "--character", "0,1/3", "--cone", "[[1,0]]"});
  CHECK(stalk.code == 0);
  CHECK(stalk.out.find("agree") != std::string::npos);
  CHECK(cli({"stalk", "--fan", "builtin:affine:2", "--character", "0,1/3", "--cone", "[[1,1]]"}).code == 1);
  CHECK(cli({"orbits", "--fan", "builtin:a1_surface", "--character", "1/2,0"}).code == 0);

  CliRun oracle = cli({"oracle", "--max-rank", "5", "--max-order", "12", "--samples", "200", "--seed", "1"});
  CHECK(oracle.code == 0);
  CHECK(oracle.out.find("200/200 agree") != std::string::npos);
}

TEST_CASE("command line reports and replay") {
  const std::string path = "cli_test_report.txt";
  CHECK(cli({"check", "--fan", "builtin:p1xp1", "--character", "1/3,1/2", "--report", path}).code == 0);
  CHECK(cli({"replay", "--report", path}).code == 0);
  {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    const auto pos = text.find("verdict = Vanishes");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("verdict = Vanishes").size(), "verdict = Inconclusive");
    std::ofstream(path) << text;
  }
  CHECK(cli({"replay", "--report", path}).code == 1);
  std::remove(path.c_str());

  const std::string fan_path = "cli_test_fan.txt";
  std::ofstream(fan_path) << kPlane;
  CHECK(cli({"check", "--fan", fan_path, "--character", "1/2,1/3"}).code == 0);
  std::remove(fan_path.c_str());
  CHECK(cli({"check", "--fan", "no_such_file.txt", "--character", "1/2,1/3"}).code == 1);
}
