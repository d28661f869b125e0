#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "crossedk/cli.hpp"

using namespace crossedk;
using crossedk::cli::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "crossedk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verify passes on builtins") {
  for (std::string name : {"trivial", "swap2", "shift3", "flip-m2"}) {
    auto r = run({"verify", "--builtin", name});
    CHECK_MESSAGE(r.code == 0, name << ": " << r.out << r.err);
  }
}

TEST_CASE("kgroups of the shift on C^3") {
  auto r = run({"kgroups", "--builtin", "shift3", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.dump().find("\"rank\":1") != std::string::npos);
}

TEST_CASE("symbolic example") {
  auto r = run({"example-psl2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Z^3") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"kgroups", "--builtin", "nope"}).code == 2);
  CHECK(run({"--bogus"}).code == 2);
  CHECK(run({"verify", "--builtin", "swap2", "--n", "3"}).code == 1);
  CHECK(run({"kgroups", "--input", "/nonexistent.json"}).code == 2);
}

TEST_CASE("input parsing") {
  auto doc = cli::parse_input(json::parse(R"({
    "mode": "symbolic", "n": 2,
    "symbolic": {"k_A0": {"k0": {"rank": 1}}, "quotients": [{"k0": {"rank": 0, "torsion": [2]}}]}
  })"));
  CHECK(doc.mode == "symbolic");
  CHECK(*doc.n == 2);
  REQUIRE(doc.quotients.size() == 1);
  CHECK(doc.quotients[0].k0 == AbelianGroup::cyclic(2));
  CHECK_THROWS_AS(cli::parse_input(json::parse(R"({"mode": "sideways"})")), InputError);

  auto result = cli::cmd_recurse_symbolic(doc, {});
  CHECK(result.exit_code == 0);
  CHECK(result.text.find("Ambiguous") != std::string::npos);
}

TEST_CASE("explicit unitary with the wrong order") {
  auto doc = cli::parse_input(json::parse(R"({
    "n": 2, "algebra": {"blocks": [2]},
    "action": {"unitary": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], "block_permutation": [0]}
  })"));
  CHECK_THROWS_WITH_AS(cli::cmd_verify(doc, {}), doctest::Contains("order does not divide n"), CheckFailure);
}

TEST_CASE("group json round trip") {
  AbelianGroup g(2, {2, 6});
  CHECK(cli::group_from_json(cli::to_json(g)) == g);
  // Non-canonical torsion is canonicalized.
  CHECK(cli::group_from_json(json::parse(R"({"rank": 0, "torsion": [2, 3]})")) == AbelianGroup::cyclic(6));
}
