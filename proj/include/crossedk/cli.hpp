#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossedk/recursion.hpp"

namespace crossedk::cli {

using nlohmann::json;

/// One input file. Concrete documents carry an action, symbolic ones carry
/// K-theory inputs; never both.
struct InputDocument {
  std::string mode = "concrete";
  std::optional<int> n;
  std::vector<int> blocks;
  std::optional<std::string> builtin;
  std::optional<ActionSpec> action;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> xi_exponent;
  std::optional<KPair> k_a0;
  std::vector<KPair> quotients;
};

/// Throws InputError describing the first schema violation.
InputDocument parse_input(const json& doc);
InputDocument load_input(const std::string& path);

/// Command-line overrides. Tolerance resolves as flag, then input file, then
/// CROSSEDK_TOL, then the built-in default; the other fields as flag, file, default.
struct Settings {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> xi_exponent;
  std::optional<int> n;
  std::optional<std::string> mode;
};

/// A named example shipped with the tool.
struct Builtin {
  std::string name;
  std::vector<int> blocks;
  ActionSpec spec;
  int n = 2;
};

std::vector<std::string> builtin_names();
/// `n` replaces the example's default order (shift uses it as its size).
Builtin builtin_example(const std::string& name, std::optional<int> n = std::nullopt);

/// Algebra plus validated action described by a concrete document.
struct Problem {
  std::string name;
  std::vector<int> blocks;
  int n = 2;
  ZnAction action;
};
Problem make_problem(const InputDocument& doc, const Settings& settings);

struct CommandResult {
  int exit_code = 0;
  json report;
  std::string text;
};

CommandResult cmd_verify(const InputDocument& doc, const Settings& settings);
CommandResult cmd_kgroups(const InputDocument& doc, const Settings& settings);
CommandResult cmd_recurse_symbolic(const InputDocument& doc, const Settings& settings);
CommandResult cmd_example_psl2(const Settings& settings);

json to_json(const AbelianGroup& g);
json to_json(const KPair& p);
json to_json(const RecursionLedger& ledger);
AbelianGroup group_from_json(const json& j);
KPair kpair_from_json(const json& j);

/// Whole command line: subcommand, flags, output. Returns the process exit code
/// (0 pass, 1 mathematical check failed, 2 usage or input error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crossedk::cli
