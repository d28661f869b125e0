#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crossedk/abelian_group.hpp"
#include "crossedk/crossed_product.hpp"

namespace crossedk {

struct KPair {
  AbelianGroup k0;
  AbelianGroup k1;

  bool operator==(const KPair&) const = default;
  bool is_zero() const { return k0.is_zero() && k1.is_zero(); }
  std::string to_string() const { return "(" + k0.to_string() + ", " + k1.to_string() + ")"; }
};

KPair direct_sum(const KPair& a, const KPair& b);

enum class StepStatus { Forced, Ambiguous };

const char* to_string(StepStatus s);

/// Connecting maps of one six-term sequence 0 -> sub -> middle -> quot:
/// index: K_1(quot) -> K_0(sub), exponential: K_0(quot) -> K_1(sub).
struct StepMaps {
  GroupHom index;
  GroupHom exponential;
};

struct StepSolution {
  std::optional<KPair> middle;
  StepStatus status = StepStatus::Forced;
  std::string reason;
  std::vector<KPair> candidates;  // only when Ambiguous and enumerable
};

/// Middle term of the cyclic sequence for an ideal with K-theory `sub` and
/// quotient `quot`. With maps the middle is read off from kernels and
/// cokernels; without them only the forced cases resolve. Throws InputError
/// when the maps do not fit the groups.
StepSolution solve_cyclic_step(const KPair& sub, const KPair& quot,
                               const std::optional<StepMaps>& maps = std::nullopt);

/// Maps and checks recorded by the concrete recursion for one step.
struct ConcreteStep {
  KPair ideal;                  // K_*(J_k), read directly
  KPair middle_direct;          // K_*(B_k), read directly
  GroupHom corner;              // K_0(B_{k+1}) -> K_0(J_k), a permutation
  GroupHom inclusion;           // K_0(J_k) -> K_0(B_k)
  GroupHom projection;          // K_0(B_k) -> K_0(A_0/I_k)
  std::vector<Junction> junctions;
  Index dim_ideal = 0;
  Index dim_middle = 0;
  Index dim_quotient = 0;
};

struct StepRecord {
  int k = 0;
  std::optional<KPair> sub;  // K_*(B_{k+1}), standing in for K_*(J_k)
  KPair quot;                // K_*(A_0/I_k)
  StepSolution solution;
  std::optional<ConcreteStep> concrete;
};

struct RecursionLedger {
  int n = 0;
  KPair a0;
  std::vector<StepRecord> steps;  // k = n-2 down to 0
  std::optional<KPair> oracle;    // concrete mode: K_*(image algebra) by direct decomposition

  /// Output of the k = 0 step, the K-theory of the crossed product.
  const std::optional<KPair>& result() const { return steps.back().solution.middle; }
  bool resolved() const { return result().has_value(); }
  bool oracle_match() const { return oracle && result() && *oracle == *result(); }
};

/// quotients[k] = K_*(A_0/I_k) for k = 0..n-2.
RecursionLedger run_recursion_symbolic(int n, const KPair& a0, const std::vector<KPair>& quotients);

/// Every step computed from induced maps on a concrete action and checked
/// against a direct decomposition. Throws CheckFailure naming the step on
/// any disagreement.
RecursionLedger run_recursion_concrete(const CornerTower& tower);
RecursionLedger run_recursion_concrete(const ZnAction& act);

/// The n = 2 ledger read as a single sequence with B_1 = A_0 and I_0 = A_1 A_1.
struct PaschkeReport {
  KPair a0;
  std::optional<KPair> crossed;
  KPair quotient;
  std::optional<bool> b1_is_a0;       // concrete only
  std::optional<bool> ideal_matches;  // concrete only: ideal generated by A_1 A_1 equals I_0
  std::vector<std::string> lines;
};

/// Throws InputError unless n = 2, CheckFailure if a concrete identity fails.
PaschkeReport paschke_specialize(const RecursionLedger& ledger,
                                 const std::optional<CornerTower>& tower = std::nullopt);

/// Six-term diagram of one step as text lines.
std::vector<std::string> render_step(const StepRecord& step, int n);

}  // namespace crossedk
