#include <doctest.h>

#include <vector>

#include "crossedk/recursion.hpp"

using namespace crossedk;

namespace {

KPair kp(int r0, int r1 = 0, std::vector<Integer> t0 = {}) { return {AbelianGroup(r0, std::move(t0)), AbelianGroup::free(r1)}; }

ZnAction action(const std::vector<int>& layout, std::vector<int> perm, int n) {
  auto a = build_multimatrix(layout);
  return make_action(a, {Matrix::Identity(a.ambient_dim(), a.ambient_dim()), std::move(perm)}, n);
}

}  // namespace

TEST_CASE("forced cases of a single step") {
  auto s = solve_cyclic_step(kp(1), kp(1));
  CHECK(s.status == StepStatus::Forced);
  CHECK(*s.middle == kp(2));

  auto zero_quot = solve_cyclic_step(kp(2, 1, {3}), kp(0));
  CHECK(zero_quot.status == StepStatus::Forced);
  CHECK(*zero_quot.middle == kp(2, 1, {3}));

  auto zero_sub = solve_cyclic_step(kp(0), kp(0, 2, {5}));
  CHECK(*zero_sub.middle == kp(0, 2, {5}));

  // Z/2 by Z/3: Ext is trivial.
  auto coprime = solve_cyclic_step(kp(0, 0, {2}), kp(0, 0, {3}));
  CHECK(coprime.status == StepStatus::Forced);
  CHECK(coprime.middle->k0 == AbelianGroup::cyclic(6));
}

TEST_CASE("ambiguous step lists the extensions") {
  auto s = solve_cyclic_step(kp(1), kp(0, 0, {2}));
  CHECK(s.status == StepStatus::Ambiguous);
  CHECK_FALSE(s.middle);
  CHECK(s.candidates.size() == 2);

  auto k1 = solve_cyclic_step(kp(1, 1), kp(1, 1));
  CHECK(k1.status == StepStatus::Ambiguous);
  CHECK(k1.candidates.empty());
}

TEST_CASE("connecting maps determine the middle") {
  const auto z = AbelianGroup::free(1);
  const auto zero = AbelianGroup::zero();
  // 0 -> Z -> ? -> Z/2 with zero exponential: K_0 extension of Z/2 by Z.
  // Index map Z -> Z by 2 from K_1(quot) = Z: cokernel Z/2, kernel 0.
  StepMaps maps{GroupHom(z, z, IntMatrix{{2}}), GroupHom::zero(zero, zero)};
  auto s = solve_cyclic_step(kp(1), kp(0, 1), maps);
  REQUIRE(s.middle);
  CHECK(s.middle->k0 == AbelianGroup::cyclic(2));
  CHECK(s.middle->k1.is_zero());
  StepMaps wrong{GroupHom(z, z, IntMatrix{{2}}), GroupHom::zero(z, zero)};
  CHECK_THROWS_AS(solve_cyclic_step(kp(1), kp(0, 1), wrong), InputError);
}

TEST_CASE("symbolic recursion for n = 3") {
  auto ledger = run_recursion_symbolic(3, kp(1), {kp(1), kp(1)});
  REQUIRE(ledger.steps.size() == 2);
  CHECK(ledger.steps[0].k == 1);
  CHECK(*ledger.steps[0].solution.middle == kp(2));
  CHECK(*ledger.result() == kp(3));
  CHECK(ledger.resolved());
}

TEST_CASE("ambiguity propagates down the recursion") {
  auto ledger = run_recursion_symbolic(3, kp(1), {kp(1), kp(0, 0, {2})});
  CHECK(ledger.steps[0].solution.status == StepStatus::Ambiguous);
  CHECK(ledger.steps[1].solution.status == StepStatus::Ambiguous);
  CHECK(ledger.steps[1].solution.reason.find("unresolved") != std::string::npos);
  CHECK_FALSE(ledger.resolved());
}

TEST_CASE("symbolic input validation") {
  CHECK_THROWS_AS(run_recursion_symbolic(3, kp(1), {kp(1)}), InputError);
  CHECK_THROWS_AS(run_recursion_symbolic(1, kp(1), {}), InputError);
}

TEST_CASE("concrete recursion on named examples") {
  CHECK(*run_recursion_concrete(action({1}, {0}, 3)).result() == kp(3));
  CHECK(*run_recursion_concrete(action({1}, {0}, 2)).result() == kp(2));
  CHECK(*run_recursion_concrete(action({1, 1}, {1, 0}, 2)).result() == kp(1));
  CHECK(*run_recursion_concrete(action({1, 1, 1}, {1, 2, 0}, 3)).result() == kp(1));
}

TEST_CASE("concrete recursion matches the oracle and is exact") {
  Rng rng(31);
  for (int n : {2, 3, 4}) {
    std::vector<int> layout{1, 1, 2};
    auto act = make_action(build_multimatrix(layout), random_action_spec(layout, n, rng), n);
    auto ledger = run_recursion_concrete(act);
    CHECK(ledger.oracle_match());
    for (const auto& step : ledger.steps) {
      REQUIRE(step.concrete);
      CHECK(all_exact(step.concrete->junctions));
      CHECK(is_permutation(step.concrete->corner.matrix()));
      CHECK(step.concrete->middle_direct == *step.solution.middle);
    }
  }
}

TEST_CASE("n = 2 reduces to a single sequence") {
  auto swap = build_tower(action({1, 1}, {1, 0}, 2));
  auto ledger = run_recursion_concrete(swap);
  auto report = paschke_specialize(ledger, swap);
  CHECK(ledger.steps.size() == 1);
  CHECK(*report.b1_is_a0);
  CHECK(*report.ideal_matches);
  CHECK(*report.crossed == kp(1));

  auto trivial = build_tower(action({2}, {0}, 2));
  auto t = paschke_specialize(run_recursion_concrete(trivial), trivial);
  CHECK(*t.b1_is_a0);
  CHECK(*t.ideal_matches);
  CHECK(*t.crossed == kp(2));
  CHECK(t.quotient == kp(1));

  auto symbolic = paschke_specialize(run_recursion_symbolic(2, kp(1), {kp(1)}));
  CHECK(*symbolic.crossed == kp(2));
  CHECK_FALSE(symbolic.b1_is_a0);
  CHECK_THROWS_AS(paschke_specialize(run_recursion_symbolic(3, kp(1), {kp(1), kp(1)})), InputError);
}

TEST_CASE("rendered steps show all six groups") {
  auto ledger = run_recursion_symbolic(3, kp(1), {kp(1), kp(1)});
  auto lines = render_step(ledger.steps[1], 3);
  std::string all;
  for (const auto& l : lines) all += l + "\n";
  CHECK(all.find("Z^3") != std::string::npos);
  CHECK(all.find("Forced") != std::string::npos);
}
