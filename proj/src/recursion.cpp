#include "crossedk/recursion.hpp"

#include <algorithm>
#include <string>

namespace crossedk {

KPair direct_sum(const KPair& a, const KPair& b) {
  return KPair{direct_sum(a.k0, b.k0), direct_sum(a.k1, b.k1)};
}

const char* to_string(StepStatus s) { return s == StepStatus::Forced ? "Forced" : "Ambiguous"; }

namespace {

// Extensions 0 -> sub -> E -> quot -> 0; a single group when the answer is forced.
struct ExtensionAnswer {
  std::optional<AbelianGroup> unique;
  std::vector<AbelianGroup> candidates;
  bool enumerable = true;
};

ExtensionAnswer extend(const AbelianGroup& sub, const AbelianGroup& quot) {
  if (quot.is_free()) return {direct_sum(sub, quot), {}, true};
  auto c = extension_candidates(sub, quot);
  if (!c) return {std::nullopt, {}, false};
  if (c->size() == 1) return {c->front(), {}, true};
  return {std::nullopt, std::move(*c), true};
}

std::vector<KPair> pair_candidates(const ExtensionAnswer& e0, const ExtensionAnswer& e1) {
  std::vector<AbelianGroup> c0 = e0.unique ? std::vector<AbelianGroup>{*e0.unique} : e0.candidates;
  std::vector<AbelianGroup> c1 = e1.unique ? std::vector<AbelianGroup>{*e1.unique} : e1.candidates;
  std::vector<KPair> out;
  for (const auto& a : c0)
    for (const auto& b : c1) out.push_back(KPair{a, b});
  return out;
}

StepSolution solve_with_maps(const KPair& sub, const KPair& quot, const StepMaps& maps) {
  if (!(maps.index.source() == quot.k1) || !(maps.index.target() == sub.k0) ||
      !(maps.exponential.source() == quot.k0) || !(maps.exponential.target() == sub.k1)) {
    throw InputError("solve_cyclic_step: connecting maps do not match the given groups");
  }
  const auto idx = kernel_image_cokernel(maps.index);
  const auto exp = kernel_image_cokernel(maps.exponential);
  // 0 -> coker(index) -> K_0(middle) -> ker(exp) -> 0
  // 0 -> coker(exp)   -> K_1(middle) -> ker(index) -> 0
  const auto e0 = extend(idx.cokernel, exp.kernel);
  const auto e1 = extend(exp.cokernel, idx.kernel);
  StepSolution s;
  if (e0.unique && e1.unique) {
    s.middle = KPair{*e0.unique, *e1.unique};
    s.reason = "read off from the kernels and cokernels of the connecting maps";
    return s;
  }
  s.status = StepStatus::Ambiguous;
  s.reason = "connecting maps leave a non-split extension problem";
  if (e0.enumerable && e1.enumerable) s.candidates = pair_candidates(e0, e1);
  return s;
}

}  // namespace

StepSolution solve_cyclic_step(const KPair& sub, const KPair& quot, const std::optional<StepMaps>& maps) {
  if (maps) return solve_with_maps(sub, quot, *maps);
  StepSolution s;
  if (sub.is_zero()) {
    s.middle = quot;
    s.reason = "ideal side is zero, the quotient map is an isomorphism";
    return s;
  }
  if (quot.is_zero()) {
    s.middle = sub;
    s.reason = "quotient side is zero, the inclusion is an isomorphism";
    return s;
  }
  if (!sub.k1.is_zero() || !quot.k1.is_zero()) {
    s.status = StepStatus::Ambiguous;
    s.reason = "K_1 is nonzero on one side, so the connecting maps are unknown";
    return s;
  }
  // Both K_1 vanish: connecting maps are zero and K_0 of the middle is an
  // extension of quot.k0 by sub.k0.
  const auto e = extend(sub.k0, quot.k0);
  if (e.unique) {
    s.middle = KPair{*e.unique, AbelianGroup::zero()};
    s.reason = quot.k0.is_free() ? "K_1 vanishes on both sides and the quotient K_0 is free, so the sequence splits"
                                 : "K_1 vanishes on both sides and only one extension exists up to isomorphism";
    return s;
  }
  s.status = StepStatus::Ambiguous;
  s.reason = "extension of " + quot.k0.to_string() + " by " + sub.k0.to_string() + " is not determined";
  if (e.enumerable) {
    for (const auto& g : e.candidates) s.candidates.push_back(KPair{g, AbelianGroup::zero()});
  } else {
    s.reason += " (too many extension classes to enumerate)";
  }
  return s;
}

RecursionLedger run_recursion_symbolic(int n, const KPair& a0, const std::vector<KPair>& quotients) {
  if (n < 2) throw InputError("recursion needs n >= 2");
  if (static_cast<int>(quotients.size()) != n - 1) {
    throw InputError("expected " + std::to_string(n - 1) + " quotient K-pairs (k = 0.." + std::to_string(n - 2) +
                     "), got " + std::to_string(quotients.size()));
  }
  RecursionLedger ledger{n, a0, {}, std::nullopt};
  std::optional<KPair> sub = a0;
  for (int k = n - 2; k >= 0; --k) {
    StepRecord rec{k, sub, quotients[static_cast<std::size_t>(k)], {}, std::nullopt};
    if (sub) {
      rec.solution = solve_cyclic_step(*sub, rec.quot);
    } else {
      rec.solution.status = StepStatus::Ambiguous;
      rec.solution.reason = "input from step " + std::to_string(k + 1) + " is unresolved";
    }
    sub = rec.solution.middle;
    ledger.steps.push_back(std::move(rec));
  }
  return ledger;
}

namespace {

KPair k_of(const FiniteAlgebra& a) {
  const auto r = k0_of_algebra(a);
  return KPair{r.k0, r.k1};
}

[[noreturn]] void fail(int k, const std::string& what) {
  throw CheckFailure("recursion step k=" + std::to_string(k) + ": " + what);
}

}  // namespace

RecursionLedger run_recursion_concrete(const CornerTower& tower) {
  const int n = tower.n();
  const auto& act = tower.action;
  RecursionLedger ledger{n, k_of(tower.b[static_cast<std::size_t>(n - 1)]), {}, std::nullopt};

  std::optional<KPair> sub = ledger.a0;
  for (int k = n - 2; k >= 0; --k) {
    const auto ks = static_cast<std::size_t>(k);
    const FiniteAlgebra& b = tower.b[ks];
    const FiniteAlgebra& j = tower.j[ks];
    const FiniteAlgebra& next = tower.b[ks + 1];

    const FullCornerReport fc = full_corner_check(tower, k);
    if (!fc.passed()) fail(k, "B_" + std::to_string(k + 1) + " is not a full corner of J_" + std::to_string(k));

    const AlgebraExactSequence seq = algebra_exact_sequence(tower, k);
    const KPair kb_next = k_of(next);
    const KPair kj = k_of(j);
    const KPair kb = k_of(b);
    const KPair quot = k_of(seq.fixed_quotient.algebra);

    const GroupHom corner(kb_next.k0, kj.k0, fc.multiplicity);
    const GroupHom inclusion = induced_k0_map([](const Matrix& x) { return x; }, j, b);
    const GroupHom to_quotient = induced_k0_map([&](const Matrix& x) { return seq.quotient.apply(x); }, b,
                                                seq.quotient.algebra);
    const Index nn = act.algebra().ambient_dim();
    const Index big = b.ambient_dim();
    const GroupHom identify = induced_k0_map(
        [&](const Matrix& y) {
          Matrix x = Matrix::Zero(big, big);
          x.topLeftCorner(nn, nn) = y;
          return seq.quotient.apply(x);
        },
        seq.fixed_quotient.algebra, seq.quotient.algebra);
    if (!is_permutation(identify.matrix())) {
      fail(k, "A_0/I_k -> B_k/J_k does not induce a bijection of Wedderburn blocks");
    }
    // A permutation matrix is inverted by its transpose.
    const GroupHom projection(kb.k0, quot.k0, identify.matrix().transpose() * to_quotient.matrix());

    ConcreteStep cs{kj, kb, corner, inclusion, projection, {}, seq.dim_ideal, seq.dim_middle, seq.dim_quotient};
    const GroupHom f = compose(inclusion, corner);
    cs.junctions = exactness_check({GroupHom::zero(AbelianGroup::zero(), kb_next.k0), f, projection,
                                    GroupHom::zero(quot.k0, AbelianGroup::zero())});
    if (!all_exact(cs.junctions)) fail(k, "0 -> K_0(J_k) -> K_0(B_k) -> K_0(A_0/I_k) -> 0 is not exact");
    if (seq.dim_middle != seq.dim_ideal + seq.dim_quotient) fail(k, "dim B_k != dim J_k + dim A_0/I_k");

    StepRecord rec{k, sub, quot, {}, std::nullopt};
    if (!sub || !(*sub == kb_next)) fail(k, "previous step disagrees with K_*(B_{k+1})");
    // Finite dimension: K_1 vanishes, so both connecting maps are zero.
    rec.solution = solve_cyclic_step(
        *sub, quot, StepMaps{GroupHom::zero(quot.k1, sub->k0), GroupHom::zero(quot.k0, sub->k1)});
    if (!rec.solution.middle) fail(k, "middle term could not be determined");
    if (!(*rec.solution.middle == kb)) {
      fail(k, "recursion gives " + rec.solution.middle->to_string() + " but B_k decomposes as " + kb.to_string());
    }
    rec.concrete = std::move(cs);
    sub = rec.solution.middle;
    ledger.steps.push_back(std::move(rec));
  }

  // Independent decomposition of the image algebra with fresh random choices.
  ledger.oracle = k_of(tower.b.front().with_seed(tower.b.front().seed() + 1));
  if (!ledger.oracle_match()) {
    throw CheckFailure("recursion result " + ledger.result()->to_string() + " differs from the image algebra " +
                       ledger.oracle->to_string());
  }
  return ledger;
}

RecursionLedger run_recursion_concrete(const ZnAction& act) { return run_recursion_concrete(build_tower(act)); }

namespace {

std::vector<std::string> hexagon(const std::string& left, const std::string& mid, const std::string& right,
                                 const std::optional<KPair>& l, const std::optional<KPair>& m,
                                 const std::optional<KPair>& r) {
  auto g = [](const std::optional<KPair>& p, bool zero) {
    if (!p) return std::string("?");
    return (zero ? p->k0 : p->k1).to_string();
  };
  return {
      "K0(" + left + ") = " + g(l, true) + "  ->  K0(" + mid + ") = " + g(m, true) + "  ->  K0(" + right +
          ") = " + g(r, true),
      "    ^                                   |",
      "    |                                   v",
      "K1(" + right + ") = " + g(r, false) + "  <-  K1(" + mid + ") = " + g(m, false) + "  <-  K1(" + left +
          ") = " + g(l, false),
  };
}

}  // namespace

std::vector<std::string> render_step(const StepRecord& step, int n) {
  const std::string k = std::to_string(step.k);
  const std::string mid = step.k == 0 ? "A x| Z_" + std::to_string(n) : "B_" + k;
  const std::string left = step.k + 1 == n - 1 ? "A_0" : "B_" + std::to_string(step.k + 1);
  auto lines = hexagon(left, mid, "A_0/I_" + k, step.sub, step.solution.middle, step.quot);
  lines.push_back("status: " + std::string(to_string(step.solution.status)) + " (" + step.solution.reason + ")");
  for (const auto& c : step.solution.candidates) lines.push_back("  candidate: " + c.to_string());
  return lines;
}

PaschkeReport paschke_specialize(const RecursionLedger& ledger, const std::optional<CornerTower>& tower) {
  if (ledger.n != 2) throw InputError("paschke_specialize needs n = 2, got n = " + std::to_string(ledger.n));
  if (ledger.steps.size() != 1) throw CheckFailure("n = 2 ledger must hold exactly one step");
  const StepRecord& step = ledger.steps.front();
  PaschkeReport rep{ledger.a0, step.solution.middle, step.quot, std::nullopt, std::nullopt, {}};

  if (tower) {
    const auto& act = tower->action;
    rep.b1_is_a0 = subspace_equal(tower->b[1].space(), act.eigenspace(0));
    const auto& a0 = act.eigenspace(0);
    const auto squares = span_product(act.eigenspace(1), act.eigenspace(1));
    const auto generated = span_sum(squares, span_product(span_product(a0, squares), a0));
    rep.ideal_matches = subspace_equal(generated, tower->i[0]);
    if (!*rep.b1_is_a0) throw CheckFailure("paschke_specialize: B_1 differs from A_0");
    if (!*rep.ideal_matches) throw CheckFailure("paschke_specialize: ideal generated by A_1 A_1 differs from I_0");
  }
  rep.lines = hexagon("A_0", "A x| Z_2", "A_0/J", ledger.a0, rep.crossed, rep.quotient);
  rep.lines.push_back("B_1 = A_0, J = I_0 = A_1 A_1");
  return rep;
}

}  // namespace crossedk
