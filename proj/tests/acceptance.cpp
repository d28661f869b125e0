// One line per acceptance criterion; exit status is nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "crossedk/recursion.hpp"

using namespace crossedk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int criterion, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", criterion, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

KPair free_k0(int rank) { return {AbelianGroup::free(rank), AbelianGroup::zero()}; }

ZnAction permutation_action(const std::vector<int>& layout, std::vector<int> perm, int n) {
  auto a = build_multimatrix(layout);
  return make_action(a, {Matrix::Identity(a.ambient_dim(), a.ambient_dim()), std::move(perm)}, n);
}

// Random algebras with block sizes <= 3 and N <= 12, paired with random actions.
struct Example {
  std::vector<int> layout;
  int n;
  ZnAction act;
};

std::vector<Example> battery(int count, std::uint64_t seed) {
  Rng rng(seed);
  const int orders[] = {2, 3, 4, 6};
  std::vector<Example> out;
  for (int e = 0; e < count; ++e) {
    const int n = orders[e % 4];
    std::vector<int> layout;
    int total = 0;
    std::uniform_int_distribution<int> blocks(1, 5), size(1, 3);
    const int m = blocks(rng);
    for (int b = 0; b < m; ++b) {
      const int d = size(rng);
      if (total + d > 12) break;
      layout.push_back(d);
      total += d;
    }
    // Repeat a block so that nontrivial permutations are possible.
    if (total + layout.front() <= 12) layout.push_back(layout.front());
    std::sort(layout.begin(), layout.end());
    auto spec = random_action_spec(layout, n, rng);
    out.push_back({layout, n, make_action(build_multimatrix(layout), spec, n)});
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

}  // namespace

int main() {
  constexpr int kBattery = 60;
  constexpr double kRel = 1e-8;
  const auto t_build = Clock::now();
  const auto examples = battery(kBattery, 20240501);
  const double build_time = seconds_since(t_build);

  report(1, "symbolic n=3 from (Z,0), [(Z,0),(Z,0)]", [] {
    const auto t0 = Clock::now();
    auto ledger = run_recursion_symbolic(3, free_k0(1), {free_k0(1), free_k0(1)});
    const double dt = seconds_since(t0);
    const bool ok = ledger.steps.size() == 2 && ledger.steps[0].solution.middle &&
                    ledger.steps[0].solution.middle->k0 == AbelianGroup::free(2) && ledger.result() &&
                    *ledger.result() == free_k0(3) && dt < 1.0;
    return Outcome{ok, "K0(B_1) = " + (ledger.steps[0].solution.middle ? ledger.steps[0].solution.middle->k0.to_string() : "?") +
                           ", final " + (ledger.result() ? ledger.result()->to_string() : "?") + ", " + fmt(dt) + " s"};
  });

  report(2, "theta battery", [&] {
    const auto t0 = Clock::now();
    Rng rng(99);
    ThetaResiduals worst;
    for (const auto& ex : examples) {
      auto r = theta_residuals(ex.act, rng, 4);
      worst.homomorphism = std::max(worst.homomorphism, r.homomorphism);
      worst.star = std::max(worst.star, r.star);
      worst.round_trip = std::max(worst.round_trip, r.round_trip);
    }
    const double dt = seconds_since(t0) + build_time;
    const bool ok = worst.homomorphism <= kRel && worst.star <= kRel && worst.round_trip <= kRel && dt <= 60.0;
    return Outcome{ok, std::to_string(examples.size()) + " examples, hom " + fmt(worst.homomorphism) + ", star " +
                           fmt(worst.star) + ", round trip " + fmt(worst.round_trip) + ", " + fmt(dt) + " s"};
  });

  report(3, "projection identities on the battery", [&] {
    double worst = 0;
    for (const auto& ex : examples) {
      auto r = projection_residuals(ex.act);
      // measured on unit-norm basis elements, so already relative
      worst = std::max({worst, r.idempotent, r.resolution, r.eigen});
    }
    return Outcome{worst <= kRel, "worst " + fmt(worst)};
  });

  std::vector<CornerTower> towers;
  report(4, "grading, adjoint symmetry, ideals, dimension count", [&] {
    double grading = 0, adjoint = 0;
    bool ideals = true, dims = true;
    for (const auto& ex : examples) {
      grading = std::max(grading, grading_residual(ex.act));
      adjoint = std::max(adjoint, adjoint_symmetry_residual(ex.act));
      const auto& a0 = ex.act.fixed_point_algebra();
      for (int k = 0; k <= ex.n - 2; ++k) ideals = ideals && ideal_check(a0, ex.act.ideal_I(k));
      towers.push_back(build_tower(ex.act));  // throws unless every J_k is an ideal
      for (int k = 0; k <= ex.n - 2; ++k) {
        auto seq = algebra_exact_sequence(towers.back(), k);
        dims = dims && seq.dim_middle == seq.dim_ideal + seq.dim_quotient &&
               seq.dim_quotient == a0.dim() - towers.back().i[k].dim() && seq.blocks_match && seq.kernel_match;
      }
    }
    const bool ok = grading <= kRel && adjoint <= kRel && ideals && dims;
    return Outcome{ok, "grading " + fmt(grading) + ", adjoint " + fmt(adjoint) + ", I_k/J_k ideals " +
                           (ideals ? "yes" : "no") + ", dims " + (dims ? "yes" : "no")};
  });

  report(5, "full corner check for every k", [&] {
    int checked = 0, bad = 0;
    for (const auto& t : towers)
      for (int k = 0; k <= t.n() - 2; ++k) {
        ++checked;
        if (!full_corner_check(t, k).passed()) ++bad;
      }
    return Outcome{bad == 0 && checked > 0, std::to_string(checked) + " checks, " + std::to_string(bad) + " failed"};
  });

  std::vector<RecursionLedger> ledgers;
  report(6, "concrete recursion matches the oracle", [&] {
    struct Named {
      const char* name;
      ZnAction act;
      KPair expected;
    };
    std::vector<Named> named{
        {"trivial on C, n=3", permutation_action({1}, {0}, 3), free_k0(3)},
        {"trivial on C, n=4", permutation_action({1}, {0}, 4), free_k0(4)},
        {"swap on C^2", permutation_action({1, 1}, {1, 0}, 2), free_k0(1)},
        {"shift on C^3", permutation_action({1, 1, 1}, {1, 2, 0}, 3), free_k0(1)},
    };
    std::string detail;
    bool ok = true;
    for (const auto& c : named) {
      auto l = run_recursion_concrete(c.act);
      const bool good = l.result() && *l.result() == c.expected && l.oracle_match();
      ok = ok && good;
      if (!good) detail += std::string(c.name) + " wrong; ";
    }
    int mismatches = 0;
    for (const auto& t : towers) {
      ledgers.push_back(run_recursion_concrete(t));
      if (!ledgers.back().oracle_match()) ++mismatches;
    }
    ok = ok && mismatches == 0;
    detail += std::to_string(named.size()) + " named, " + std::to_string(ledgers.size()) + " random, " +
              std::to_string(mismatches) + " mismatches";
    return Outcome{ok, detail};
  });

  report(7, "every concrete step is exact", [&] {
    int steps = 0, bad = 0;
    for (const auto& l : ledgers)
      for (const auto& s : l.steps) {
        ++steps;
        if (!s.concrete || !all_exact(s.concrete->junctions)) ++bad;
      }
    return Outcome{bad == 0 && steps > 0, std::to_string(steps) + " steps, " + std::to_string(bad) + " not exact"};
  });

  report(8, "n = 2 reduces to one step with B_1 = A_0 and I_0 = A_1 A_1", [] {
    bool ok = true;
    std::string detail;
    for (auto [name, act] : {std::pair<const char*, ZnAction>{"swap on C^2", permutation_action({1, 1}, {1, 0}, 2)},
                             {"trivial on M_2", permutation_action({2}, {0}, 2)},
                             {"trivial on C", permutation_action({1}, {0}, 2)}}) {
      auto tower = build_tower(act);
      auto ledger = run_recursion_concrete(tower);
      auto p = paschke_specialize(ledger, tower);
      const bool good = ledger.steps.size() == 1 && p.b1_is_a0.value_or(false) && p.ideal_matches.value_or(false) &&
                        ledger.oracle_match();
      ok = ok && good;
      detail += std::string(name) + (good ? " ok; " : " FAILED; ");
    }
    return Outcome{ok, detail};
  });

  report(9, "Smith normal form", [] {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> size(1, 8);
    std::uniform_int_distribution<long> entry(-20, 20);
    int bad = 0;
    constexpr int kTrials = 300;
    for (int t = 0; t < kTrials; ++t) {
      IntMatrix m(size(rng), size(rng));
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
      auto f = smith_normal_form(m);
      const Integer du = determinant(f.u), dv = determinant(f.v);
      if (!(f.u * m * f.v == f.s) || (du != 1 && du != -1) || (dv != 1 && dv != -1)) ++bad;
    }
    const bool small = smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).s == IntMatrix{{1, 0}, {0, 6}};
    return Outcome{bad == 0 && small, std::to_string(kTrials) + " random matrices, " + std::to_string(bad) +
                                          " failed; diag(2,3) -> diag(1,6) " + (small ? "yes" : "no")};
  });

  return failures == 0 ? 0 : 1;
}
