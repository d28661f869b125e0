#include <doctest.h>

#include <vector>

#include "crossedk/zn_action.hpp"

using namespace crossedk;

namespace {

Matrix diag3(Complex a, Complex b, Complex c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

ZnAction shift3() {
  auto a = build_multimatrix({1, 1, 1});
  return make_action(a, {Matrix::Identity(3, 3), {1, 2, 0}}, 3);
}

}  // namespace

TEST_CASE("shift on C^3: averaging projection") {
  auto act = shift3();
  Matrix p0 = act.project(0, diag3(1, 0, 0));
  CHECK((p0 - diag3(1, 1, 1) / 3.0).norm() < 1e-12);
  for (int k = 0; k < 3; ++k) CHECK(act.eigenspace(k).dim() == 1);
  CHECK(act.fixed_point_algebra().dim() == 1);
}

TEST_CASE("eigenspaces are eigenspaces") {
  auto act = shift3();
  for (int k = 0; k < 3; ++k) {
    Matrix x = act.eigenspace(k).element(0);
    CHECK((act.apply(x) - act.xi_power(k) * x).norm() < 1e-12);
  }
  auto r = projection_residuals(act);
  CHECK(r.idempotent < 1e-12);
  CHECK(r.resolution < 1e-12);
  CHECK(r.eigen < 1e-12);
  CHECK(grading_residual(act) < 1e-12);
  CHECK(adjoint_symmetry_residual(act) < 1e-12);
}

TEST_CASE("trivial action: everything is fixed") {
  auto a = build_multimatrix({2});
  auto act = make_action(a, {Matrix::Identity(2, 2), {0}}, 3);
  CHECK(act.eigenspace(0).dim() == 4);
  CHECK(act.eigenspace(1).dim() == 0);
  CHECK(act.eigenspace(2).dim() == 0);
  CHECK(act.ideal_I(0).dim() == 0);
}

TEST_CASE("swap on C^2: I_0 is all of A_0") {
  auto a = build_multimatrix({1, 1});
  auto act = make_action(a, {Matrix::Identity(2, 2), {1, 0}}, 2);
  CHECK(act.eigenspace(0).dim() == 1);
  CHECK(act.eigenspace(1).dim() == 1);
  CHECK(subspace_equal(act.ideal_I(0), act.eigenspace(0)));
}

TEST_CASE("xi exponent relabels eigenspaces") {
  auto a = build_multimatrix({1, 1, 1});
  auto act1 = make_action(a, {Matrix::Identity(3, 3), {1, 2, 0}}, 3, 1);
  auto act2 = make_action(a, {Matrix::Identity(3, 3), {1, 2, 0}}, 3, 2);
  CHECK(subspace_equal(act1.eigenspace(1), act2.eigenspace(2)));
  CHECK(subspace_equal(act1.eigenspace(2), act2.eigenspace(1)));
}

TEST_CASE("actions that do not have order n are rejected") {
  auto a = build_multimatrix({2});
  Matrix u = Matrix::Identity(2, 2);
  u(1, 1) = Complex(0, 1);
  CHECK_THROWS_WITH_AS(make_action(a, {u, {0}}, 2), doctest::Contains("order does not divide n"),
                       CheckFailure);
  // Same unitary, order 4 divides n = 4.
  CHECK_NOTHROW(make_action(a, {u, {0}}, 4));
}

TEST_CASE("non-automorphisms are rejected") {
  auto a = build_multimatrix({1, 1});
  auto half = [](const Matrix& x) -> Matrix { return 0.5 * x; };
  CHECK_THROWS_AS(ZnAction::from_map(a, half, 2), CheckFailure);
}

TEST_CASE("input validation") {
  auto a = build_multimatrix({1, 2});
  CHECK_THROWS_AS(make_action(a, {Matrix::Identity(3, 3), {1, 0}}, 2), InputError);  // unequal sizes
  CHECK_THROWS_AS(make_action(a, {Matrix::Identity(2, 2), {0, 1}}, 2), InputError);  // wrong shape
  CHECK_THROWS_AS(make_action(a, {Matrix::Identity(3, 3), {0, 1}}, 1), InputError);
  CHECK_THROWS_AS(make_action(a, {Matrix::Identity(3, 3), {0, 1}}, 4, 2), InputError);  // gcd(2, 4) != 1
}

TEST_CASE("random actions are valid") {
  Rng rng(11);
  for (int n : {2, 3, 4, 6}) {
    std::vector<int> layout{1, 1, 2, 2, 3};
    auto spec = random_action_spec(layout, n, rng);
    auto act = make_action(build_multimatrix(layout), spec, n);
    CHECK(act.report().order < 1e-9);
    Matrix u = random_unitary(4, rng);
    CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() < 1e-12);
  }
}

TEST_CASE("I_0 and I_1 coincide for commutative n = 3 examples") {
  // Computed separately from their definitions, never assumed equal.
  auto act = shift3();
  CHECK(subspace_equal(act.ideal_I(0), act.ideal_I(1)));
  Rng rng(41);
  std::vector<int> layout{1, 1, 1, 1, 1, 1};
  for (int t = 0; t < 5; ++t) {
    auto a = make_action(build_multimatrix(layout), random_action_spec(layout, 3, rng), 3);
    CHECK(subspace_equal(a.ideal_I(0), a.ideal_I(1)));
  }
}

TEST_CASE("I_0 and I_1 for an inner action on M_3") {
  // diag(1, w, w^2): both A_1 A_2 and A_2 A_1 are the diagonal.
  auto a = build_multimatrix({3});
  const Complex w = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
  Matrix u = Matrix::Zero(3, 3);
  u(0, 0) = 1.0;
  u(1, 1) = w;
  u(2, 2) = w * w;
  auto act = make_action(a, {u, {0}}, 3);
  CHECK(act.ideal_I(1).dim() == 3);
  CHECK(subspace_equal(act.ideal_I(0), act.ideal_I(1)));
}
