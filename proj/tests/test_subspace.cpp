#include <doctest.h>

#include <vector>

#include "crossedk/subspace.hpp"

using namespace crossedk;

namespace {

Matrix unit_matrix(Index n, Index r, Index c) {
  Matrix m = Matrix::Zero(n, n);
  m(r, c) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("hilbert-schmidt inner product and norm") {
  Matrix x = unit_matrix(2, 0, 1);
  Matrix y = unit_matrix(2, 0, 1) * Complex(0, 1);
  CHECK(std::abs(hs_inner(x, x) - 1.0) < 1e-15);
  // <X, iX> = trace((iX)* X) = -i
  CHECK(std::abs(hs_inner(x, y) - Complex(0, -1)) < 1e-15);
  CHECK(hs_norm(Matrix::Identity(3, 3)) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("near-duplicate inputs collapse") {
  Matrix e00 = unit_matrix(2, 0, 0);
  Matrix noisy = e00 + 1e-15 * unit_matrix(2, 1, 1);
  std::vector<Matrix> mats{e00, noisy};
  auto s = orthonormalize(mats, 2);
  CHECK(s.dim() == 1);
}

TEST_CASE("noise-only batch is zero against a reference") {
  std::vector<Matrix> mats{1e-14 * unit_matrix(2, 0, 1), 1e-13 * unit_matrix(2, 1, 0)};
  CHECK(orthonormalize(mats, 2, kDefaultTol, 1.0).dim() == 0);
  // Without a reference the cut is relative, so tiny but independent inputs survive.
  CHECK(orthonormalize(mats, 2).dim() == 2);
}

TEST_CASE("orthonormal frame") {
  std::vector<Matrix> mats{Matrix::Identity(2, 2), unit_matrix(2, 0, 0), unit_matrix(2, 0, 1) + unit_matrix(2, 0, 0)};
  auto s = orthonormalize(mats, 2);
  REQUIRE(s.dim() == 3);
  Matrix g = s.frame().adjoint() * s.frame();
  CHECK((g - Matrix::Identity(3, 3)).norm() < 1e-13);
  CHECK(contains(s, unit_matrix(2, 1, 1)));
  CHECK_FALSE(contains(s, unit_matrix(2, 1, 0)));
  CHECK(membership_residual(s, unit_matrix(2, 1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("coordinates round trip") {
  std::vector<Matrix> mats{unit_matrix(3, 0, 1), unit_matrix(3, 2, 2)};
  auto s = orthonormalize(mats, 3);
  Matrix x = 2.0 * unit_matrix(3, 0, 1) - Complex(0, 3) * unit_matrix(3, 2, 2);
  CHECK((s.from_coordinates(s.coordinates(x)) - x).norm() < 1e-14);
  Matrix outside = x + unit_matrix(3, 1, 0);
  CHECK((s.project(outside) - x).norm() < 1e-14);
}

TEST_CASE("products, sums and adjoints of subspaces") {
  std::vector<Matrix> upper{unit_matrix(2, 0, 1)};
  std::vector<Matrix> lower{unit_matrix(2, 1, 0)};
  auto u = orthonormalize(upper, 2);
  auto l = orthonormalize(lower, 2);
  auto ul = span_product(u, l);
  REQUIRE(ul.dim() == 1);
  CHECK(contains(ul, unit_matrix(2, 0, 0)));
  CHECK(span_product(u, u).dim() == 0);
  CHECK(span_sum(u, l).dim() == 2);
  CHECK(subspace_equal(u.adjoint(), l));
  CHECK(contains(span_sum(u, l), l));
  CHECK_FALSE(contains(u, l));
}

TEST_CASE("ambient mismatch is an input error") {
  OperatorSubspace a(2), b(3);
  CHECK_THROWS_AS(require_same_ambient(a, b, "test"), InputError);
}
