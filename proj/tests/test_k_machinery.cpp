#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "crossedk/k0.hpp"
#include "crossedk/zn_action.hpp"

using namespace crossedk;

namespace {

IntMatrix random_int_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_int_distribution<long> entry(-20, 20);
  std::bernoulli_distribution sparse(0.3);
  IntMatrix m(size(rng), size(rng));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = sparse(rng) ? 0 : entry(rng);
  return m;
}

bool is_unit(const Integer& d) { return d == 1 || d == -1; }

}  // namespace

TEST_CASE("smith normal form of diag(2, 3)") {
  auto f = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(f.s == (IntMatrix{{1, 0}, {0, 6}}));
  CHECK(f.u * IntMatrix{{2, 0}, {0, 3}} * f.v == f.s);
}

TEST_CASE("smith normal form of zero and identity") {
  auto z = smith_normal_form(IntMatrix::zero(2, 3));
  CHECK(z.s.is_zero());
  CHECK(z.rank() == 0);
  auto i = smith_normal_form(IntMatrix::identity(4));
  CHECK(i.s == IntMatrix::identity(4));
  CHECK(i.rank() == 4);
}

TEST_CASE("smith normal form property test") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 250; ++trial) {
    IntMatrix m = random_int_matrix(rng);
    auto f = smith_normal_form(m);
    REQUIRE(f.u * m * f.v == f.s);
    REQUIRE(is_unit(determinant(f.u)));
    REQUIRE(is_unit(determinant(f.v)));
    REQUIRE(f.u * f.u_inv == IntMatrix::identity(m.rows()));
    REQUIRE(f.v * f.v_inv == IntMatrix::identity(m.cols()));
    auto d = f.diagonal();
    for (int r = 0; r < f.s.rows(); ++r)
      for (int c = 0; c < f.s.cols(); ++c)
        if (r != c) REQUIRE(f.s(r, c) == 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      REQUIRE(d[i] >= 0);
      if (i + 1 < d.size() && d[i] != 0) REQUIRE(mod_floor(d[i + 1], d[i]) == 0);
      if (d[i] == 0 && i + 1 < d.size()) REQUIRE(d[i + 1] == 0);
    }
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix{{2, 1}, {7, 4}}) == 1);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
}

TEST_CASE("abelian group presentations") {
  CHECK(present(IntMatrix{{6}}).group == AbelianGroup::cyclic(6));
  CHECK(present(IntMatrix{{2, 0}, {0, 3}}).group == AbelianGroup::cyclic(6));
  CHECK(present(IntMatrix::zero(2, 0)).group == AbelianGroup::free(2));
  CHECK(present(IntMatrix{{1}}).group.is_zero());
  CHECK(AbelianGroup(2, {2, 4}).to_string() == "Z^2 + Z/2 + Z/4");
  CHECK(AbelianGroup::zero().to_string() == "0");
  CHECK_THROWS_AS(AbelianGroup(0, {4, 2}), InputError);
  CHECK(direct_sum(AbelianGroup::cyclic(2), AbelianGroup::cyclic(3)) == AbelianGroup::cyclic(6));
}

TEST_CASE("cokernel of multiplication by 6") {
  GroupHom six(AbelianGroup::free(1), AbelianGroup::free(1), IntMatrix{{6}});
  auto kic = kernel_image_cokernel(six);
  CHECK(kic.kernel.is_zero());
  CHECK(kic.image == AbelianGroup::free(1));
  CHECK(kic.cokernel == AbelianGroup::cyclic(6));
}

TEST_CASE("kernel, image and cokernel with torsion") {
  // Z -> Z/4, 1 -> 2: kernel 2Z, image Z/2, cokernel Z/2.
  GroupHom h(AbelianGroup::free(1), AbelianGroup::cyclic(4), IntMatrix{{2}});
  auto kic = kernel_image_cokernel(h);
  CHECK(kic.kernel == AbelianGroup::free(1));
  CHECK(kic.image == AbelianGroup::cyclic(2));
  CHECK(kic.cokernel == AbelianGroup::cyclic(2));
  // Z^2 -> Z, (a, b) -> a + b.
  GroupHom sum(AbelianGroup::free(2), AbelianGroup::free(1), IntMatrix{{1, 1}});
  auto k2 = kernel_image_cokernel(sum);
  CHECK(k2.kernel == AbelianGroup::free(1));
  CHECK(k2.cokernel.is_zero());
  // Z/2 -> Z/4, 1 -> 1 is not well defined.
  CHECK_THROWS_AS(GroupHom(AbelianGroup::cyclic(2), AbelianGroup::cyclic(4), IntMatrix{{1}}), InputError);
}

TEST_CASE("composition") {
  GroupHom two(AbelianGroup::free(1), AbelianGroup::free(1), IntMatrix{{2}});
  GroupHom three(AbelianGroup::free(1), AbelianGroup::free(1), IntMatrix{{3}});
  CHECK(compose(three, two).matrix() == IntMatrix{{6}});
  GroupHom to_z3(AbelianGroup::free(1), AbelianGroup::cyclic(3), IntMatrix{{1}});
  CHECK(kernel_image_cokernel(compose(to_z3, three)).image.is_zero());
}

TEST_CASE("exactness") {
  const auto z = AbelianGroup::free(1);
  const auto zero = AbelianGroup::zero();
  auto id = GroupHom::identity(z);
  // 0 -> Z -> Z -> 0
  std::vector<GroupHom> iso{GroupHom::zero(zero, z), id, GroupHom::zero(z, zero)};
  CHECK(all_exact(exactness_check(iso)));
  // 0 -> Z -2-> Z -> Z/2 -> 0
  GroupHom two(z, z, IntMatrix{{2}});
  GroupHom mod2(z, AbelianGroup::cyclic(2), IntMatrix{{1}});
  std::vector<GroupHom> ses{GroupHom::zero(zero, z), two, mod2, GroupHom::zero(AbelianGroup::cyclic(2), zero)};
  CHECK(all_exact(exactness_check(ses)));
  // 0 -> Z -0-> Z -> 0 fails at both ends.
  std::vector<GroupHom> bad{GroupHom::zero(zero, z), GroupHom::zero(z, z), GroupHom::zero(z, zero)};
  auto j = exactness_check(bad);
  CHECK_FALSE(all_exact(j));
  CHECK_FALSE(j[0].kernel_in_image);
  CHECK(j[0].image_in_kernel);
  std::vector<GroupHom> misfit{two, GroupHom::zero(AbelianGroup::free(2), z)};
  CHECK_THROWS_AS(exactness_check(misfit), InputError);
}

TEST_CASE("lattices") {
  Lattice l(IntMatrix{{2, 0}, {0, 3}});
  CHECK(l.rank() == 2);
  CHECK(l.contains({Integer(4), Integer(-3)}));
  CHECK_FALSE(l.contains({Integer(1), Integer(0)}));
  auto c = l.coordinates({Integer(4), Integer(-3)});
  auto back = l.basis() * [&] {
    IntMatrix v(2, 1);
    v(0, 0) = c[0];
    v(1, 0) = c[1];
    return v;
  }();
  CHECK(back(0, 0) == 4);
  CHECK(back(1, 0) == -3);
}

TEST_CASE("extension candidates") {
  auto c = extension_candidates(AbelianGroup::free(1), AbelianGroup::cyclic(2));
  REQUIRE(c);
  CHECK(c->size() == 2);
  auto has = [&](const AbelianGroup& g) { return std::find(c->begin(), c->end(), g) != c->end(); };
  CHECK(has(AbelianGroup(1, {2})));
  CHECK(has(AbelianGroup::free(1)));

  auto split = extension_candidates(AbelianGroup::free(2), AbelianGroup::free(1));
  REQUIRE(split);
  CHECK(*split == std::vector<AbelianGroup>{AbelianGroup::free(3)});

  auto coprime = extension_candidates(AbelianGroup::cyclic(2), AbelianGroup::cyclic(3));
  REQUIRE(coprime);
  CHECK(*coprime == std::vector<AbelianGroup>{AbelianGroup::cyclic(6)});

  auto z2z2 = extension_candidates(AbelianGroup::cyclic(2), AbelianGroup::cyclic(2));
  REQUIRE(z2z2);
  CHECK(z2z2->size() == 2);
}

TEST_CASE("K_0 of multimatrix algebras") {
  auto r = k0_of_algebra(build_multimatrix({1, 2, 3}));
  CHECK(r.k0 == AbelianGroup::free(3));
  CHECK(r.k1.is_zero());
}

TEST_CASE("C into M_2 as scalars induces multiplication by 2") {
  auto c = build_multimatrix({1});
  auto m2 = build_multimatrix({2});
  auto scalar = [](const Matrix& x) -> Matrix { return x(0, 0) * Matrix::Identity(2, 2); };
  auto h = induced_k0_map(scalar, c, m2);
  CHECK(h.matrix() == IntMatrix{{2}});
  auto corner = [](const Matrix& x) -> Matrix {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = x(0, 0);
    return m;
  };
  CHECK(induced_k0_map(corner, c, m2).matrix() == IntMatrix{{1}});
}

TEST_CASE("induced maps are functorial") {
  auto c = build_multimatrix({1});
  auto m2 = build_multimatrix({2});
  auto m2m4 = build_multimatrix({2, 4});
  auto f = [](const Matrix& x) -> Matrix { return x(0, 0) * Matrix::Identity(2, 2); };
  // M_2 -> M_2 + M_4, x -> x + diag(x, x).
  auto g = [](const Matrix& x) -> Matrix {
    Matrix m = Matrix::Zero(6, 6);
    m.block(0, 0, 2, 2) = x;
    m.block(2, 2, 2, 2) = x;
    m.block(4, 4, 2, 2) = x;
    return m;
  };
  auto gf = [&](const Matrix& x) -> Matrix { return g(f(x)); };
  auto kf = induced_k0_map(f, c, m2);
  auto kg = induced_k0_map(g, m2, m2m4);
  CHECK(compose(kg, kf) == induced_k0_map(gf, c, m2m4));
}

TEST_CASE("non-homomorphisms are detected") {
  auto c = build_multimatrix({1});
  auto m2 = build_multimatrix({2});
  auto half = [](const Matrix& x) -> Matrix { return 0.5 * x(0, 0) * Matrix::Identity(2, 2); };
  CHECK_THROWS_WITH_AS(induced_k0_map(half, c, m2), doctest::Contains("not a *-homomorphism"), CheckFailure);
  Rng rng(5);
  auto r = hom_residuals(half, c, rng);
  CHECK(r.multiplicative > 1e-3);
}

TEST_CASE("permutation matrices") {
  CHECK(is_permutation(IntMatrix{{0, 1}, {1, 0}}));
  CHECK_FALSE(is_permutation(IntMatrix{{1, 1}, {0, 1}}));
  CHECK_FALSE(is_permutation(IntMatrix{{2}}));
}
