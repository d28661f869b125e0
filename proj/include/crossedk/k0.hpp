#pragma once

#include <functional>

#include "crossedk/abelian_group.hpp"
#include "crossedk/algebra.hpp"

namespace crossedk {

/// K_0 of a finite-dimensional algebra is free on the classes of one minimal
/// projection per Wedderburn block; K_1 vanishes.
struct K0Result {
  AbelianGroup k0;
  AbelianGroup k1;
  FiniteAlgebra basis;  // the algebra whose minimal projections generate k0
};

K0Result k0_of_algebra(const FiniteAlgebra& a);

/// A linear map between ambient matrix spaces, expected to be a *-homomorphism.
using AlgebraMap = std::function<Matrix(const Matrix&)>;

/// Map on K_0 induced by a *-homomorphism: entry (j, i) is
/// tr(f_j phi(p_i)) / tr(f_j q_j) with p_i the source minimal projections and
/// f_j, q_j the target central and minimal projections. Throws CheckFailure
/// "not a *-homomorphism within tolerance" if an entry is not a nonnegative
/// integer or phi(p_i) is not a projection in the target.
GroupHom induced_k0_map(const AlgebraMap& phi, const FiniteAlgebra& source,
                        const FiniteAlgebra& target);

/// Worst multiplicative and star residuals of phi on random elements of the source.
struct HomResiduals {
  double multiplicative = 0;
  double star = 0;
};
HomResiduals hom_residuals(const AlgebraMap& phi, const FiniteAlgebra& source, Rng& rng,
                           int samples = 8);

/// True iff an integer matrix is a permutation matrix.
bool is_permutation(const IntMatrix& m);

}  // namespace crossedk
