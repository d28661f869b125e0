#include "crossedk/k0.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace crossedk {

K0Result k0_of_algebra(const FiniteAlgebra& a) {
  const int m = a.wedderburn().block_count();
  return K0Result{AbelianGroup::free(m), AbelianGroup::zero(), a};
}

GroupHom induced_k0_map(const AlgebraMap& phi, const FiniteAlgebra& source,
                        const FiniteAlgebra& target) {
  const auto& src = source.wedderburn();
  const auto& dst = target.wedderburn();
  const double tol = std::max(source.tol(), target.tol());
  IntMatrix m(dst.block_count(), src.block_count());
  for (int i = 0; i < src.block_count(); ++i) {
    const Matrix img = phi(src.minimal[static_cast<std::size_t>(i)]);
    const double scale = std::max(1.0, img.norm());
    if ((img * img - img).norm() > 10 * tol * scale || (img - img.adjoint()).norm() > 10 * tol * scale ||
        membership_residual(target.space(), img) > 10 * tol * scale) {
      throw CheckFailure("not a *-homomorphism within tolerance (image of a minimal projection "
                         "is not a projection of the target)");
    }
    for (int j = 0; j < dst.block_count(); ++j) {
      const Matrix& f = dst.central[static_cast<std::size_t>(j)];
      const double num = (f * img).trace().real();
      const double den = (f * dst.minimal[static_cast<std::size_t>(j)]).trace().real();
      const double ratio = num / den;
      const long r = std::lround(ratio);
      if (r < 0 || std::abs(ratio - static_cast<double>(r)) > 10 * tol * std::max(1.0, ratio)) {
        throw CheckFailure("not a *-homomorphism within tolerance (multiplicity " +
                           std::to_string(ratio) + ")");
      }
      m(j, i) = r;
    }
  }
  return GroupHom(AbelianGroup::free(src.block_count()), AbelianGroup::free(dst.block_count()),
                  std::move(m));
}

HomResiduals hom_residuals(const AlgebraMap& phi, const FiniteAlgebra& source, Rng& rng,
                           int samples) {
  HomResiduals r;
  const auto& s = source.space();
  std::normal_distribution<double> gauss;
  auto random_element = [&] {
    Vector c(s.dim());
    for (Index i = 0; i < s.dim(); ++i) c(i) = Complex(gauss(rng), gauss(rng));
    return s.from_coordinates(c.normalized());
  };
  for (int t = 0; t < samples && s.dim() > 0; ++t) {
    const Matrix x = random_element();
    const Matrix y = random_element();
    r.multiplicative = std::max(r.multiplicative, (phi(x * y) - phi(x) * phi(y)).norm());
    r.star = std::max(r.star, (phi(x.adjoint()) - phi(x).adjoint()).norm());
  }
  return r;
}

bool is_permutation(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i) {
    int row_ones = 0, col_ones = 0;
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0 && m(i, j) != 1) return false;
      row_ones += m(i, j) == 1;
      col_ones += m(j, i) == 1;
    }
    if (row_ones != 1 || col_ones != 1) return false;
  }
  return true;
}

}  // namespace crossedk
