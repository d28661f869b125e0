#include "crossedk/zn_action.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace crossedk {

namespace {

void require_order(int n) {
  if (n < 2) throw InputError("action order n must be at least 2");
}

}  // namespace

int ZnAction::mod(long k) const {
  const long n = impl_->n;
  return static_cast<int>(((k % n) + n) % n);
}

Complex ZnAction::xi_power(long k) const {
  const long n = impl_->n;
  const long e = ((k * impl_->xi_exponent) % n + n) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
}

ZnAction ZnAction::from_map(const FiniteAlgebra& a,
                            const std::function<Matrix(const Matrix&)>& alpha, int n,
                            int xi_exponent) {
  require_order(n);
  if (std::gcd(xi_exponent, n) != 1) {
    throw InputError("xi exponent " + std::to_string(xi_exponent) + " is not coprime to n = " +
                     std::to_string(n));
  }
  const auto& s = a.space();
  const Index d = s.dim();
  const double tol = s.tol();
  const auto basis = s.basis();

  ActionReport rep;
  std::vector<Matrix> images;
  images.reserve(basis.size());
  Matrix t(d, d);
  for (Index i = 0; i < d; ++i) {
    images.push_back(alpha(basis[i]));
    rep.invariance = std::max(rep.invariance, membership_residual(s, images.back()));
    t.col(i) = s.coordinates(images.back());
  }
  if (rep.invariance > tol) {
    throw CheckFailure("not an automorphism of A (image residual " + std::to_string(rep.invariance) + ")");
  }
  for (Index i = 0; i < d; ++i) {
    rep.star = std::max(rep.star, (alpha(basis[i].adjoint()) - images[i].adjoint()).norm());
    for (Index j = 0; j < d; ++j) {
      rep.multiplicative = std::max(
          rep.multiplicative, (alpha(basis[i] * basis[j]) - images[i] * images[j]).norm());
    }
  }
  if (rep.star > tol || rep.multiplicative > tol) {
    throw CheckFailure("not an automorphism of A (multiplicative residual " +
                       std::to_string(rep.multiplicative) + ", star residual " +
                       std::to_string(rep.star) + ")");
  }

  auto impl = std::make_shared<Impl>(Impl{a, n, xi_exponent, {}, {}, {}, a, rep});
  impl->powers.push_back(Matrix::Identity(d, d));
  for (int p = 1; p <= n; ++p) impl->powers.push_back(t * impl->powers.back());
  // Coordinates are orthonormal, so column norms of T^n - I are HS residuals.
  if (d > 0) {
    impl->report.order =
        (impl->powers[static_cast<std::size_t>(n)] - Matrix::Identity(d, d)).colwise().norm().maxCoeff();
  }
  if (impl->report.order > tol) {
    throw CheckFailure("order does not divide n (residual " + std::to_string(impl->report.order) + ")");
  }
  impl->powers.pop_back();

  ZnAction act(impl);
  for (int k = 0; k < n; ++k) {
    Matrix pk = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) pk += act.xi_power(-static_cast<long>(k) * i) * impl->powers[i];
    pk /= static_cast<double>(n);
    std::vector<Matrix> image;
    for (Index c = 0; c < d; ++c) image.push_back(s.from_coordinates(pk.col(c)));
    impl->eigenspaces.push_back(orthonormalize(image, s.ambient_dim(), tol, 1.0));
    impl->projectors.push_back(std::move(pk));
  }
  impl->fixed = FiniteAlgebra(impl->eigenspaces[0], a.unit(), a.seed());
  return act;
}

Matrix ZnAction::apply(const Matrix& x, long p) const {
  const auto& s = impl_->algebra.space();
  return s.from_coordinates(impl_->powers[static_cast<std::size_t>(mod(p))] * s.coordinates(x));
}

Matrix ZnAction::project(long k, const Matrix& x) const {
  const auto& s = impl_->algebra.space();
  if (!contains(s, x)) throw InputError("project: element is not in the algebra");
  return s.from_coordinates(impl_->projectors[static_cast<std::size_t>(mod(k))] * s.coordinates(x));
}

const OperatorSubspace& ZnAction::eigenspace(long k) const {
  return impl_->eigenspaces[static_cast<std::size_t>(mod(k))];
}

OperatorSubspace ZnAction::ideal_I(int k) const {
  const int n = impl_->n;
  if (k < 0 || k > n - 2) throw InputError("ideal_I: k must lie in 0..n-2");
  OperatorSubspace acc(impl_->algebra.ambient_dim(), impl_->algebra.tol());
  for (int i = 1; i <= n - 1 - k; ++i) {
    acc = span_sum(acc, span_product(eigenspace(i), eigenspace(n - i)));
  }
  if (!ideal_check(impl_->fixed, acc)) {
    throw CheckFailure("ideal_I: I_" + std::to_string(k) + " failed the ideal check");
  }
  return acc;
}

Matrix permute_blocks(const std::vector<int>& layout, const std::vector<int>& perm, const Matrix& x) {
  std::vector<int> offset(layout.size(), 0);
  for (std::size_t i = 1; i < layout.size(); ++i) offset[i] = offset[i - 1] + layout[i - 1];
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto to = static_cast<std::size_t>(perm[i]);
    const int d = layout[i];
    out.block(offset[to], offset[to], d, d) = x.block(offset[i], offset[i], d, d);
  }
  return out;
}

ZnAction make_action(const FiniteAlgebra& a, const ActionSpec& spec, int n, int xi_exponent) {
  require_order(n);
  const auto& layout = a.layout();
  const Index N = a.ambient_dim();
  if (layout.empty()) throw InputError("make_action: algebra is not in standard block position");
  if (spec.unitary.rows() != N || spec.unitary.cols() != N) {
    throw InputError("make_action: unitary must be " + std::to_string(N) + "x" + std::to_string(N));
  }
  if ((spec.unitary * spec.unitary.adjoint() - Matrix::Identity(N, N)).norm() >
      a.tol() * std::sqrt(static_cast<double>(N))) {
    throw InputError("make_action: matrix is not unitary within tolerance");
  }
  const auto& perm = spec.block_permutation;
  if (perm.size() != layout.size()) throw InputError("make_action: permutation length != block count");
  std::vector<int> seen(layout.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] < 0 || perm[i] >= static_cast<int>(layout.size()) || seen[perm[i]]++) {
      throw InputError("make_action: block_permutation is not a permutation");
    }
    if (layout[static_cast<std::size_t>(perm[i])] != layout[i]) {
      throw InputError("make_action: permutation does not preserve block dimensions");
    }
  }
  const Matrix u = spec.unitary;
  auto alpha = [&](const Matrix& x) -> Matrix {
    return u * permute_blocks(layout, perm, x) * u.adjoint();
  };
  return ZnAction::from_map(a, alpha, n, xi_exponent);
}

ProjectionResiduals projection_residuals(const ZnAction& act) {
  ProjectionResiduals r;
  const int n = act.order();
  const auto& s = act.algebra().space();
  for (Index b = 0; b < s.dim(); ++b) {
    const Matrix x = s.element(b);
    Matrix total = Matrix::Zero(x.rows(), x.cols());
    for (int k = 0; k < n; ++k) {
      const Matrix pk = act.project(k, x);
      total += pk;
      r.eigen = std::max(r.eigen, (act.apply(pk) - act.xi_power(k) * pk).norm());
      for (int j = 0; j < n; ++j) {
        const Matrix pjk = act.project(j, pk);
        r.idempotent = std::max(r.idempotent, (j == k ? (pjk - pk) : pjk).norm());
      }
    }
    r.resolution = std::max(r.resolution, (total - x).norm());
  }
  return r;
}

double grading_residual(const ZnAction& act) {
  const int n = act.order();
  double worst = 0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      worst = std::max(worst, worst_residual(act.eigenspace(j + k),
                                             span_product(act.eigenspace(j), act.eigenspace(k))));
    }
  }
  return worst;
}

double adjoint_symmetry_residual(const ZnAction& act) {
  const int n = act.order();
  double worst = 0;
  for (int k = 0; k < n; ++k) {
    const auto star = act.eigenspace(k).adjoint();
    const auto& other = act.eigenspace(n - k);
    if (star.dim() != other.dim()) return 1.0;
    worst = std::max({worst, worst_residual(other, star), worst_residual(star, other)});
  }
  return worst;
}

}  // namespace crossedk
