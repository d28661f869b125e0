#pragma once

#include <memory>
#include <span>
#include <vector>

#include "crossedk/types.hpp"

namespace crossedk {

/// Hilbert-Schmidt inner product <X, Y> = trace(Y* X).
Complex hs_inner(const Matrix& x, const Matrix& y);

/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const Matrix& x);

/// A linear subspace of N x N complex matrices, held as an orthonormal basis
/// (Hilbert-Schmidt geometry). The basis is stored column-wise as vectorized
/// matrices in a single frame so projections are one matrix-vector product.
///
/// Values are immutable and cheap to copy.
class OperatorSubspace {
 public:
  /// The zero subspace of M_N.
  explicit OperatorSubspace(Index ambient_dim = 0, double tol = kDefaultTol);

  Index ambient_dim() const { return data_->ambient; }
  Index dim() const { return data_->frame.cols(); }
  double tol() const { return data_->tol; }
  bool is_zero() const { return dim() == 0; }

  /// Basis element i as an N x N matrix.
  Matrix element(Index i) const;
  std::vector<Matrix> basis() const;

  /// N^2 x dim matrix whose columns are the vectorized basis elements.
  const Matrix& frame() const { return data_->frame; }

  /// Coefficients of the orthogonal projection of x onto the subspace.
  Vector coordinates(const Matrix& x) const;
  Matrix from_coordinates(const Vector& c) const;
  Matrix project(const Matrix& x) const;

  /// Same subspace with every basis element replaced by its adjoint.
  OperatorSubspace adjoint() const;

  /// Same basis, different tolerance.
  OperatorSubspace with_tol(double tol) const;

  /// Wraps a frame whose columns are already orthonormal. Caller guarantees it.
  static OperatorSubspace from_orthonormal_frame(Index ambient_dim, Matrix frame,
                                                 double tol);

 private:
  struct Data {
    Index ambient = 0;
    double tol = kDefaultTol;
    Matrix frame;
  };
  explicit OperatorSubspace(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Orthonormal basis for span(mats). An input whose residual after projection
/// onto the previously accepted vectors is <= tol * max(largest input norm,
/// reference_norm) is dropped. Callers whose inputs come from unit-norm data pass
/// reference_norm = 1 so that a batch made entirely of rounding noise collapses to 0.
/// Gram-Schmidt with column pivoting: the input with the largest residual goes next.
OperatorSubspace orthonormalize(std::span<const Matrix> mats, Index ambient_dim,
                                double tol = kDefaultTol, double reference_norm = 0.0);

/// Span of all pairwise products xy, x in S, y in T.
OperatorSubspace span_product(const OperatorSubspace& s, const OperatorSubspace& t);

OperatorSubspace span_sum(const OperatorSubspace& s, const OperatorSubspace& t);

/// ||X - proj_S(X)||_HS.
double membership_residual(const OperatorSubspace& s, const Matrix& x);

/// membership_residual(S, X) <= tol * ||X||.
bool contains(const OperatorSubspace& s, const Matrix& x);

/// T is a subspace of S: every basis element of T lies in S within tol.
bool contains(const OperatorSubspace& s, const OperatorSubspace& t);

/// Largest membership residual of T's basis elements in S.
double worst_residual(const OperatorSubspace& s, const OperatorSubspace& t);

bool subspace_equal(const OperatorSubspace& s, const OperatorSubspace& t);

/// Throws InputError when the two subspaces live in different ambient spaces.
void require_same_ambient(const OperatorSubspace& s, const OperatorSubspace& t,
                          const char* what);

}  // namespace crossedk
