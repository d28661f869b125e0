#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "crossedk/algebra.hpp"

namespace crossedk {

/// Concrete description of an automorphism of a multimatrix algebra in
/// standard position: alpha(x) = U pi(x) U*, where pi moves block i of x to
/// block position block_permutation[i].
struct ActionSpec {
  Matrix unitary;
  std::vector<int> block_permutation;
};

/// Residuals measured while validating an action.
struct ActionReport {
  double invariance = 0;      // worst distance of alpha(basis) from A
  double multiplicative = 0;  // worst ||alpha(xy) - alpha(x)alpha(y)||
  double star = 0;            // worst ||alpha(x*) - alpha(x)*||
  double order = 0;           // worst ||alpha^n(x) - x||
};

/// A validated action of Z_n on a finite-dimensional algebra, with its
/// eigenspace decomposition A_0, ..., A_{n-1} for xi = exp(2 pi i m / n).
class ZnAction {
 public:
  /// Builds from an arbitrary linear map on the algebra. Throws CheckFailure
  /// with "not an automorphism of A" or "order does not divide n".
  static ZnAction from_map(const FiniteAlgebra& a, const std::function<Matrix(const Matrix&)>& alpha,
                           int n, int xi_exponent = 1);

  const FiniteAlgebra& algebra() const { return impl_->algebra; }
  int order() const { return impl_->n; }
  int xi_exponent() const { return impl_->xi_exponent; }
  Complex xi() const { return xi_power(1); }

  /// xi^k for any integer k.
  Complex xi_power(long k) const;

  /// Matrix of alpha in the algebra's orthonormal basis.
  const Matrix& map_matrix() const { return impl_->powers[1 % impl_->n]; }

  /// alpha^p(x) for x in A (p taken mod n).
  Matrix apply(const Matrix& x, long p = 1) const;

  /// P_k(x) = (1/n) sum_i xi^{-ki} alpha^i(x). Throws InputError if x is not in A.
  Matrix project(long k, const Matrix& x) const;

  /// A_k = {x : alpha(x) = xi^k x}.
  const OperatorSubspace& eigenspace(long k) const;

  /// The fixed-point algebra A_0 with the unit of A.
  const FiniteAlgebra& fixed_point_algebra() const { return impl_->fixed; }

  /// I_k = sum_{i=1}^{n-1-k} A_i A_{n-i}, an ideal of A_0, for 0 <= k <= n-2.
  OperatorSubspace ideal_I(int k) const;

  const ActionReport& report() const { return impl_->report; }

  /// Index reduced to 0..n-1.
  int mod(long k) const;

 private:
  struct Impl {
    FiniteAlgebra algebra;
    int n = 2;
    int xi_exponent = 1;
    std::vector<Matrix> powers;      // T^0 .. T^{n-1}
    std::vector<Matrix> projectors;  // P_0 .. P_{n-1} in coordinates
    std::vector<OperatorSubspace> eigenspaces;
    FiniteAlgebra fixed;
    ActionReport report;
  };
  explicit ZnAction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Validates `spec` against a standard-position algebra and builds the action.
ZnAction make_action(const FiniteAlgebra& a, const ActionSpec& spec, int n, int xi_exponent = 1);

/// pi(x) of an ActionSpec, without the unitary.
Matrix permute_blocks(const std::vector<int>& layout, const std::vector<int>& perm, const Matrix& x);

/// Haar-distributed random unitary of size n.
Matrix random_unitary(Index n, Rng& rng);

/// Random block permutation (cycle lengths dividing n, equal block sizes only)
/// with a block-diagonal unitary chosen so that alpha^n = id.
ActionSpec random_action_spec(const std::vector<int>& layout, int n, Rng& rng);

/// Worst residuals of P_j P_k = delta_jk P_k, sum_k P_k = id and
/// alpha(P_k x) = xi^k P_k x over the algebra's basis.
struct ProjectionResiduals {
  double idempotent = 0;
  double resolution = 0;
  double eigen = 0;
};
ProjectionResiduals projection_residuals(const ZnAction& act);

/// Worst membership residual of A_j A_k in A_{j+k}, over all j, k.
double grading_residual(const ZnAction& act);

/// Worst residual of A_k* against A_{n-k} (both directions), over all k.
double adjoint_symmetry_residual(const ZnAction& act);

}  // namespace crossedk
