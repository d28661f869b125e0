#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "crossedk/k0.hpp"
#include "crossedk/zn_action.hpp"

namespace crossedk {

/// sum_i coeffs[i] * lambda_i, coefficients in A.
struct CrossedElement {
  std::vector<Matrix> coeffs;
};

/// (a_i lambda_i)(b_j lambda_j) = a_i alpha^i(b_j) lambda_{i+j}.
CrossedElement crossed_multiply(const ZnAction& act, const CrossedElement& x, const CrossedElement& y);

/// Component m of x* is alpha^m(a_{n-m}*), from lambda_i a = alpha^i(a) lambda_i
/// and lambda_i* = lambda_{-i}.
CrossedElement crossed_adjoint(const ZnAction& act, const CrossedElement& x);

/// n x n block matrix with block (k, l) = sum_i xi^{-il} P_{l-k}(a_i).
Matrix theta(const ZnAction& act, const CrossedElement& x);

/// a_i = (1/n) sum_{k,l} xi^{li} M_{kl}. Throws InputError "not in image
/// subalgebra" when some block (k, l) is not in A_{l-k}.
CrossedElement theta_inverse(const ZnAction& act, const Matrix& m);

/// Coefficients with standard complex Gaussian coordinates in A's basis.
CrossedElement random_crossed_element(const ZnAction& act, Rng& rng);

/// Worst relative residuals over random samples:
/// theta(xy) vs theta(x)theta(y), theta(x*) vs theta(x)*, theta^{-1}(theta(x)) vs x.
struct ThetaResiduals {
  double homomorphism = 0;
  double star = 0;
  double round_trip = 0;
};
ThetaResiduals theta_residuals(const ZnAction& act, Rng& rng, int samples = 4);

/// A subspace of M_m(M_N) that is a direct sum of per-block subspaces
/// S_{rc} in M_N. Every algebra of the tower has this shape, and products
/// of such spaces are computed block by block:
/// (S T)_{rc} = sum_j S_{rj} T_{jc}.
class BlockSubspace {
 public:
  BlockSubspace(int size, Index block_ambient, double tol);

  int size() const { return size_; }
  Index block_ambient() const { return block_ambient_; }
  Index ambient_dim() const { return size_ * block_ambient_; }
  double tol() const { return tol_; }

  const OperatorSubspace& at(int r, int c) const { return blocks_[index(r, c)]; }
  void set(int r, int c, OperatorSubspace s);

  Index dim() const;

  /// Same subspace as a plain OperatorSubspace of M_{m N}.
  OperatorSubspace to_dense() const;

  /// Places x in block (r, c) of an m N x m N zero matrix.
  Matrix embed(int r, int c, const Matrix& x) const;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * size_ + c); }
  int size_;
  Index block_ambient_;
  double tol_;
  std::vector<OperatorSubspace> blocks_;
};

/// Memoized span products keyed on subspace identity, so repeated eigenspace
/// products across the tower are computed once.
class ProductMemo {
 public:
  OperatorSubspace product(const OperatorSubspace& a, const OperatorSubspace& b);

 private:
  struct Entry {
    OperatorSubspace left, right, value;
  };
  std::map<std::pair<const void*, const void*>, Entry> cache_;
};

BlockSubspace block_product(const BlockSubspace& s, const BlockSubspace& t, ProductMemo& memo);
BlockSubspace block_adjoint(const BlockSubspace& s);
/// Worst membership residual of `inner`'s blocks inside `outer`'s.
double block_worst_residual(const BlockSubspace& outer, const BlockSubspace& inner);
bool block_equal(const BlockSubspace& s, const BlockSubspace& t);

/// Closure of a block-pattern algebra under products and adjoints, and the
/// unit diag(u, ..., u) given by its N x N block u. Equivalent to
/// verify_algebra on the dense form.
AlgebraReport verify_block_algebra(const BlockSubspace& s, const Matrix& block_unit, ProductMemo& memo);

/// Block (r, c) = A_{(c - r) mod n}, r, c < n - k.
BlockSubspace corner_pattern(const ZnAction& act, int k);

/// corner_pattern(k) with block (0, 0) replaced by `ideal`.
BlockSubspace ideal_J_pattern(const ZnAction& act, int k, const OperatorSubspace& ideal);

/// B_0 = theta(A x| Z_n), built from eigenspaces.
FiniteAlgebra image_algebra(const ZnAction& act);

/// B_k, the (n-k) x (n-k) lower-right corner of B_0, in M_{(n-k)N}.
FiniteAlgebra corner_B(const ZnAction& act, int k);

/// J_k: B_k with its (0,0) entry restricted from A_0 to I_k.
OperatorSubspace ideal_J(const ZnAction& act, int k);

/// x in M_{(m-1)N} placed as 0 + x in M_{mN}.
Matrix embed_lower_right(const Matrix& x, Index block_ambient);

/// Everything the recursion needs for one action: B_0..B_{n-1},
/// I_0..I_{n-2}, J_0..J_{n-2}.
struct CornerTower {
  ZnAction action;
  std::vector<BlockSubspace> b_patterns;
  std::vector<FiniteAlgebra> b;
  std::vector<OperatorSubspace> i;
  std::vector<BlockSubspace> j_patterns;
  std::vector<FiniteAlgebra> j;
  std::shared_ptr<ProductMemo> memo;

  int n() const { return action.order(); }
};

/// Builds the tower and checks that every J_k is an ideal of B_k block by block.
CornerTower build_tower(const ZnAction& act);

/// 0 -> J_k -> B_k -> A_0/I_k -> 0, with both realizations of the quotient.
struct AlgebraExactSequence {
  int k = 0;
  Quotient quotient;        // B_k / J_k as a corner of B_k
  Quotient fixed_quotient;  // A_0 / I_k as a corner of A_0
  Index dim_ideal = 0;
  Index dim_middle = 0;
  Index dim_quotient = 0;
  bool blocks_match = false;  // same Wedderburn dimensions
  bool kernel_match = false;  // kernel of A_0 -> B_k -> B_k/J_k is exactly I_k
};

/// Throws CheckFailure if the two quotient realizations disagree.
AlgebraExactSequence algebra_exact_sequence(const CornerTower& tower, int k);
AlgebraExactSequence algebra_exact_sequence(const ZnAction& act, int k);

/// B_{k+1} as a full corner of J_k.
struct FullCornerReport {
  int k = 0;
  bool corner = false;     // p J_k p = 0 + B_{k+1}
  bool full = false;       // span J_k B_{k+1} J_k = J_k
  bool bijection = false;  // K_0 multiplicity matrix of B_{k+1} -> J_k is a permutation
  double corner_residual = 0;
  double full_residual = 0;
  IntMatrix multiplicity;

  bool passed() const { return corner && full && bijection; }
};

FullCornerReport full_corner_check(const CornerTower& tower, int k);
FullCornerReport full_corner_check(const ZnAction& act, int k);

}  // namespace crossedk
