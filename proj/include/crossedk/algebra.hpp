#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "crossedk/subspace.hpp"

namespace crossedk {

/// Block structure of a finite-dimensional C*-algebra: block i is a full
/// dims[i] x dims[i] matrix algebra, with central projection central[i] and a
/// minimal projection minimal[i] inside it.
struct WedderburnData {
  std::vector<int> dims;
  std::vector<Matrix> central;
  std::vector<Matrix> minimal;

  int block_count() const { return static_cast<int>(dims.size()); }
};

/// A *-closed matrix subalgebra with its own unit (which need not be the
/// ambient identity). Block data is computed on first request and then shared
/// by every copy of the value.
class FiniteAlgebra {
 public:
  FiniteAlgebra(OperatorSubspace space, Matrix unit, std::uint64_t seed = kDefaultSeed);

  /// Standard block-diagonal position: block i occupies the next layout[i] rows/columns.
  FiniteAlgebra(OperatorSubspace space, Matrix unit, std::vector<int> layout,
                std::uint64_t seed);

  /// Takes the unit to be the orthogonal projection onto the joint range of the
  /// elements, which is the unit of any *-closed subalgebra of M_N.
  static FiniteAlgebra from_subspace(OperatorSubspace space,
                                     std::uint64_t seed = kDefaultSeed);

  const OperatorSubspace& space() const { return space_; }
  const Matrix& unit() const { return unit_; }
  Index dim() const { return space_.dim(); }
  Index ambient_dim() const { return space_.ambient_dim(); }
  double tol() const { return space_.tol(); }
  std::uint64_t seed() const { return seed_; }

  /// Block sizes when the algebra sits in standard multimatrix position, else empty.
  const std::vector<int>& layout() const { return layout_; }

  /// Same algebra with a different seed for its randomized decisions.
  FiniteAlgebra with_seed(std::uint64_t seed) const;

  /// Wedderburn data, computed once with this algebra's seed.
  const WedderburnData& wedderburn() const;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<WedderburnData> data;
  };
  OperatorSubspace space_;
  Matrix unit_;
  std::vector<int> layout_;
  std::uint64_t seed_;
  std::shared_ptr<Cache> cache_;
};

/// Block-diagonal sum of full matrix algebras M_{d_1} + ... + M_{d_m} in M_{sum d_i}.
FiniteAlgebra build_multimatrix(const std::vector<int>& dims, double tol = kDefaultTol,
                                std::uint64_t seed = kDefaultSeed);

struct AlgebraReport {
  double product_residual = 0;
  double star_residual = 0;
  double unit_residual = 0;
  bool passed = false;
};

/// Exhaustive closure check over all basis pairs. Never throws on failure.
AlgebraReport verify_algebra(const FiniteAlgebra& a);

/// {z in A : zx = xz for all x in A}.
OperatorSubspace center(const FiniteAlgebra& a, Rng& rng);

/// Block decomposition from the spectral decomposition of a generic
/// self-adjoint central element. Retries up to five times on a degenerate
/// sample.
WedderburnData wedderburn(const FiniteAlgebra& a, Rng& rng);

/// Minimal projection of block `block` (from the cached decomposition).
Matrix minimal_projection(const FiniteAlgebra& a, int block);

/// dim(pAp) for a projection p in A, computed as the trace of x -> pxp.
double compressed_dim(const FiniteAlgebra& a, const Matrix& p);

/// True iff AI and IA both lie in I. Throws InputError if I is not inside A.
bool ideal_check(const FiniteAlgebra& a, const OperatorSubspace& ideal);

/// A/I realized as the complementary corner (u - z)A(u - z), z the unit of I.
struct Quotient {
  FiniteAlgebra algebra;
  Matrix complement;  // u - z

  Matrix apply(const Matrix& x) const { return complement * x * complement; }
};

Quotient quotient_by_ideal(const FiniteAlgebra& a, const OperatorSubspace& ideal);

/// The corner construction alone, for an ideal already known to be a *-closed
/// two-sided ideal of A. Still enforces dim(A/I) = dim A - dim I.
Quotient corner_quotient(const FiniteAlgebra& a, const FiniteAlgebra& ideal);

/// Real spanning set of the self-adjoint part: (x + x*)/2 and (x - x*)/2i per basis x.
std::vector<Matrix> self_adjoint_parts(const OperatorSubspace& s);

/// Null space of a linear map given by its matrix, as orthonormal columns.
/// Singular values <= rel_tol * max(largest singular value, reference) count as
/// zero; reference is the expected size of the map so that pure noise has no rank.
Matrix null_space(const Matrix& m, double rel_tol, double reference = 0.0);

}  // namespace crossedk
