#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crossedk/integer_matrix.hpp"

namespace crossedk {

/// Finitely generated abelian group Z/t_1 + ... + Z/t_k + Z^rank in canonical
/// form: t_1 | t_2 | ... | t_k, every t_i >= 2. Canonical generators are
/// ordered torsion first, then free.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  /// Throws InputError unless torsion is a divisibility chain of entries >= 2.
  AbelianGroup(int rank, std::vector<Integer> torsion);

  static AbelianGroup free(int rank) { return AbelianGroup(rank, {}); }
  static AbelianGroup zero() { return AbelianGroup(); }
  static AbelianGroup cyclic(const Integer& order);

  int rank() const { return rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  int generator_count() const { return rank_ + static_cast<int>(torsion_.size()); }
  bool is_zero() const { return generator_count() == 0; }
  bool is_free() const { return torsion_.empty(); }

  /// Order of canonical generator i (0 for a free generator).
  Integer order_of(int i) const;

  /// Square diagonal relation matrix, zero columns for free generators.
  IntMatrix relations() const;

  bool operator==(const AbelianGroup&) const = default;

  /// "0", "Z", "Z^2 + Z/2" style rendering.
  std::string to_string() const;

 private:
  int rank_ = 0;
  std::vector<Integer> torsion_;
};

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

/// Z^g / (column span of relations), with the change of coordinates from the
/// g original generators to the canonical generators of the result.
struct Presentation {
  AbelianGroup group;
  IntMatrix to_canonical;    // canonical_gens x g
  IntMatrix from_canonical;  // g x canonical_gens (lifts of canonical generators)
};

Presentation present(const IntMatrix& relations);

/// Homomorphism between canonical groups: column j is the image of source
/// generator j in target coordinates, reduced modulo target torsion orders.
class GroupHom {
 public:
  /// Throws InputError on shape mismatch or if the matrix is not well defined
  /// on the source's torsion.
  GroupHom(AbelianGroup source, AbelianGroup target, IntMatrix matrix);

  static GroupHom zero(const AbelianGroup& source, const AbelianGroup& target);
  static GroupHom identity(const AbelianGroup& g);

  const AbelianGroup& source() const { return source_; }
  const AbelianGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  bool operator==(const GroupHom&) const = default;

 private:
  AbelianGroup source_;
  AbelianGroup target_;
  IntMatrix matrix_;
};

/// g after f.
GroupHom compose(const GroupHom& g, const GroupHom& f);

struct KernelImageCokernel {
  AbelianGroup kernel;
  AbelianGroup image;
  AbelianGroup cokernel;
};

KernelImageCokernel kernel_image_cokernel(const GroupHom& h);

/// A sublattice of Z^n, with exact membership testing and coordinates.
class Lattice {
 public:
  explicit Lattice(const IntMatrix& generators);

  int ambient() const { return ambient_; }
  int rank() const { return rank_; }
  bool contains(const std::vector<Integer>& v) const;
  bool contains(const Lattice& other) const;
  /// Coordinates of v in basis(); v must be contained.
  std::vector<Integer> coordinates(const std::vector<Integer>& v) const;
  /// Columns form a Z-basis.
  const IntMatrix& basis() const { return basis_; }

 private:
  int ambient_;
  int rank_;
  IntMatrix u_;
  std::vector<Integer> diag_;
  IntMatrix basis_;
};

/// Lattice of x in Z^a with h(x) = 0, where a = source generator count.
Lattice kernel_lattice(const GroupHom& h);

/// Lattice generated by the columns of h and the target's relations.
Lattice image_lattice(const GroupHom& h);

struct Junction {
  int index = 0;  // position of the middle group in the sequence
  bool image_in_kernel = false;
  bool kernel_in_image = false;
  bool exact() const { return image_in_kernel && kernel_in_image; }
};

/// Exactness at every junction of a composable chain h_0, h_1, ..., h_m: junction
/// i compares im h_i with ker h_{i+1}. With `cyclic`, also compares im h_m with ker h_0.
/// Throws InputError if consecutive maps are not composable.
std::vector<Junction> exactness_check(const std::vector<GroupHom>& chain, bool cyclic = false);

bool all_exact(const std::vector<Junction>& junctions);

/// Isomorphism types of every extension 0 -> sub -> E -> quot -> 0, one per
/// class in Ext(quot, sub) up to isomorphism of E. Empty optional when more than
/// `max_classes` classes would have to be enumerated.
std::optional<std::vector<AbelianGroup>> extension_candidates(const AbelianGroup& sub,
                                                              const AbelianGroup& quot,
                                                              long max_classes = 4096);

}  // namespace crossedk
