#include "crossedk/abelian_group.hpp"

#include <algorithm>
#include <sstream>

#include <boost/integer/common_factor.hpp>

#include "crossedk/types.hpp"

namespace crossedk {

AbelianGroup::AbelianGroup(int rank, std::vector<Integer> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
  if (rank_ < 0) throw InputError("AbelianGroup: negative rank");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw InputError("AbelianGroup: invariant factors must be >= 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0) {
      throw InputError("AbelianGroup: invariant factors must form a divisibility chain");
    }
  }
}

AbelianGroup AbelianGroup::cyclic(const Integer& order) {
  if (order == 0) return free(1);
  if (order == 1) return zero();
  return AbelianGroup(0, {order});
}

Integer AbelianGroup::order_of(int i) const {
  const int t = static_cast<int>(torsion_.size());
  return i < t ? torsion_[static_cast<std::size_t>(i)] : Integer(0);
}

IntMatrix AbelianGroup::relations() const {
  const int g = generator_count();
  IntMatrix r(g, g);
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    r(static_cast<int>(i), static_cast<int>(i)) = torsion_[i];
  }
  return r;
}

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank_ > 0) {
    os << "Z";
    if (rank_ > 1) os << '^' << rank_;
    first = false;
  }
  for (const auto& t : torsion_) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

Presentation present(const IntMatrix& relations) {
  const int g = relations.rows();
  const SmithForm snf = smith_normal_form(relations);
  const auto diag = snf.diagonal();
  const int t = snf.rank();

  std::vector<int> rows;
  std::vector<Integer> torsion;
  for (int i = 0; i < t; ++i) {
    if (diag[static_cast<std::size_t>(i)] == 1) continue;
    rows.push_back(i);
    torsion.push_back(diag[static_cast<std::size_t>(i)]);
  }
  const int free_rank = g - t;
  for (int i = t; i < g; ++i) rows.push_back(i);

  Presentation p{AbelianGroup(free_rank, torsion), IntMatrix(static_cast<int>(rows.size()), g),
                 IntMatrix(g, static_cast<int>(rows.size()))};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int r = rows[k];
    const int kk = static_cast<int>(k);
    for (int j = 0; j < g; ++j) {
      Integer v = snf.u(r, j);
      if (k < torsion.size()) v = mod_floor(v, torsion[k]);
      p.to_canonical(kk, j) = v;
      p.from_canonical(j, kk) = snf.u_inv(j, r);
    }
  }
  return p;
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  const int ga = a.generator_count();
  const int gb = b.generator_count();
  IntMatrix r(ga + gb, ga + gb);
  for (int i = 0; i < ga; ++i) r(i, i) = a.order_of(i);
  for (int i = 0; i < gb; ++i) r(ga + i, ga + i) = b.order_of(i);
  return present(r).group;
}

GroupHom::GroupHom(AbelianGroup source, AbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count()) {
    throw InputError("GroupHom: matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + ", expected " +
                     std::to_string(target_.generator_count()) + "x" +
                     std::to_string(source_.generator_count()));
  }
  for (int r = 0; r < matrix_.rows(); ++r) {
    const Integer c = target_.order_of(r);
    for (int j = 0; j < matrix_.cols(); ++j) {
      if (c != 0) matrix_(r, j) = mod_floor(matrix_(r, j), c);
      const Integer d = source_.order_of(j);
      if (d == 0) continue;
      const Integer image = d * matrix_(r, j);
      const bool vanishes = c == 0 ? image == 0 : image % c == 0;
      if (!vanishes) throw InputError("GroupHom: not well defined on source torsion");
    }
  }
}

GroupHom GroupHom::zero(const AbelianGroup& source, const AbelianGroup& target) {
  return GroupHom(source, target, IntMatrix(target.generator_count(), source.generator_count()));
}

GroupHom GroupHom::identity(const AbelianGroup& g) {
  return GroupHom(g, g, IntMatrix::identity(g.generator_count()));
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!(f.target() == g.source())) throw InputError("compose: maps are not composable");
  return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

namespace {

// Columns of the target's nonzero relations, as a b x (#torsion) matrix.
IntMatrix torsion_relations(const AbelianGroup& g) {
  const int n = static_cast<int>(g.torsion().size());
  IntMatrix r(g.generator_count(), n);
  for (int i = 0; i < n; ++i) r(i, i) = g.torsion()[static_cast<std::size_t>(i)];
  return r;
}

std::vector<Integer> column(const IntMatrix& m, int j) {
  std::vector<Integer> v(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = m(i, j);
  return v;
}

}  // namespace

Lattice::Lattice(const IntMatrix& generators) : ambient_(generators.rows()) {
  const SmithForm snf = smith_normal_form(generators);
  rank_ = snf.rank();
  u_ = snf.u;
  diag_ = snf.diagonal();
  diag_.resize(static_cast<std::size_t>(rank_));
  basis_ = IntMatrix(ambient_, rank_);
  for (int j = 0; j < rank_; ++j)
    for (int i = 0; i < ambient_; ++i) basis_(i, j) = snf.u_inv(i, j) * diag_[static_cast<std::size_t>(j)];
}

bool Lattice::contains(const std::vector<Integer>& v) const {
  if (static_cast<int>(v.size()) != ambient_) throw InputError("Lattice: vector length mismatch");
  for (int i = 0; i < ambient_; ++i) {
    Integer w = 0;
    for (int j = 0; j < ambient_; ++j) w += u_(i, j) * v[static_cast<std::size_t>(j)];
    if (i < rank_) {
      if (w % diag_[static_cast<std::size_t>(i)] != 0) return false;
    } else if (w != 0) {
      return false;
    }
  }
  return true;
}

bool Lattice::contains(const Lattice& other) const {
  for (int j = 0; j < other.rank(); ++j) {
    if (!contains(column(other.basis(), j))) return false;
  }
  return true;
}

std::vector<Integer> Lattice::coordinates(const std::vector<Integer>& v) const {
  if (!contains(v)) throw InputError("Lattice: vector is not in the lattice");
  std::vector<Integer> c(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i) {
    Integer w = 0;
    for (int j = 0; j < ambient_; ++j) w += u_(i, j) * v[static_cast<std::size_t>(j)];
    c[static_cast<std::size_t>(i)] = w / diag_[static_cast<std::size_t>(i)];
  }
  return c;
}

Lattice kernel_lattice(const GroupHom& h) {
  const int a = h.source().generator_count();
  const IntMatrix c = h.matrix().hconcat(torsion_relations(h.target()));
  const SmithForm snf = smith_normal_form(c);
  const int r = snf.rank();
  const int cols = c.cols();
  IntMatrix gens(a, cols - r);
  for (int j = r; j < cols; ++j)
    for (int i = 0; i < a; ++i) gens(i, j - r) = snf.v(i, j);
  return Lattice(gens);
}

Lattice image_lattice(const GroupHom& h) {
  return Lattice(h.matrix().hconcat(torsion_relations(h.target())));
}

KernelImageCokernel kernel_image_cokernel(const GroupHom& h) {
  const Lattice ker = kernel_lattice(h);
  const IntMatrix src_rel = torsion_relations(h.source());
  IntMatrix rel_coords(ker.rank(), src_rel.cols());
  for (int j = 0; j < src_rel.cols(); ++j) {
    const auto c = ker.coordinates(column(src_rel, j));
    for (int i = 0; i < ker.rank(); ++i) rel_coords(i, j) = c[static_cast<std::size_t>(i)];
  }
  KernelImageCokernel out;
  out.kernel = present(rel_coords).group;
  out.image = present(ker.basis()).group;
  out.cokernel = present(h.matrix().hconcat(torsion_relations(h.target()))).group;
  return out;
}

std::vector<Junction> exactness_check(const std::vector<GroupHom>& chain, bool cyclic) {
  std::vector<Junction> out;
  const std::size_t m = chain.size();
  auto junction = [&](std::size_t i, std::size_t j) {
    const GroupHom& f = chain[i];
    const GroupHom& g = chain[j];
    if (!(f.target() == g.source())) {
      throw InputError("exactness_check: map " + std::to_string(i) + " is not composable with map " +
                       std::to_string(j));
    }
    const Lattice im = image_lattice(f);
    const Lattice ker = kernel_lattice(g);
    out.push_back(Junction{static_cast<int>(i) + 1, ker.contains(im), im.contains(ker)});
  };
  for (std::size_t i = 0; i + 1 < m; ++i) junction(i, i + 1);
  if (cyclic && m > 0) junction(m - 1, 0);
  return out;
}

bool all_exact(const std::vector<Junction>& junctions) {
  return std::all_of(junctions.begin(), junctions.end(), [](const Junction& j) { return j.exact(); });
}

std::optional<std::vector<AbelianGroup>> extension_candidates(const AbelianGroup& sub,
                                                              const AbelianGroup& quot,
                                                              long max_classes) {
  const int l = sub.generator_count();
  const int qt = static_cast<int>(quot.torsion().size());
  const int total = l + quot.generator_count();

  // Ext(Z/q, sub) = sub / q sub; one residue range per (quotient torsion, sub generator).
  std::vector<Integer> radix;
  Integer classes = 1;
  for (int i = 0; i < qt; ++i) {
    const Integer& q = quot.torsion()[static_cast<std::size_t>(i)];
    for (int j = 0; j < l; ++j) {
      const Integer o = sub.order_of(j);
      const Integer r = o == 0 ? q : boost::integer::gcd(o, q);
      radix.push_back(r);
      classes *= r;
      if (classes > max_classes) return std::nullopt;
    }
  }

  std::vector<AbelianGroup> found;
  std::vector<Integer> digits(radix.size(), 0);
  for (;;) {
    IntMatrix rel(total, l + qt);
    for (int j = 0; j < l; ++j) rel(j, j) = sub.order_of(j);
    for (int i = 0; i < qt; ++i) {
      rel(l + i, l + i) = quot.torsion()[static_cast<std::size_t>(i)];
      for (int j = 0; j < l; ++j) rel(j, l + i) = -digits[static_cast<std::size_t>(i * l + j)];
    }
    AbelianGroup e = present(rel).group;
    if (std::find(found.begin(), found.end(), e) == found.end()) found.push_back(std::move(e));

    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < radix[pos]) break;
      digits[pos++] = 0;
    }
    if (pos == digits.size()) break;
  }
  return found;
}

}  // namespace crossedk
