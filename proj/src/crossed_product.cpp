#include "crossedk/crossed_product.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace crossedk {

namespace {

void require_element(const ZnAction& act, const CrossedElement& x, const char* what) {
  const Index n = act.algebra().ambient_dim();
  if (static_cast<int>(x.coeffs.size()) != act.order()) {
    throw InputError(std::string(what) + ": expected " + std::to_string(act.order()) + " coefficients");
  }
  for (const auto& a : x.coeffs) {
    if (a.rows() != n || a.cols() != n) throw InputError(std::string(what) + ": coefficient shape mismatch");
  }
}

Matrix block_unit(const Matrix& u, int m) {
  const Index n = u.rows();
  Matrix out = Matrix::Zero(m * n, m * n);
  for (int r = 0; r < m; ++r) out.block(r * n, r * n, n, n) = u;
  return out;
}

const void* key(const OperatorSubspace& s) { return s.frame().data(); }

}  // namespace

CrossedElement crossed_multiply(const ZnAction& act, const CrossedElement& x, const CrossedElement& y) {
  require_element(act, x, "crossed_multiply");
  require_element(act, y, "crossed_multiply");
  const int n = act.order();
  const Index dim = act.algebra().ambient_dim();
  CrossedElement z{std::vector<Matrix>(static_cast<std::size_t>(n), Matrix::Zero(dim, dim))};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      z.coeffs[static_cast<std::size_t>(act.mod(i + j))] +=
          x.coeffs[static_cast<std::size_t>(i)] * act.apply(y.coeffs[static_cast<std::size_t>(j)], i);
    }
  }
  return z;
}

CrossedElement crossed_adjoint(const ZnAction& act, const CrossedElement& x) {
  require_element(act, x, "crossed_adjoint");
  const int n = act.order();
  CrossedElement z;
  for (int m = 0; m < n; ++m) {
    z.coeffs.push_back(act.apply(x.coeffs[static_cast<std::size_t>(act.mod(n - m))].adjoint(), m));
  }
  return z;
}

Matrix theta(const ZnAction& act, const CrossedElement& x) {
  require_element(act, x, "theta");
  const int n = act.order();
  const Index dim = act.algebra().ambient_dim();
  // parts[s][i] = P_s(a_i)
  std::vector<std::vector<Matrix>> parts(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < n; ++i) parts[static_cast<std::size_t>(s)].push_back(act.project(s, x.coeffs[static_cast<std::size_t>(i)]));
  }
  Matrix out = Matrix::Zero(n * dim, n * dim);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const auto& p = parts[static_cast<std::size_t>(act.mod(l - k))];
      auto blk = out.block(k * dim, l * dim, dim, dim);
      for (int i = 0; i < n; ++i) blk += act.xi_power(-static_cast<long>(i) * l) * p[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

CrossedElement theta_inverse(const ZnAction& act, const Matrix& m) {
  const int n = act.order();
  const Index dim = act.algebra().ambient_dim();
  if (m.rows() != n * dim || m.cols() != n * dim) throw InputError("theta_inverse: shape mismatch");
  // Measured against the whole matrix: a block that should vanish carries only rounding noise.
  const double cut = act.algebra().tol() * m.norm();
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (membership_residual(act.eigenspace(l - k), m.block(k * dim, l * dim, dim, dim)) > cut) {
        throw InputError("not in image subalgebra (block " + std::to_string(k) + "," + std::to_string(l) + ")");
      }
    }
  }
  CrossedElement x;
  for (int i = 0; i < n; ++i) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) a += act.xi_power(static_cast<long>(l) * i) * m.block(k * dim, l * dim, dim, dim);
    x.coeffs.push_back(a / static_cast<double>(n));
  }
  return x;
}

CrossedElement random_crossed_element(const ZnAction& act, Rng& rng) {
  const auto& s = act.algebra().space();
  std::normal_distribution<double> gauss;
  CrossedElement x;
  for (int i = 0; i < act.order(); ++i) {
    Vector c(s.dim());
    for (Index j = 0; j < s.dim(); ++j) c(j) = Complex(gauss(rng), gauss(rng));
    x.coeffs.push_back(s.from_coordinates(c));
  }
  return x;
}

namespace {

double coeff_norm(const CrossedElement& x) {
  double sq = 0;
  for (const auto& a : x.coeffs) sq += a.squaredNorm();
  return std::sqrt(sq);
}

double relative(double residual, double scale) { return scale > 0 ? residual / scale : residual; }

}  // namespace

ThetaResiduals theta_residuals(const ZnAction& act, Rng& rng, int samples) {
  ThetaResiduals r;
  for (int t = 0; t < samples; ++t) {
    const CrossedElement x = random_crossed_element(act, rng);
    const CrossedElement y = random_crossed_element(act, rng);
    const Matrix tx = theta(act, x);
    const Matrix ty = theta(act, y);
    const Matrix txy = theta(act, crossed_multiply(act, x, y));
    r.homomorphism = std::max(r.homomorphism, relative((txy - tx * ty).norm(), tx.norm() * ty.norm()));
    r.star = std::max(r.star, relative((theta(act, crossed_adjoint(act, x)) - tx.adjoint()).norm(), tx.norm()));
    const CrossedElement back = theta_inverse(act, tx);
    double sq = 0;
    for (std::size_t i = 0; i < back.coeffs.size(); ++i) sq += (back.coeffs[i] - x.coeffs[i]).squaredNorm();
    r.round_trip = std::max(r.round_trip, relative(std::sqrt(sq), coeff_norm(x)));
  }
  return r;
}

BlockSubspace::BlockSubspace(int size, Index block_ambient, double tol)
    : size_(size), block_ambient_(block_ambient), tol_(tol),
      blocks_(static_cast<std::size_t>(size * size), OperatorSubspace(block_ambient, tol)) {
  if (size <= 0) throw InputError("BlockSubspace: size must be positive");
}

void BlockSubspace::set(int r, int c, OperatorSubspace s) {
  if (s.ambient_dim() != block_ambient_) throw InputError("BlockSubspace: block ambient mismatch");
  blocks_[index(r, c)] = std::move(s);
}

Index BlockSubspace::dim() const {
  Index d = 0;
  for (const auto& b : blocks_) d += b.dim();
  return d;
}

Matrix BlockSubspace::embed(int r, int c, const Matrix& x) const {
  const Index n = block_ambient_;
  Matrix out = Matrix::Zero(ambient_dim(), ambient_dim());
  out.block(r * n, c * n, n, n) = x;
  return out;
}

OperatorSubspace BlockSubspace::to_dense() const {
  const Index n = block_ambient_;
  const Index big = ambient_dim();
  Matrix frame = Matrix::Zero(big * big, dim());
  Index col = 0;
  for (int r = 0; r < size_; ++r) {
    for (int c = 0; c < size_; ++c) {
      const auto& s = at(r, c);
      for (Index k = 0; k < s.dim(); ++k, ++col) {
        const Matrix e = s.element(k);
        // Column-major vec of the embedded block.
        for (Index j = 0; j < n; ++j) {
          frame.col(col).segment((c * n + j) * big + r * n, n) = e.col(j);
        }
      }
    }
  }
  return OperatorSubspace::from_orthonormal_frame(big, std::move(frame), tol_);
}

OperatorSubspace ProductMemo::product(const OperatorSubspace& a, const OperatorSubspace& b) {
  if (a.dim() == 0 || b.dim() == 0) return OperatorSubspace(a.ambient_dim(), a.tol());
  const auto k = std::make_pair(key(a), key(b));
  auto it = cache_.find(k);
  if (it == cache_.end()) it = cache_.emplace(k, Entry{a, b, span_product(a, b)}).first;
  return it->second.value;
}

BlockSubspace block_product(const BlockSubspace& s, const BlockSubspace& t, ProductMemo& memo) {
  if (s.size() != t.size() || s.block_ambient() != t.block_ambient()) {
    throw InputError("block_product: pattern shape mismatch");
  }
  const int m = s.size();
  BlockSubspace out(m, s.block_ambient(), s.tol());
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      std::vector<Matrix> gens;
      for (int j = 0; j < m; ++j) {
        const auto p = memo.product(s.at(r, j), t.at(j, c));
        for (Index q = 0; q < p.dim(); ++q) gens.push_back(p.element(q));
      }
      out.set(r, c, orthonormalize(gens, s.block_ambient(), s.tol(), 1.0));
    }
  }
  return out;
}

BlockSubspace block_adjoint(const BlockSubspace& s) {
  BlockSubspace out(s.size(), s.block_ambient(), s.tol());
  for (int r = 0; r < s.size(); ++r)
    for (int c = 0; c < s.size(); ++c) out.set(c, r, s.at(r, c).adjoint());
  return out;
}

double block_worst_residual(const BlockSubspace& outer, const BlockSubspace& inner) {
  double worst = 0;
  for (int r = 0; r < outer.size(); ++r)
    for (int c = 0; c < outer.size(); ++c)
      worst = std::max(worst, worst_residual(outer.at(r, c), inner.at(r, c)));
  return worst;
}

bool block_equal(const BlockSubspace& s, const BlockSubspace& t) {
  if (s.size() != t.size()) return false;
  for (int r = 0; r < s.size(); ++r)
    for (int c = 0; c < s.size(); ++c)
      if (!subspace_equal(s.at(r, c), t.at(r, c))) return false;
  return true;
}

AlgebraReport verify_block_algebra(const BlockSubspace& s, const Matrix& u, ProductMemo& memo) {
  AlgebraReport rep;
  const int m = s.size();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      rep.star_residual = std::max(rep.star_residual, worst_residual(s.at(c, r), s.at(r, c).adjoint()));
      for (int j = 0; j < m; ++j) {
        rep.product_residual =
            std::max(rep.product_residual, worst_residual(s.at(r, c), memo.product(s.at(r, j), s.at(j, c))));
      }
      for (Index q = 0; q < s.at(r, c).dim(); ++q) {
        const Matrix x = s.at(r, c).element(q);
        rep.unit_residual = std::max({rep.unit_residual, (u * x - x).norm(), (x * u - x).norm()});
      }
    }
    rep.unit_residual = std::max(rep.unit_residual, membership_residual(s.at(r, r), u) / std::max(1.0, u.norm()));
  }
  rep.unit_residual = std::max({rep.unit_residual, (u - u.adjoint()).norm(), (u * u - u).norm()});
  const double tol = s.tol();
  rep.passed = rep.product_residual <= tol && rep.star_residual <= tol && rep.unit_residual <= tol;
  return rep;
}

BlockSubspace corner_pattern(const ZnAction& act, int k) {
  const int n = act.order();
  if (k < 0 || k > n - 1) throw InputError("corner_B: k must lie in 0..n-1");
  const int m = n - k;
  BlockSubspace p(m, act.algebra().ambient_dim(), act.algebra().tol());
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) p.set(r, c, act.eigenspace(c - r));
  return p;
}

BlockSubspace ideal_J_pattern(const ZnAction& act, int k, const OperatorSubspace& ideal) {
  if (k < 0 || k > act.order() - 2) throw InputError("ideal_J: k must lie in 0..n-2");
  BlockSubspace p = corner_pattern(act, k);
  p.set(0, 0, ideal);
  return p;
}

FiniteAlgebra image_algebra(const ZnAction& act) { return corner_B(act, 0); }

FiniteAlgebra corner_B(const ZnAction& act, int k) {
  const BlockSubspace p = corner_pattern(act, k);
  return FiniteAlgebra(p.to_dense(), block_unit(act.algebra().unit(), p.size()), act.algebra().seed());
}

OperatorSubspace ideal_J(const ZnAction& act, int k) {
  return ideal_J_pattern(act, k, act.ideal_I(k)).to_dense();
}

Matrix embed_lower_right(const Matrix& x, Index block_ambient) {
  const Index big = x.rows() + block_ambient;
  Matrix out = Matrix::Zero(big, big);
  out.bottomRightCorner(x.rows(), x.cols()) = x;
  return out;
}

CornerTower build_tower(const ZnAction& act) {
  const int n = act.order();
  const auto seed = act.algebra().seed();
  CornerTower t{act, {}, {}, {}, {}, {}, std::make_shared<ProductMemo>()};
  for (int k = 0; k < n; ++k) {
    t.b_patterns.push_back(corner_pattern(act, k));
    t.b.emplace_back(t.b_patterns.back().to_dense(), block_unit(act.algebra().unit(), n - k), seed);
  }
  for (int k = 0; k + 2 <= n; ++k) {
    t.i.push_back(act.ideal_I(k));
    t.j_patterns.push_back(ideal_J_pattern(act, k, t.i.back()));
    const auto& jp = t.j_patterns.back();
    const auto& bp = t.b_patterns[static_cast<std::size_t>(k)];
    const double tol = bp.tol();
    if (block_worst_residual(jp, block_product(bp, jp, *t.memo)) > tol ||
        block_worst_residual(jp, block_product(jp, bp, *t.memo)) > tol ||
        block_worst_residual(jp, block_adjoint(jp)) > tol) {
      throw CheckFailure("ideal_J: J_" + std::to_string(k) + " is not a *-closed ideal of B_" + std::to_string(k));
    }
    t.j.push_back(FiniteAlgebra::from_subspace(jp.to_dense(), seed));
  }
  return t;
}

AlgebraExactSequence algebra_exact_sequence(const CornerTower& tower, int k) {
  const int n = tower.n();
  if (k < 0 || k > n - 2) throw InputError("algebra_exact_sequence: k must lie in 0..n-2");
  const auto ks = static_cast<std::size_t>(k);
  const FiniteAlgebra& middle = tower.b[ks];
  const FiniteAlgebra& ideal = tower.j[ks];
  const FiniteAlgebra& fixed = tower.action.fixed_point_algebra();

  AlgebraExactSequence seq{k, corner_quotient(middle, ideal), quotient_by_ideal(fixed, tower.i[ks])};
  seq.dim_ideal = ideal.dim();
  seq.dim_middle = middle.dim();
  seq.dim_quotient = seq.quotient.algebra.dim();

  auto sorted_dims = [](const FiniteAlgebra& a) {
    auto d = a.wedderburn().dims;
    std::sort(d.begin(), d.end());
    return d;
  };
  seq.blocks_match = sorted_dims(seq.quotient.algebra) == sorted_dims(seq.fixed_quotient.algebra);

  // Kernel of A_0 -> B_k -> B_k / J_k, x placed in block (0, 0).
  const auto& qspace = seq.quotient.algebra.space();
  const Index d0 = fixed.dim();
  const Index nn = fixed.ambient_dim();
  Matrix phi(qspace.dim(), d0);
  for (Index c = 0; c < d0; ++c) {
    Matrix x = Matrix::Zero(middle.ambient_dim(), middle.ambient_dim());
    x.topLeftCorner(nn, nn) = fixed.space().element(c);
    phi.col(c) = qspace.coordinates(seq.quotient.apply(x));
  }
  const Matrix ker = null_space(phi, 10.0 * fixed.tol(), 1.0);
  std::vector<Matrix> kernel_elems;
  for (Index c = 0; c < ker.cols(); ++c) kernel_elems.push_back(fixed.space().from_coordinates(ker.col(c)));
  seq.kernel_match = subspace_equal(orthonormalize(kernel_elems, nn, fixed.tol(), 1.0), tower.i[ks]);

  if (!seq.blocks_match || !seq.kernel_match) {
    throw CheckFailure("algebra_exact_sequence: B_" + std::to_string(k) + "/J_" + std::to_string(k) +
                       " does not match A_0/I_" + std::to_string(k));
  }
  return seq;
}

AlgebraExactSequence algebra_exact_sequence(const ZnAction& act, int k) {
  return algebra_exact_sequence(build_tower(act), k);
}

FullCornerReport full_corner_check(const CornerTower& tower, int k) {
  const int n = tower.n();
  if (k < 0 || k > n - 2) throw InputError("full_corner_check: k must lie in 0..n-2");
  const auto ks = static_cast<std::size_t>(k);
  const BlockSubspace& j = tower.j_patterns[ks];
  const BlockSubspace& next = tower.b_patterns[ks + 1];
  const int m = j.size();

  BlockSubspace shifted(m, j.block_ambient(), j.tol());
  BlockSubspace compressed(m, j.block_ambient(), j.tol());
  for (int r = 1; r < m; ++r) {
    for (int c = 1; c < m; ++c) {
      shifted.set(r, c, next.at(r - 1, c - 1));
      compressed.set(r, c, j.at(r, c));
    }
  }

  FullCornerReport rep;
  rep.k = k;
  rep.corner_residual = std::max(block_worst_residual(shifted, compressed), block_worst_residual(compressed, shifted));
  rep.corner = block_equal(shifted, compressed);

  const BlockSubspace span = block_product(block_product(j, shifted, *tower.memo), j, *tower.memo);
  rep.full_residual = std::max(block_worst_residual(span, j), block_worst_residual(j, span));
  rep.full = block_equal(span, j);

  const Index nn = j.block_ambient();
  const GroupHom inclusion = induced_k0_map([nn](const Matrix& x) { return embed_lower_right(x, nn); },
                                            tower.b[ks + 1], tower.j[ks]);
  rep.multiplicity = inclusion.matrix();
  rep.bijection = is_permutation(rep.multiplicity);
  return rep;
}

FullCornerReport full_corner_check(const ZnAction& act, int k) {
  return full_corner_check(build_tower(act), k);
}

}  // namespace crossedk
