#include "crossedk/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace crossedk {

namespace {

constexpr int kMaxAttempts = 5;

Eigen::Map<const Vector> as_vector(const Matrix& x) { return {x.data(), x.size()}; }

// A basis element restricted to the bounding box of its nonzero entries.
// Tower algebras are block patterns, so products against these boxes are far
// cheaper than dense products in the ambient space.
struct Boxed {
  Index r0 = 0, c0 = 0;
  Matrix box;

  Index rows() const { return box.rows(); }
  Index cols() const { return box.cols(); }
};

Boxed boxed(const Matrix& x) {
  Index r0 = x.rows(), r1 = -1, c0 = x.cols(), c1 = -1;
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      if (x(i, j) == Complex(0.0, 0.0)) continue;
      r0 = std::min(r0, i);
      r1 = std::max(r1, i);
      c0 = std::min(c0, j);
      c1 = std::max(c1, j);
    }
  }
  if (r1 < 0) return Boxed{0, 0, Matrix(0, 0)};
  return Boxed{r0, c0, x.block(r0, c0, r1 - r0 + 1, c1 - c0 + 1)};
}

std::vector<Boxed> boxed_basis(const OperatorSubspace& s) {
  std::vector<Boxed> out;
  out.reserve(static_cast<std::size_t>(s.dim()));
  for (Index k = 0; k < s.dim(); ++k) out.push_back(boxed(s.element(k)));
  return out;
}

// z b - b z for a dense z and a boxed b.
Matrix commutator(const Matrix& z, const Boxed& b) {
  Matrix out = Matrix::Zero(z.rows(), z.cols());
  if (b.rows() == 0) return out;
  out.middleCols(b.c0, b.cols()).noalias() += z.middleCols(b.r0, b.rows()) * b.box;
  out.middleRows(b.r0, b.rows()).noalias() -= b.box * z.middleRows(b.c0, b.cols());
  return out;
}

// sum_k b_k b_k*
Matrix gram_of(const std::vector<Boxed>& basis, Index n) {
  Matrix gram = Matrix::Zero(n, n);
  for (const auto& b : basis) {
    if (b.rows() == 0) continue;
    gram.block(b.r0, b.r0, b.rows(), b.rows()).noalias() += b.box * b.box.adjoint();
  }
  return gram;
}

// Orthonormal basis of the range of a projection.
Matrix range_basis(const Matrix& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig((p + p.adjoint()) / 2.0);
  Index r = 0;
  for (Index k = 0; k < p.rows(); ++k) r += eig.eigenvalues()(k) > 0.5;
  return eig.eigenvectors().rightCols(r);
}

// trace of x -> p x p on span(basis), with p = V V*: sum_k ||V* b_k V||^2.
double compressed_trace(const std::vector<Boxed>& basis, const Matrix& v) {
  double acc = 0.0;
  for (const auto& b : basis) {
    if (b.rows() == 0) continue;
    acc += (v.middleRows(b.r0, b.rows()).adjoint() * b.box * v.middleRows(b.c0, b.cols())).squaredNorm();
  }
  return acc;
}

// Orthogonal projection onto the joint range of the given matrices.
Matrix range_projection(const OperatorSubspace& s) {
  const Index n = s.ambient_dim();
  if (s.dim() == 0) return Matrix::Zero(n, n);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram_of(boxed_basis(s), n));
  const auto& ev = eig.eigenvalues();
  const double top = ev.maxCoeff();
  Matrix p = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    // Eigenvalues are squared singular values; the cut is on their square root.
    if (ev(k) > top * s.tol()) {
      p.noalias() += eig.eigenvectors().col(k) * eig.eigenvectors().col(k).adjoint();
    }
  }
  return p;
}

Matrix random_real_combination(const std::vector<Matrix>& parts, Index n, Rng& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Matrix h = Matrix::Zero(n, n);
  for (const auto& p : parts) h += coef(rng) * p;
  return h;
}

// Spectral projections of a Hermitian matrix onto clusters of eigenvalues that
// are closer than `gap` after scaling to unit operator norm.
std::vector<Matrix> spectral_clusters(const Matrix& h, double gap) {
  const Index n = h.rows();
  std::vector<Matrix> out;
  if (n == 0) return out;
  Matrix herm = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
  const auto& ev = eig.eigenvalues();
  const auto& vecs = eig.eigenvectors();
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  Index start = 0;
  for (Index k = 1; k <= n; ++k) {
    const bool split = k == n || (scale > 0.0 && (ev(k) - ev(k - 1)) / scale > gap);
    if (!split) continue;
    auto block = vecs.middleCols(start, k - start);
    out.emplace_back(block * block.adjoint());
    start = k;
  }
  return out;
}

double real_trace(const Matrix& x) { return x.trace().real(); }

bool near_integer(double v, double slack, long& out) {
  out = std::lround(v);
  return std::abs(v - static_cast<double>(out)) <= slack;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(OperatorSubspace space, Matrix unit, std::uint64_t seed)
    : space_(std::move(space)), unit_(std::move(unit)), seed_(seed),
      cache_(std::make_shared<Cache>()) {
  const Index n = space_.ambient_dim();
  if (unit_.rows() != n || unit_.cols() != n) {
    throw InputError("FiniteAlgebra: unit shape does not match ambient dimension");
  }
}

FiniteAlgebra::FiniteAlgebra(OperatorSubspace space, Matrix unit, std::vector<int> layout,
                             std::uint64_t seed)
    : FiniteAlgebra(std::move(space), std::move(unit), seed) {
  layout_ = std::move(layout);
}

FiniteAlgebra FiniteAlgebra::with_seed(std::uint64_t seed) const {
  return FiniteAlgebra(space_, unit_, layout_, seed);
}

FiniteAlgebra FiniteAlgebra::from_subspace(OperatorSubspace space, std::uint64_t seed) {
  Matrix unit = range_projection(space);
  return FiniteAlgebra(std::move(space), std::move(unit), seed);
}

const WedderburnData& FiniteAlgebra::wedderburn() const {
  std::call_once(cache_->once, [this] {
    Rng rng(seed_);
    cache_->data = crossedk::wedderburn(*this, rng);
  });
  return *cache_->data;
}

FiniteAlgebra build_multimatrix(const std::vector<int>& dims, double tol, std::uint64_t seed) {
  if (dims.empty()) throw InputError("build_multimatrix: empty block list");
  int n = 0;
  for (int d : dims) {
    if (d <= 0) throw InputError("build_multimatrix: block dimensions must be positive");
    n += d;
  }
  std::vector<Matrix> units;
  int offset = 0;
  for (int d : dims) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        Matrix e = Matrix::Zero(n, n);
        e(offset + i, offset + j) = 1.0;
        units.push_back(std::move(e));
      }
    }
    offset += d;
  }
  return FiniteAlgebra(orthonormalize(units, n, tol), Matrix::Identity(n, n), dims, seed);
}

AlgebraReport verify_algebra(const FiniteAlgebra& a) {
  AlgebraReport r;
  const auto& s = a.space();
  const auto basis = s.basis();
  for (const auto& x : basis) {
    r.star_residual = std::max(r.star_residual, membership_residual(s, x.adjoint()));
    for (const auto& y : basis) {
      r.product_residual = std::max(r.product_residual, membership_residual(s, x * y));
    }
  }
  const Matrix& u = a.unit();
  const double un = std::max(1.0, u.norm());
  double ures = 0.0;
  if (!basis.empty() || u.norm() > 0) {
    ures = std::max({(u - u.adjoint()).norm(), (u * u - u).norm(),
                     membership_residual(s, u)}) / un;
  }
  for (const auto& x : basis) {
    ures = std::max({ures, (u * x - x).norm(), (x * u - x).norm()});
  }
  r.unit_residual = ures;
  const double tol = a.tol();
  r.passed = r.product_residual <= tol && r.star_residual <= tol && r.unit_residual <= tol;
  return r;
}

Matrix null_space(const Matrix& m, double rel_tol, double reference) {
  const Index cols = m.cols();
  if (cols == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Matrix reduced;
  if (m.rows() > cols) {
    Eigen::HouseholderQR<Matrix> qr(m);
    reduced = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    reduced = m;
  }
  // One-sided Jacobi rather than divide and conquer: Eigen 3.4.0's BDCSVD
  // returns wrong singular vectors on some of these structured systems.
  Eigen::JacobiSVD<Matrix> svd(reduced, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Matrix& v = svd.matrixV();
  const double top = std::max(sv.size() > 0 ? sv(0) : 0.0, reference);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * top && top > 0) ++rank;
  }
  return v.rightCols(cols - rank);
}

std::vector<Matrix> self_adjoint_parts(const OperatorSubspace& s) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(2 * s.dim()));
  const Complex i2(0.0, 2.0);
  for (Index k = 0; k < s.dim(); ++k) {
    Matrix x = s.element(k);
    out.emplace_back((x + x.adjoint()) / 2.0);
    out.emplace_back((x - x.adjoint()) / i2);
  }
  return out;
}

OperatorSubspace center(const FiniteAlgebra& a, Rng& rng) {
  const auto& s = a.space();
  const Index n = s.ambient_dim();
  const Index d = s.dim();
  if (d == 0) return OperatorSubspace(n, s.tol());
  const auto basis = boxed_basis(s);
  std::normal_distribution<double> gauss;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Two generic elements generate A, so commuting with both is the joint
    // commutation system restricted to a generating pair.
    Matrix probes[2];
    for (auto& p : probes) {
      Vector c(d);
      for (Index k = 0; k < d; ++k) c(k) = Complex(gauss(rng), gauss(rng));
      p = s.from_coordinates(c.normalized());
    }
    const Index len = n * n;
    Matrix system(2 * len, d);
    for (Index k = 0; k < d; ++k) {
      for (int j = 0; j < 2; ++j) {
        const Matrix c = commutator(probes[j], basis[static_cast<std::size_t>(k)]);
        system.col(k).segment(j * len, len) = as_vector(c);
      }
    }
    Matrix kernel = null_space(system, 10.0 * s.tol(), 1.0);
    std::vector<Matrix> zs;
    for (Index c = 0; c < kernel.cols(); ++c) zs.push_back(s.from_coordinates(kernel.col(c)));

    // Confirm against the whole basis; a non-generic pair leaves extra solutions.
    bool central = true;
    for (const auto& z : zs) {
      for (const auto& b : basis) {
        if (commutator(z, b).norm() > 10.0 * s.tol() * std::max(1.0, z.norm())) {
          central = false;
          break;
        }
      }
      if (!central) break;
    }
    if (central) return orthonormalize(zs, n, s.tol(), 1.0);
  }
  throw CheckFailure("center: degenerate center sample");
}

double compressed_dim(const FiniteAlgebra& a, const Matrix& p) {
  return compressed_trace(boxed_basis(a.space()), range_basis(p));
}

WedderburnData wedderburn(const FiniteAlgebra& a, Rng& rng) {
  WedderburnData out;
  const auto& s = a.space();
  const Index n = s.ambient_dim();
  if (s.dim() == 0) return out;
  const double tol = s.tol();
  const double gap = 1e3 * tol;
  const Matrix& u = a.unit();

  const OperatorSubspace z = center(a, rng);
  const Index blocks = z.dim();
  // Real combinations of Hermitian generators stay Hermitian and reach every
  // self-adjoint central element, which an orthonormalized complex basis would not.
  const auto zparts = self_adjoint_parts(z);
  const auto aparts = self_adjoint_parts(s);

  const auto boxes = boxed_basis(s);
  const Matrix gram = gram_of(boxes, n);

  bool found = false;
  for (int attempt = 0; attempt < kMaxAttempts && !found; ++attempt) {
    Matrix h = random_real_combination(zparts, n, rng);
    std::vector<Matrix> central;
    for (auto& proj : spectral_clusters(h, gap)) {
      Matrix e = u * proj;
      if (real_trace(e) > 0.5) central.push_back(std::move(e));
    }
    if (static_cast<Index>(central.size()) != blocks) continue;
    out.central = std::move(central);
    found = true;
  }
  if (!found) throw CheckFailure("wedderburn: degenerate center sample");

  Index total = 0;
  for (const auto& e : out.central) {
    long block_dim = 0;
    const double v = real_trace(e * gram);
    long root = std::lround(std::sqrt(std::max(v, 0.0)));
    if (!near_integer(v, 10.0 * tol * std::max(1.0, v), block_dim) || root * root != block_dim) {
      throw CheckFailure("wedderburn: not semisimple within tolerance (block of dimension " +
                         std::to_string(v) + ")");
    }
    out.dims.push_back(static_cast<int>(root));
    total += block_dim;
  }
  if (total != s.dim()) {
    throw CheckFailure("wedderburn: block dimensions do not add up to the algebra dimension");
  }

  for (std::size_t i = 0; i < out.central.size(); ++i) {
    const Matrix& e = out.central[i];
    const int want = out.dims[i];
    bool ok = false;
    for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
      Matrix h = e * random_real_combination(aparts, n, rng) * e;
      std::vector<Matrix> pieces;
      for (auto& proj : spectral_clusters(h, gap)) {
        Matrix p = e * proj;
        if (real_trace(p) > 0.5) pieces.push_back(std::move(p));
      }
      if (static_cast<int>(pieces.size()) != want) continue;
      long one = 0;
      if (!near_integer(compressed_trace(boxes, range_basis(pieces.front())), 10.0 * tol, one) || one != 1) continue;
      out.minimal.push_back(std::move(pieces.front()));
      ok = true;
    }
    if (!ok) throw CheckFailure("wedderburn: degenerate center sample (minimal projection)");
  }
  return out;
}

Matrix minimal_projection(const FiniteAlgebra& a, int block) {
  const auto& w = a.wedderburn();
  if (block < 0 || block >= w.block_count()) {
    throw InputError("minimal_projection: block index out of range");
  }
  return w.minimal[static_cast<std::size_t>(block)];
}

bool ideal_check(const FiniteAlgebra& a, const OperatorSubspace& ideal) {
  require_same_ambient(a.space(), ideal, "ideal_check");
  if (!contains(a.space(), ideal)) throw InputError("ideal_check: subspace is not inside the algebra");
  return contains(ideal, span_product(a.space(), ideal)) &&
         contains(ideal, span_product(ideal, a.space()));
}

Quotient corner_quotient(const FiniteAlgebra& a, const FiniteAlgebra& ideal) {
  Matrix c = a.unit() - ideal.unit();
  std::vector<Matrix> images;
  images.reserve(static_cast<std::size_t>(a.dim()));
  for (Index k = 0; k < a.dim(); ++k) images.push_back(c * a.space().element(k) * c);
  OperatorSubspace qs = orthonormalize(images, a.ambient_dim(), a.tol(), 1.0);
  if (qs.dim() != a.dim() - ideal.dim()) {
    throw CheckFailure("quotient: dimension count failed (" + std::to_string(qs.dim()) +
                       " != " + std::to_string(a.dim()) + " - " + std::to_string(ideal.dim()) + ")");
  }
  return Quotient{FiniteAlgebra(std::move(qs), c, a.seed()), c};
}

Quotient quotient_by_ideal(const FiniteAlgebra& a, const OperatorSubspace& ideal) {
  require_same_ambient(a.space(), ideal, "quotient_by_ideal");
  if (!contains(ideal, ideal.adjoint())) throw InputError("quotient_by_ideal: ideal is not *-closed");
  if (!ideal_check(a, ideal)) throw InputError("quotient_by_ideal: not a two-sided ideal");
  return corner_quotient(a, FiniteAlgebra::from_subspace(ideal.with_tol(a.tol()), a.seed()));
}

}  // namespace crossedk
