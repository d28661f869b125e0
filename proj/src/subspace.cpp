#include "crossedk/subspace.hpp"

#include <algorithm>
#include <string>

namespace crossedk {

namespace {

Eigen::Map<const Vector> as_vector(const Matrix& x) {
  return {x.data(), x.size()};
}

void require_shape(const Matrix& x, Index n, const char* what) {
  if (x.rows() != n || x.cols() != n) {
    throw InputError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                     std::to_string(n) + " matrix, got " + std::to_string(x.rows()) +
                     "x" + std::to_string(x.cols()));
  }
}

}  // namespace

Complex hs_inner(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw InputError("hs_inner: shape mismatch");
  }
  return (y.conjugate().cwiseProduct(x)).sum();
}

double hs_norm(const Matrix& x) { return x.norm(); }

OperatorSubspace::OperatorSubspace(Index ambient_dim, double tol) {
  if (ambient_dim < 0 || tol < 0) throw InputError("OperatorSubspace: bad ambient or tol");
  auto d = std::make_shared<Data>();
  d->ambient = ambient_dim;
  d->tol = tol;
  d->frame = Matrix(ambient_dim * ambient_dim, 0);
  data_ = std::move(d);
}

OperatorSubspace OperatorSubspace::from_orthonormal_frame(Index ambient_dim, Matrix frame,
                                                          double tol) {
  if (frame.rows() != ambient_dim * ambient_dim) {
    throw InputError("from_orthonormal_frame: frame rows do not match ambient");
  }
  auto d = std::make_shared<Data>();
  d->ambient = ambient_dim;
  d->tol = tol;
  d->frame = std::move(frame);
  return OperatorSubspace(std::move(d));
}

Matrix OperatorSubspace::element(Index i) const {
  const Index n = ambient_dim();
  return Eigen::Map<const Matrix>(data_->frame.col(i).data(), n, n);
}

std::vector<Matrix> OperatorSubspace::basis() const {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (Index i = 0; i < dim(); ++i) out.push_back(element(i));
  return out;
}

Vector OperatorSubspace::coordinates(const Matrix& x) const {
  require_shape(x, ambient_dim(), "coordinates");
  return data_->frame.adjoint() * as_vector(x);
}

Matrix OperatorSubspace::from_coordinates(const Vector& c) const {
  if (c.size() != dim()) throw InputError("from_coordinates: length mismatch");
  const Index n = ambient_dim();
  Vector v = data_->frame * c;
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix OperatorSubspace::project(const Matrix& x) const {
  return from_coordinates(coordinates(x));
}

OperatorSubspace OperatorSubspace::adjoint() const {
  const Index n = ambient_dim();
  Matrix frame(n * n, dim());
  for (Index i = 0; i < dim(); ++i) {
    Matrix a = element(i).adjoint();
    frame.col(i) = as_vector(a);
  }
  return from_orthonormal_frame(n, std::move(frame), tol());
}

OperatorSubspace OperatorSubspace::with_tol(double tol) const {
  return from_orthonormal_frame(ambient_dim(), data_->frame, tol);
}

OperatorSubspace orthonormalize(std::span<const Matrix> mats, Index ambient_dim, double tol,
                                double reference_norm) {
  double max_norm = reference_norm;
  for (const auto& m : mats) {
    require_shape(m, ambient_dim, "orthonormalize");
    max_norm = std::max(max_norm, m.norm());
  }
  const Index len = ambient_dim * ambient_dim;
  const auto m = static_cast<Index>(mats.size());
  const Index cap = std::min(len, m);
  const double cut = tol * max_norm;
  // Residuals of every input against the accepted frame. Always taking the
  // largest one keeps near-dependent inputs from being normalized, which would
  // blow their rounding error up by 1/residual.
  Matrix w(len, m);
  for (Index i = 0; i < m; ++i) w.col(i) = as_vector(mats[static_cast<std::size_t>(i)]);
  Matrix frame(len, cap);
  Index k = 0;
  while (k < cap) {
    Index p = 0;
    if (w.colwise().squaredNorm().maxCoeff(&p) <= cut * cut) break;
    Vector v = w.col(p);
    w.col(p).setZero();
    if (k > 0) v.noalias() -= frame.leftCols(k) * (frame.leftCols(k).adjoint() * v);
    const double r = v.norm();
    if (r <= cut) continue;
    v /= r;
    w.noalias() -= v * (v.adjoint() * w);
    frame.col(k++) = v;
  }
  return OperatorSubspace::from_orthonormal_frame(ambient_dim, frame.leftCols(k), tol);
}

void require_same_ambient(const OperatorSubspace& s, const OperatorSubspace& t,
                          const char* what) {
  if (s.ambient_dim() != t.ambient_dim()) {
    throw InputError(std::string(what) + ": ambient dimension mismatch (" +
                     std::to_string(s.ambient_dim()) + " vs " +
                     std::to_string(t.ambient_dim()) + ")");
  }
}

OperatorSubspace span_product(const OperatorSubspace& s, const OperatorSubspace& t) {
  require_same_ambient(s, t, "span_product");
  const auto sb = s.basis();
  const auto tb = t.basis();
  std::vector<Matrix> products;
  products.reserve(sb.size() * tb.size());
  for (const auto& x : sb) {
    for (const auto& y : tb) products.push_back(x * y);
  }
  return orthonormalize(products, s.ambient_dim(), s.tol(), 1.0);
}

OperatorSubspace span_sum(const OperatorSubspace& s, const OperatorSubspace& t) {
  require_same_ambient(s, t, "span_sum");
  auto all = s.basis();
  const auto tb = t.basis();
  all.insert(all.end(), tb.begin(), tb.end());
  return orthonormalize(all, s.ambient_dim(), s.tol(), 1.0);
}

double membership_residual(const OperatorSubspace& s, const Matrix& x) {
  return (x - s.project(x)).norm();
}

bool contains(const OperatorSubspace& s, const Matrix& x) {
  return membership_residual(s, x) <= s.tol() * x.norm();
}

double worst_residual(const OperatorSubspace& s, const OperatorSubspace& t) {
  require_same_ambient(s, t, "worst_residual");
  if (t.dim() == 0) return 0.0;
  // Residuals of all of T's basis at once: (I - F F*) G.
  const Matrix& g = t.frame();
  Matrix r = g - s.frame() * (s.frame().adjoint() * g);
  return r.colwise().norm().maxCoeff();
}

bool contains(const OperatorSubspace& s, const OperatorSubspace& t) {
  return worst_residual(s, t) <= s.tol();
}

bool subspace_equal(const OperatorSubspace& s, const OperatorSubspace& t) {
  require_same_ambient(s, t, "subspace_equal");
  return s.dim() == t.dim() && contains(s, t) && contains(t, s);
}

}  // namespace crossedk
