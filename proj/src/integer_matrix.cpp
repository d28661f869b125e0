#include "crossedk/integer_matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "crossedk/types.hpp"

namespace crossedk {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(int rows, int cols, const std::vector<Integer>& diag) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < diag.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = diag[i];
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw InputError("IntMatrix: product shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& o) const {
  if (rows_ != o.rows_) throw InputError("IntMatrix: hconcat row mismatch");
  IntMatrix out(rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (int j = 0; j < o.cols_; ++j) out(i, cols_ + j) = o(i, j);
  }
  return out;
}

IntMatrix IntMatrix::columns(int first, int count) const {
  IntMatrix out(rows_, count);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

IntMatrix IntMatrix::rows_range(int first, int count) const {
  IntMatrix out(count, cols_);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer mod_floor(const Integer& a, const Integer& d) {
  Integer r = a % d;
  if (r < 0) r += (d < 0 ? -d : d);
  return r;
}

namespace {

class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : s_(m), u_(IntMatrix::identity(m.rows())), u_inv_(u_),
        v_(IntMatrix::identity(m.cols())), v_inv_(v_) {}

  SmithForm run() {
    const int lim = std::min(s_.rows(), s_.cols());
    for (int t = 0; t < lim; ++t) {
      if (!pivot_step(t)) break;
    }
    return {std::move(s_), std::move(u_), std::move(v_), std::move(u_inv_), std::move(v_inv_)};
  }

 private:
  // row_i += q * row_j
  void add_row(int i, int j, const Integer& q) {
    for (int c = 0; c < s_.cols(); ++c) s_(i, c) += q * s_(j, c);
    for (int c = 0; c < u_.cols(); ++c) u_(i, c) += q * u_(j, c);
    for (int r = 0; r < u_inv_.rows(); ++r) u_inv_(r, j) -= q * u_inv_(r, i);
  }
  // col_i += q * col_j
  void add_col(int i, int j, const Integer& q) {
    for (int r = 0; r < s_.rows(); ++r) s_(r, i) += q * s_(r, j);
    for (int r = 0; r < v_.rows(); ++r) v_(r, i) += q * v_(r, j);
    for (int c = 0; c < v_inv_.cols(); ++c) v_inv_(j, c) -= q * v_inv_(i, c);
  }
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < s_.cols(); ++c) std::swap(s_(i, c), s_(j, c));
    for (int c = 0; c < u_.cols(); ++c) std::swap(u_(i, c), u_(j, c));
    for (int r = 0; r < u_inv_.rows(); ++r) std::swap(u_inv_(r, i), u_inv_(r, j));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < s_.rows(); ++r) std::swap(s_(r, i), s_(r, j));
    for (int r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
    for (int c = 0; c < v_inv_.cols(); ++c) std::swap(v_inv_(i, c), v_inv_(j, c));
  }
  void negate_row(int i) {
    for (int c = 0; c < s_.cols(); ++c) s_(i, c) = -s_(i, c);
    for (int c = 0; c < u_.cols(); ++c) u_(i, c) = -u_(i, c);
    for (int r = 0; r < u_inv_.rows(); ++r) u_inv_(r, i) = -u_inv_(r, i);
  }

  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool bring_min_pivot(int t) {
    int bi = -1, bj = -1;
    Integer best;
    for (int i = t; i < s_.rows(); ++i) {
      for (int j = t; j < s_.cols(); ++j) {
        const Integer& v = s_(i, j);
        if (v == 0) continue;
        Integer a = abs(v);
        if (bi < 0 || a < best) {
          best = a;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  bool pivot_step(int t) {
    if (!bring_min_pivot(t)) return false;
    for (;;) {
      const Integer p = s_(t, t);
      bool clean = true;
      for (int i = t + 1; i < s_.rows(); ++i) {
        if (s_(i, t) == 0) continue;
        add_row(i, t, -(s_(i, t) / p));
        if (s_(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < s_.cols(); ++j) {
        if (s_(t, j) == 0) continue;
        add_col(j, t, -(s_(t, j) / p));
        if (s_(t, j) != 0) clean = false;
      }
      if (!clean) {
        bring_min_pivot(t);
        continue;
      }
      // Enforce the divisibility chain on the trailing block.
      bool divides = true;
      for (int i = t + 1; i < s_.rows() && divides; ++i) {
        for (int j = t + 1; j < s_.cols(); ++j) {
          if (s_(i, j) % p != 0) {
            add_row(t, i, Integer(1));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (s_(t, t) < 0) negate_row(t);
    return true;
  }

  IntMatrix s_, u_, u_inv_, v_, v_inv_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) { return SmithReducer(m).run(); }

int SmithForm::rank() const {
  int r = 0;
  const int lim = std::min(s.rows(), s.cols());
  while (r < lim && s(r, r) != 0) ++r;
  return r;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  const int lim = std::min(s.rows(), s.cols());
  for (int i = 0; i < lim; ++i) d.push_back(s(i, i));
  return d;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant: matrix is not square");
  const int n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace crossedk
