#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace crossedk {

using Integer = boost::multiprecision::cpp_int;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(int n);
  static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
  /// Diagonal matrix of the given size with `diag` along the main diagonal.
  static IntMatrix diagonal(int rows, int cols, const std::vector<Integer>& diag);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Integer& operator()(int r, int c) { return data_[index(r, c)]; }
  const Integer& operator()(int r, int c) const { return data_[index(r, c)]; }

  IntMatrix operator*(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

  IntMatrix transpose() const;
  /// [this | other].
  IntMatrix hconcat(const IntMatrix& other) const;
  IntMatrix columns(int first, int count) const;
  IntMatrix rows_range(int first, int count) const;
  bool is_zero() const;

  std::string to_string() const;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

/// U * M * V = S with S diagonal, diagonal entries nonnegative and forming a
/// divisibility chain (zeros last), U and V unimodular. Inverses are tracked
/// alongside so callers never need to invert.
struct SmithForm {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;

  /// Number of nonzero diagonal entries.
  int rank() const;
  /// Diagonal entries, length min(rows, cols).
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Exact determinant by fraction-free elimination (Bareiss). Square input only.
Integer determinant(const IntMatrix& m);

/// Entry-wise reduction r mod d into [0, d).
Integer mod_floor(const Integer& a, const Integer& d);

}  // namespace crossedk
