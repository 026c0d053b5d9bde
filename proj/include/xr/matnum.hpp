// Dense linear-algebra kernel for small matrices (n <= ~12): determinants,
// symmetric eigendecomposition, inner-product orthonormalization and SPD
// square roots. Self-contained; accuracy over speed.
#pragma once

#include <initializer_list>
#include <vector>

#include "xr/error.hpp"

namespace xr {

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols);
  Matrix(int rows, int cols, std::initializer_list<double> entries);

  static Matrix identity(int n);
  static Matrix zero(int rows, int cols);
  static Matrix diagonal(const std::vector<double>& d);
  static Matrix from_columns(const std::vector<std::vector<double>>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix transpose() const;
  std::vector<double> column(int j) const;
  void set_column(int j, const std::vector<double>& v);
  // Columns [c0, c1) as a new matrix.
  Matrix columns(int c0, int c1) const;
  // Horizontal concatenation.
  Matrix beside(const Matrix& other) const;

  double max_abs() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

 private:
  int rows_, cols_;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
std::vector<double> operator*(const Matrix& a, const std::vector<double>& v);

struct SymEig {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // orthonormal columns, matching order
};

// Determinant via LU with partial pivoting. Returns 0 for singular input.
double det(const Matrix& m);

// Inverse via LU; throws NotSpd-free Internal error when singular.
Matrix inverse(const Matrix& m);

// Solve a x = b for square a (LU with partial pivoting).
std::vector<double> solve(const Matrix& a, const std::vector<double>& b);

// Cyclic Jacobi on a symmetric matrix; eigenvalues sorted descending.
// Input must be symmetric to 1e-12 (absolute), else NotSymmetric.
SymEig sym_eig(const Matrix& s);

// Orthonormalize the columns of `basis` against the SPD inner product
// <u,v> = u^t g v, preserving leading spans (column j stays inside the span
// of input columns 1..j). Throws DependentColumns when the input Gram
// determinant is below 1e-12.
Matrix gram_schmidt(const Matrix& basis, const Matrix& g);
Matrix gram_schmidt(const Matrix& basis);  // g = identity

// Symmetric square root / inverse square root of an SPD matrix.
// Throws NotSpd when an eigenvalue is <= 0.
Matrix spd_sqrt(const Matrix& s);
Matrix spd_inv_sqrt(const Matrix& s);

// Frobenius norm of (a - b).
double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace xr
