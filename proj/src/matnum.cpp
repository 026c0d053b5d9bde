#include "xr/matnum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xr/jacobi_impl.hpp"

namespace xr {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotSpd: return "NotSpd";
    case ErrorCode::DependentColumns: return "DependentColumns";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDecreasing: return "NotDecreasing";
    case ErrorCode::BadMultiplicities: return "BadMultiplicities";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotOpposite: return "NotOpposite";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::BasepointNotInFlat: return "BasepointNotInFlat";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::SameEnd: return "SameEnd";
    case ErrorCode::NotMoebius: return "NotMoebius";
    case ErrorCode::NotExtendable: return "NotExtendable";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::Ambiguous: return "Ambiguous";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::CannotSeparate: return "CannotSeparate";
    case ErrorCode::CalibrationFailed: return "CalibrationFailed";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {
  if (rows < 1 || cols < 1) fail(ErrorCode::BadInput, "matrix dimensions must be >= 1");
}

Matrix::Matrix(int rows, int cols, std::initializer_list<double> entries) : Matrix(rows, cols) {
  if (static_cast<int>(entries.size()) != rows * cols)
    fail(ErrorCode::BadInput, "initializer size does not match dimensions");
  std::copy(entries.begin(), entries.end(), a_.begin());
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::zero(int rows, int cols) { return Matrix(rows, cols); }

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& cols) {
  if (cols.empty()) fail(ErrorCode::BadInput, "no columns");
  const int n = static_cast<int>(cols[0].size());
  Matrix m(n, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[j].size()) != n) fail(ErrorCode::BadInput, "ragged columns");
    for (int i = 0; i < n; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> Matrix::column(int j) const {
  std::vector<double> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(int j, const std::vector<double>& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::columns(int c0, int c1) const {
  Matrix m(rows_, c1 - c0);
  for (int i = 0; i < rows_; ++i)
    for (int j = c0; j < c1; ++j) m(i, j - c0) = (*this)(i, j);
  return m;
}

Matrix Matrix::beside(const Matrix& other) const {
  if (other.rows_ != rows_) fail(ErrorCode::DimensionMismatch, "beside: row mismatch");
  Matrix m(rows_, cols_ + other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (int j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
  }
  return m;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::fabs(x));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}
Matrix& Matrix::operator-=(const Matrix& o) {
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}
Matrix& Matrix::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }
Matrix operator*(double s, Matrix a) { a *= s; return a; }

std::vector<double> operator*(const Matrix& a, const std::vector<double>& v) {
  if (a.cols() != static_cast<int>(v.size())) fail(ErrorCode::DimensionMismatch, "matvec shape");
  std::vector<double> r(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

namespace {

// LU with partial pivoting; returns false when a pivot vanishes.
bool lu_factor(Matrix& m, std::vector<int>& perm, int& sign) {
  const int n = m.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), 0);
  sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(m(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::fabs(m(i, k)) > best) { best = std::fabs(m(i, k)); piv = i; }
    }
    if (best == 0.0) return false;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      m(i, k) /= m(k, k);
      const double f = m(i, k);
      for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

}  // namespace

double det(const Matrix& m) {
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "det of non-square matrix");
  Matrix lu = m;
  std::vector<int> perm;
  int sign = 0;
  if (!lu_factor(lu, perm, sign)) return 0.0;
  double d = sign;
  for (int i = 0; i < m.rows(); ++i) d *= lu(i, i);
  return d;
}

std::vector<double> solve(const Matrix& a, const std::vector<double>& b) {
  if (!a.is_square() || a.rows() != static_cast<int>(b.size()))
    fail(ErrorCode::DimensionMismatch, "solve shape");
  Matrix lu = a;
  std::vector<int> perm;
  int sign = 0;
  if (!lu_factor(lu, perm, sign)) fail(ErrorCode::Internal, "singular system");
  const int n = a.rows();
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
    x[i] /= lu(i, i);
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const int n = m.rows();
  Matrix inv(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    inv.set_column(j, solve(m, e));
  }
  return inv;
}

SymEig sym_eig(const Matrix& s) {
  if (!s.is_square()) fail(ErrorCode::DimensionMismatch, "sym_eig of non-square matrix");
  const int n = s.rows();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(s(i, j) - s(j, i)) > 1e-12 * std::max(1.0, s.max_abs()))
        fail(ErrorCode::NotSymmetric, "asymmetry exceeds 1e-12");

  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = 0.5 * (s(i, j) + s(j, i));
  std::vector<double> vecs;
  detail::jacobi_diagonalize<double>(a, n, 1e-14, &vecs);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return a[static_cast<size_t>(i) * n + i] > a[static_cast<size_t>(j) * n + j];
  });

  SymEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a[static_cast<size_t>(order[k]) * n + order[k]];
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = vecs[static_cast<size_t>(i) * n + order[k]];
  }
  return out;
}

namespace {

double g_inner(const Matrix& g, const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) s += u[i] * g(i, j) * v[j];
  return s;
}

}  // namespace

Matrix gram_schmidt(const Matrix& basis, const Matrix& g) {
  if (g.rows() != basis.rows() || g.cols() != basis.rows())
    fail(ErrorCode::DimensionMismatch, "inner product shape");
  const int k = basis.cols();

  // Gram determinant gate for dependence.
  Matrix gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram(i, j) = g_inner(g, basis.column(i), basis.column(j));
  if (std::fabs(det(gram)) <= 1e-12) fail(ErrorCode::DependentColumns, "Gram determinant below 1e-12");

  Matrix q = basis;
  // Modified Gram-Schmidt, run twice for orthogonality at working precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < k; ++j) {
      std::vector<double> v = q.column(j);
      for (int i = 0; i < j; ++i) {
        const std::vector<double> qi = q.column(i);
        const double c = g_inner(g, qi, v);
        for (int r = 0; r < basis.rows(); ++r) v[r] -= c * qi[r];
      }
      const double nrm = std::sqrt(g_inner(g, v, v));
      if (!(nrm > 0.0)) fail(ErrorCode::DependentColumns, "vanishing column norm");
      for (double& x : v) x /= nrm;
      q.set_column(j, v);
    }
  }
  return q;
}

Matrix gram_schmidt(const Matrix& basis) { return gram_schmidt(basis, Matrix::identity(basis.rows())); }

namespace {

Matrix spd_power(const Matrix& s, double expo) {
  const SymEig e = sym_eig(s);
  for (double v : e.eigenvalues)
    if (!(v > 0.0)) fail(ErrorCode::NotSpd, "eigenvalue <= 0");
  const int n = s.rows();
  Matrix d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = std::pow(e.eigenvalues[i], expo);
  return e.eigenvectors * d * e.eigenvectors.transpose();
}

}  // namespace

Matrix spd_sqrt(const Matrix& s) { return spd_power(s, 0.5); }
Matrix spd_inv_sqrt(const Matrix& s) { return spd_power(s, -0.5); }

double frobenius_distance(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const double d = a(i, j) - b(i, j);
      s += d * d;
    }
  return std::sqrt(s);
}

}  // namespace xr
