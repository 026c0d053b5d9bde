#include "xr/flags.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xr {

namespace {

// Signature steps must be a sub-chain of the full basis; completions keep the
// representative square so every op below can assume n x n.
Matrix canonical_basis(int n, const Matrix& basis) {
  if (basis.rows() != n || basis.cols() != n)
    fail(ErrorCode::DimensionMismatch, "flag basis must be n x n");
  Matrix q = gram_schmidt(basis);
  if (std::fabs(det(q)) <= 1e-9) fail(ErrorCode::DependentColumns, "degenerate representative");
  if (det(q) < 0) {
    std::vector<double> last = q.column(n - 1);
    for (double& v : last) v = -v;
    q.set_column(n - 1, last);
  }
  return q;
}

}  // namespace

Flag::Flag(int n, FaceSignature signature, const Matrix& basis)
    : n_(n), signature_(std::move(signature)) {
  if (signature_.n != n) fail(ErrorCode::SignatureMismatch, "signature arity");
  basis_ = canonical_basis(n, basis);
}

Flag make_flag(int n, const FaceSignature& signature, const Matrix& basis) {
  return Flag(n, signature, basis);
}

Flag Flag::truncate(const FaceSignature& coarser) const {
  for (int d : coarser.dims)
    if (std::find(signature_.dims.begin(), signature_.dims.end(), d) == signature_.dims.end())
      fail(ErrorCode::SignatureMismatch, "coarser face is not a sub-chain");
  return Flag(n_, coarser, basis_);
}

std::pair<Flag, Flag> standard_pair(int n, const FaceSignature& signature) {
  const Matrix id = Matrix::identity(n);
  Matrix rev(n, n);
  for (int i = 0; i < n; ++i) rev(i, n - 1 - i) = 1.0;
  return {Flag(n, signature, id), Flag(n, signature.involute(), rev)};
}

double opposition_margin(const Flag& x, const Flag& y) {
  if (x.n() != y.n()) fail(ErrorCode::DimensionMismatch, "opposition arity");
  if (!(y.signature() == x.signature().involute()))
    fail(ErrorCode::SignatureMismatch, "signatures are not iota-compatible");
  double margin = 1.0;
  for (int step : x.signature().proper_steps()) {
    const Matrix block = x.basis().columns(0, step).beside(y.basis().columns(0, x.n() - step));
    margin = std::min(margin, std::fabs(det(block)));
  }
  return margin;
}

bool is_opposite(const Flag& x, const Flag& y) { return opposition_margin(x, y) > 1e-9; }

Flag act(const Matrix& g, const Flag& x) {
  if (std::fabs(det(g) - 1.0) > 1e-8) fail(ErrorCode::NotUnimodular, "determinant must be one");
  return Flag(x.n(), x.signature(), g * x.basis());
}

Flag ortho_opposite(const Flag& x, const Matrix& o_mat) {
  const Matrix oinv = inverse(o_mat);
  // Symmetrize: o is SPD so o^-1 is, but LU roundoff leaves a tiny skew part.
  Matrix g(oinv.rows(), oinv.cols());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = 0.5 * (oinv(i, j) + oinv(j, i));
  const Matrix q = gram_schmidt(x.basis(), g);
  Matrix rev(x.n(), x.n());
  for (int j = 0; j < x.n(); ++j) rev.set_column(j, q.column(x.n() - 1 - j));
  return Flag(x.n(), x.signature().involute(), rev);
}

namespace {

// Reduce the x-coordinates of a flag opposite to the standard full flag to
// the echelon form with ones on the antidiagonal and zeros below it.
Matrix anti_echelon(const Matrix& m, int n) {
  Matrix c = m;
  for (int j = 0; j < n; ++j) {
    std::vector<double> col = c.column(j);
    for (int i = 0; i < j; ++i) {
      const double f = col[n - 1 - i];
      if (f != 0.0) {
        const std::vector<double> prev = c.column(i);
        for (int r = 0; r < n; ++r) col[r] -= f * prev[r];
      }
    }
    const double pivot = col[n - 1 - j];
    if (std::fabs(pivot) < 1e-12) fail(ErrorCode::NotOpposite, "vanishing transversality pivot");
    for (double& v : col) v /= pivot;
    col[n - 1 - j] = 1.0;
    for (int r = n - j; r < n; ++r) col[r] = 0.0;
    c.set_column(j, col);
  }
  return c;
}

}  // namespace

Matrix unipotent_transporter(const Flag& x, const Flag& z, const Flag& y) {
  if (!x.is_full()) fail(ErrorCode::BadInput, "transporter needs a full flag x");
  if (!is_opposite(x, z) || !is_opposite(x, y))
    fail(ErrorCode::NotOpposite, "z and y must be opposite to x");
  const int n = x.n();
  const Matrix bt = x.basis().transpose();
  const Matrix cz = anti_echelon(bt * z.basis(), n);
  const Matrix cy = anti_echelon(bt * y.basis(), n);
  Matrix u = cy * inverse(cz);
  // The product is upper unitriangular in exact arithmetic; clean roundoff.
  for (int i = 0; i < n; ++i) {
    u(i, i) = 1.0;
    for (int j = 0; j < i; ++j) u(i, j) = 0.0;
  }
  return x.basis() * u * bt;
}

bool same_flag(const Flag& a, const Flag& b, double tol) {
  if (a.n() != b.n() || !(a.signature() == b.signature())) return false;
  for (int step : a.signature().proper_steps()) {
    const Matrix qa = a.basis().columns(0, step);
    const Matrix qb = b.basis().columns(0, step);
    const Matrix pa = qa * qa.transpose();
    const Matrix pb = qb * qb.transpose();
    if ((pa - pb).max_abs() > tol) return false;
  }
  return true;
}

namespace {

// Orthonormal basis of the null space of m, via the small eigenvalues of
// m^t m. Vectors with eigenvalue below tol^2 count as null directions.
std::vector<std::vector<double>> nullspace(const Matrix& m, double tol) {
  const Matrix mt = m.transpose();
  Matrix g = mt * m;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = 0.5 * (g(i, j) + g(j, i));
  const SymEig e = sym_eig(g);
  std::vector<std::vector<double>> out;
  for (int k = g.rows() - 1; k >= 0; --k) {
    if (e.eigenvalues[k] < tol * tol)
      out.push_back(e.eigenvectors.column(k));
    else
      break;
  }
  return out;
}

std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (!(s > 0.0)) fail(ErrorCode::Internal, "zero vector");
  for (double& x : v) x /= s;
  return v;
}

}  // namespace

Matrix joint_lines(const Flag& x, const Flag& y) {
  if (!x.is_full() || !y.is_full()) fail(ErrorCode::BadInput, "joint lines need full flags");
  if (!is_opposite(x, y)) fail(ErrorCode::NotOpposite, "flags are not opposite");
  const int n = x.n();
  Matrix d(n, n);
  for (int i = 1; i <= n; ++i) {
    const Matrix a = x.basis().columns(0, i);
    Matrix bneg = y.basis().columns(0, n - i + 1);
    bneg *= -1.0;
    const auto null = nullspace(a.beside(bneg), 1e-6);
    if (null.size() != 1) fail(ErrorCode::NotOpposite, "intersection line is not unique");
    std::vector<double> uv = null[0];
    std::vector<double> line(n, 0.0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < i; ++c) line[r] += a(r, c) * uv[c];
    d.set_column(i - 1, normalized(line));
  }
  const double dd = det(d);
  if (std::fabs(dd) < 1e-9) fail(ErrorCode::NotOpposite, "joint lines nearly dependent");
  const double scale = std::pow(std::fabs(dd), -1.0 / n);
  d *= scale;
  return d;
}

CommonApartment common_apartment(const Flag& x, const Flag& y) {
  if (!x.is_full() || !y.is_full()) fail(ErrorCode::BadInput, "common apartment needs full flags");
  const int n = x.n();
  const double rank_tol = 1e-6;

  // dim(V_i /\ W_j) from the rank of the stacked orthonormal blocks.
  auto meet_dim = [&](int i, int j) -> int {
    if (i == 0 || j == 0) return 0;
    const Matrix m = x.basis().columns(0, i).beside(y.basis().columns(0, j));
    const Matrix mt = m.transpose();
    Matrix g = mt * m;
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) g(r, c) = 0.5 * (g(r, c) + g(c, r));
    const SymEig e = sym_eig(g);
    int rank = 0;
    for (double v : e.eigenvalues)
      if (v > rank_tol) ++rank;
    return i + j - rank;
  };

  std::vector<std::vector<double>> chosen;
  std::vector<int> level(n, 0);  // level[j] = i(j+1)
  for (int j = 1; j <= n; ++j) {
    int ij = -1;
    for (int i = 1; i <= n; ++i) {
      if (meet_dim(i, j) == meet_dim(i, j - 1) + 1) { ij = i; break; }
    }
    if (ij < 0) fail(ErrorCode::CannotSeparate, "no fresh intersection step");
    level[j - 1] = ij;

    const Matrix a = x.basis().columns(0, ij);
    Matrix bneg = y.basis().columns(0, j);
    bneg *= -1.0;
    const auto null = nullspace(a.beside(bneg), 1e-6);
    if (null.empty()) fail(ErrorCode::CannotSeparate, "intersection basis not resolved");

    // Pick the intersection vector most independent from the chosen ones.
    std::vector<double> best;
    double best_res = -1.0;
    for (const auto& uv : null) {
      std::vector<double> cand(n, 0.0);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < ij; ++c) cand[r] += a(r, c) * uv[c];
      cand = normalized(cand);
      std::vector<double> res = cand;
      for (const auto& prev : chosen) {
        double dot = 0.0;
        for (int r = 0; r < n; ++r) dot += prev[r] * res[r];
        for (int r = 0; r < n; ++r) res[r] -= dot * prev[r];
      }
      double rn = 0.0;
      for (double v : res) rn += v * v;
      if (rn > best_res) { best_res = rn; best = cand; }
    }
    if (best_res < 1e-8) fail(ErrorCode::CannotSeparate, "intersection vectors collapse");
    chosen.push_back(best);
  }

  // x-adapted order: stable sort by the level where each vector enters x.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return level[a] < level[b]; });

  CommonApartment out;
  out.basis = Matrix(n, n);
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) {
    out.basis.set_column(k, chosen[idx[k]]);
    pos[idx[k]] = k;
  }
  out.order = pos;  // order[j] = column of basis carrying y's j-th new line

  // Numerical sanity: the sorted basis must reproduce x.
  if (!same_flag(Flag(n, FaceSignature::full(n), out.basis), x, 1e-5))
    fail(ErrorCode::CannotSeparate, "adapted basis fails to span x");
  return out;
}

}  // namespace xr
