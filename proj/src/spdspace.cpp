#include "xr/spdspace.hpp"

#include <algorithm>
#include <cmath>

namespace xr {

namespace {

Matrix symmetrized(const Matrix& m) {
  Matrix s(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return s;
}

}  // namespace

SpdPoint::SpdPoint(const Matrix& mat) : mat_(mat) {
  if (!mat_.is_square()) fail(ErrorCode::NotSpd, "matrix must be square");
  const int n = mat_.rows();
  const double scale = std::max(1.0, mat_.max_abs());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(mat_(i, j) - mat_(j, i)) > 1e-10 * scale)
        fail(ErrorCode::NotSpd, "matrix is not symmetric");
  mat_ = symmetrized(mat_);
  const SymEig e = sym_eig(mat_);
  if (e.eigenvalues.back() <= 0.0) fail(ErrorCode::NotSpd, "matrix is not positive definite");
  double logdet = 0.0;
  for (double v : e.eigenvalues) logdet += std::log(v);
  // Isometry conjugations of far-out points lose relative determinant
  // accuracy with their condition number; drift clearly inside the roundoff
  // regime is projected back onto the det-one slice, anything larger is a
  // genuinely non-unimodular input.
  if (std::fabs(logdet) > 1e-6) fail(ErrorCode::NotSpd, "determinant must be one");
  if (logdet != 0.0) mat_ *= std::exp(-logdet / n);
}

IdealPoint::IdealPoint(Flag f, TypeVector t) : flag(std::move(f)), type(std::move(t)) {
  if (flag.n() != type.n) fail(ErrorCode::TypeMismatch, "flag and type arity differ");
  if (!(type.face() == flag.signature()))
    fail(ErrorCode::TypeMismatch, "type multiplicities do not match the flag signature");
}

double distance(const SpdPoint& a, const SpdPoint& b) {
  if (a.n() != b.n()) fail(ErrorCode::DimensionMismatch, "distance arity");
  const Matrix w = spd_inv_sqrt(a.mat());
  const SymEig e = sym_eig(symmetrized(w * b.mat() * w));
  double s = 0.0;
  for (double v : e.eigenvalues) {
    const double lg = std::log(v);
    s += lg * lg;
  }
  return metric_scale(a.n()) * std::sqrt(s);
}

double finite_gromov(const SpdPoint& p, const SpdPoint& q, const SpdPoint& o) {
  return 0.5 * (distance(o, p) + distance(o, q) - distance(p, q));
}

SpdPoint geodesic_point(const SpdPoint& o, const IdealPoint& x, double t) {
  const int n = o.n();
  if (x.flag.n() != n) fail(ErrorCode::DimensionMismatch, "geodesic arity");
  const Matrix oh = spd_sqrt(o.mat());
  const Matrix ohinv = spd_inv_sqrt(o.mat());
  const Matrix k = gram_schmidt(ohinv * x.flag.basis());
  const CartanVector lam = embed(x.type);
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = std::exp(t / metric_scale(n) * lam.coords[i]);
  return SpdPoint(symmetrized(oh * k * Matrix::diagonal(d) * k.transpose() * oh));
}

double delta_minor(const SpdPoint& p, int j) {
  const int n = p.n();
  if (j < 1 || j > n - 1) fail(ErrorCode::BadInput, "minor index out of range");
  Matrix block(j, j);
  for (int r = 0; r < j; ++r)
    for (int c = 0; c < j; ++c) block(r, c) = p.mat()(n - j + r, n - j + c);
  return det(block);
}

namespace {

// Closed-form Busemann value toward the standard flag with embedded type
// lam, relative to the identity basepoint: returns b_{S_lam}(p, I_n).
double busemann_standard_to_identity(const Matrix& p_mat, const CartanVector& lam) {
  const int n = lam.n;
  double acc = 0.0;
  for (int j = 1; j <= n - 1; ++j) {
    const double jump = lam.coords[n - 1 - j] - lam.coords[n - j];
    if (jump == 0.0) continue;
    Matrix block(j, j);
    for (int r = 0; r < j; ++r)
      for (int c = 0; c < j; ++c) block(r, c) = p_mat(n - j + r, n - j + c);
    acc += jump * std::log(det(block));
  }
  return metric_scale(n) * acc;
}

}  // namespace

double busemann(const IdealPoint& x, const SpdPoint& o, const SpdPoint& p) {
  const int n = x.flag.n();
  if (o.n() != n || p.n() != n) fail(ErrorCode::DimensionMismatch, "busemann arity");
  // Rotate the flag to standard position; SO(n) stabilizes I_n.
  const Matrix k = x.flag.basis();
  const Matrix kt = k.transpose();
  const Matrix ot = symmetrized(kt * o.mat() * k);
  const Matrix pt = symmetrized(kt * p.mat() * k);
  const CartanVector lam = embed(x.type);
  // Cocycle through the identity: b(o,p) = b(o,I) + b(I,p).
  return busemann_standard_to_identity(ot, lam) - busemann_standard_to_identity(pt, lam);
}

SpdPoint retract(const SpdPoint& o, const Flag& cx, const Flag& cy) {
  if (!is_opposite(cx, cy)) fail(ErrorCode::NotOpposite, "retract needs opposite chambers");
  const Flag z = ortho_opposite(cx, o.mat());
  const Matrix u = unipotent_transporter(cx, z, cy);
  return SpdPoint(symmetrized(u * o.mat() * u.transpose()));
}

CartanVector flat_coordinates(const SpdPoint& p, const Flag& cx, const Flag& cy, double tol) {
  const int n = p.n();
  const Matrix d = joint_lines(cx, cy);
  const Matrix dinv = inverse(d);
  const Matrix w = dinv * p.mat() * dinv.transpose();
  double offmax = 0.0;
  double diagmin = 1e300;
  for (int i = 0; i < n; ++i) {
    diagmin = std::min(diagmin, w(i, i));
    for (int j = 0; j < n; ++j)
      if (i != j) offmax = std::max(offmax, std::fabs(w(i, j)));
  }
  if (!(diagmin > 0.0) || offmax > tol * std::max(1.0, w.max_abs()))
    fail(ErrorCode::BasepointNotInFlat, "point is not simultaneously diagonalized");
  std::vector<double> coords(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    coords[i] = metric_scale(n) * std::log(w(i, i));
    sum += coords[i];
  }
  // The joint-lines gauge fixes |det d| = 1 so the loggs sum to zero already;
  // remove the residual roundoff drift.
  for (double& c : coords) c -= sum / n;
  return CartanVector(n, std::move(coords));
}

SpdPoint flat_point(const Flag& cx, const Flag& cy, const CartanVector& coords) {
  const int n = coords.n;
  const Matrix d = joint_lines(cx, cy);
  std::vector<double> e(n);
  for (int i = 0; i < n; ++i) e[i] = std::exp(coords.coords[i] / metric_scale(n));
  Matrix m = d * Matrix::diagonal(e) * d.transpose();
  Matrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return SpdPoint(s);
}

}  // namespace xr
