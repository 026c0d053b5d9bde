#include "xr/crossratio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xr {

const char* admissibility_name(Admissibility a) {
  switch (a) {
    case Admissibility::all_opposite: return "all_opposite";
    case Admissibility::admissible_minus: return "admissible_minus";
    case Admissibility::admissible_plus: return "admissible_plus";
    case Admissibility::inadmissible: return "inadmissible";
  }
  return "unknown";
}

CrValue CrValue::finite_scalar(double v) {
  CrValue c;
  c.kind = Kind::finite;
  c.scalar = v;
  return c;
}
CrValue CrValue::finite_vector(CartanVector v) {
  CrValue c;
  c.kind = Kind::finite;
  c.vector = std::move(v);
  return c;
}
CrValue CrValue::plus_inf() {
  CrValue c;
  c.kind = Kind::plus_inf;
  return c;
}
CrValue CrValue::minus_inf() {
  CrValue c;
  c.kind = Kind::minus_inf;
  return c;
}

Quadruple::Quadruple(Flag x_, Flag y_, Flag z_, Flag w_)
    : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)), w(std::move(w_)) {
  if (!(z.signature() == x.signature()))
    fail(ErrorCode::SignatureMismatch, "x and z must share a signature");
  const FaceSignature it = x.signature().involute();
  if (!(y.signature() == it) || !(w.signature() == it))
    fail(ErrorCode::SignatureMismatch, "y and w must carry the involuted signature");
}

namespace {

bool subchain(const FaceSignature& coarse, const FaceSignature& fine) {
  for (int d : coarse.dims)
    if (std::find(fine.dims.begin(), fine.dims.end(), d) == fine.dims.end()) return false;
  return true;
}

// Project the pair to the face of the type when the type is coarser.
void align_to_type(Flag& x, Flag& y, const TypeVector& t) {
  const FaceSignature face = t.face();
  if (!(face == x.signature())) {
    if (!subchain(face, x.signature()))
      fail(ErrorCode::TypeMismatch, "type face is not a sub-chain of the flag signature");
    x = x.truncate(face);
  }
  const FaceSignature iface = face.involute();
  if (!(iface == y.signature())) {
    if (!subchain(iface, y.signature()))
      fail(ErrorCode::TypeMismatch, "type face is not compatible with the second flag");
    y = y.truncate(iface);
  }
}

double block_log_det(const Matrix& xb, const Matrix& yb, int step, int n) {
  const Matrix block = xb.columns(0, step).beside(yb.columns(0, n - step));
  return std::log(std::fabs(det(block)));
}

}  // namespace

CrValue gromov_closed(const Flag& x_in, const Flag& y_in, const TypeVector& t, const SpdPoint& o) {
  Flag x = x_in, y = y_in;
  if (x.n() != t.n || y.n() != t.n || o.n() != t.n)
    fail(ErrorCode::TypeMismatch, "arity mismatch");
  align_to_type(x, y, t);
  if (!is_opposite(x, y)) return CrValue::plus_inf();

  const int n = t.n;
  const Matrix w = spd_inv_sqrt(o.mat());
  const Matrix xb = gram_schmidt(w * x.basis());
  const Matrix yb = gram_schmidt(w * y.basis());

  const std::vector<int> steps = x.signature().proper_steps();
  double acc = 0.0;
  for (size_t j = 0; j < steps.size(); ++j) {
    const double jump = t.values[j + 1] - t.values[j];
    acc += jump * block_log_det(xb, yb, steps[j], n);
  }
  return CrValue::finite_scalar(metric_scale(n) * acc);
}

CrValue gromov_closed(const Flag& x, const Flag& y, const TypeVector& t) {
  return gromov_closed(x, y, t, SpdPoint::identity(t.n));
}

Admissibility classify(const Quadruple& q) {
  const bool xy = is_opposite(q.x, q.y);
  const bool zw = is_opposite(q.z, q.w);
  const bool xw = is_opposite(q.x, q.w);
  const bool zy = is_opposite(q.z, q.y);
  const bool diag = xy && zw;
  const bool cross = xw && zy;
  if (diag && cross) return Admissibility::all_opposite;
  if (cross) return Admissibility::admissible_minus;
  if (diag) return Admissibility::admissible_plus;
  return Admissibility::inadmissible;
}

CrValue cr_scalar(const Quadruple& q, const TypeVector& xi, const std::optional<SpdPoint>& o) {
  const Admissibility adm = classify(q);
  if (adm == Admissibility::inadmissible)
    fail(ErrorCode::Inadmissible, "no opposite diagonal or cross pattern");
  if (adm == Admissibility::admissible_minus) return CrValue::minus_inf();
  if (adm == Admissibility::admissible_plus) return CrValue::plus_inf();

  if (o.has_value()) return CrValue::finite_scalar(cr_scalar_gromov_sum(q, xi, *o));

  // Wedge-ratio fast path: one determinant ratio per Grassmannian step.
  Flag x = q.x, y = q.y, z = q.z, w = q.w;
  align_to_type(x, y, xi);
  align_to_type(z, w, xi);
  const int n = xi.n;
  const std::vector<int> steps = x.signature().proper_steps();
  double acc = 0.0;
  for (size_t j = 0; j < steps.size(); ++j) {
    const int s = steps[j];
    const double ratio = block_log_det(x.basis(), y.basis(), s, n) -
                         block_log_det(x.basis(), w.basis(), s, n) +
                         block_log_det(z.basis(), w.basis(), s, n) -
                         block_log_det(z.basis(), y.basis(), s, n);
    acc += (xi.values[j] - xi.values[j + 1]) * ratio;
  }
  return CrValue::finite_scalar(metric_scale(n) * acc);
}

double cr_scalar_gromov_sum(const Quadruple& q, const TypeVector& xi, const SpdPoint& o) {
  const CrValue xy = gromov_closed(q.x, q.y, xi, o);
  const CrValue zw = gromov_closed(q.z, q.w, xi, o);
  const CrValue xw = gromov_closed(q.x, q.w, xi, o);
  const CrValue zy = gromov_closed(q.z, q.y, xi, o);
  if (!xy.finite() || !zw.finite() || !xw.finite() || !zy.finite())
    fail(ErrorCode::Inadmissible, "gromov sum needs four finite products");
  return -xy.scalar - zw.scalar + xw.scalar + zy.scalar;
}

CrValue cr_vector(const Quadruple& q, const FaceSignature& face) {
  if (!(q.x.signature() == face))
    fail(ErrorCode::SignatureMismatch, "quadruple does not match the face");
  const Admissibility adm = classify(q);
  if (adm == Admissibility::inadmissible)
    fail(ErrorCode::Inadmissible, "no opposite diagonal or cross pattern");
  if (adm == Admissibility::admissible_minus) return CrValue::minus_inf();
  if (adm == Admissibility::admissible_plus) return CrValue::plus_inf();

  const std::vector<CartanVector> alphas = dual_basis(face);
  const std::vector<int> steps = face.proper_steps();
  CartanVector out(face.n, std::vector<double>(face.n, 0.0));
  for (size_t j = 0; j < steps.size(); ++j) {
    const CrValue cj = cr_scalar(q, corner_type(face.n, steps[j]));
    out += cj.scalar * alphas[j];
  }
  return CrValue::finite_vector(out);
}

CrValue cr_project(const CrValue& sigma_value, const FaceSignature& face, const Quadruple& q) {
  if (!sigma_value.finite() || !sigma_value.vector.has_value())
    fail(ErrorCode::Inadmissible, "projection needs a finite vector value");
  const CartanVector proj = project_to_face(*sigma_value.vector, face);

  Quadruple qt(q.x.truncate(face), q.y.truncate(face.involute()), q.z.truncate(face),
               q.w.truncate(face.involute()));
  const CrValue direct = cr_vector(qt, face);
  if (!direct.finite()) fail(ErrorCode::Inadmissible, "face-truncated quadruple degenerates");
  const double dev = (proj - *direct.vector).norm();
  if (dev > 1e-9 * std::max(1.0, proj.norm()))
    fail(ErrorCode::Internal, "projection disagrees with the direct face value");
  return CrValue::finite_vector(proj);
}

RealEig real_eig(const Matrix& g) {
  if (!g.is_square()) fail(ErrorCode::DimensionMismatch, "eigendecomposition of non-square");
  const int n = g.rows();
  Matrix t = g;
  Matrix qtotal = Matrix::identity(n);
  const double scale = std::max(1.0, g.max_abs());

  double off = 0.0;
  const int max_iter = 20000;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    off = 0.0;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) off = std::max(off, std::fabs(t(i, j)));
    if (off < 1e-13 * scale) break;
    Matrix q;
    try {
      q = gram_schmidt(t);
    } catch (const Error&) {
      fail(ErrorCode::NotRegular, "QR iteration hit a singular iterate");
    }
    t = q.transpose() * t * q;
    qtotal = qtotal * q;
  }
  if (iter == max_iter)
    fail(ErrorCode::NotRegular, "spectrum did not separate (complex pair or tied moduli)");

  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[i] = t(i, i);

  // Eigenvectors by back-substitution in the Schur form.
  Matrix vecs(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    for (int k = i - 1; k >= 0; --k) {
      double s = 0.0;
      for (int j = k + 1; j <= i; ++j) s += t(k, j) * v[j];
      const double denom = t(k, k) - values[i];
      if (std::fabs(denom) < 1e-10 * scale)
        fail(ErrorCode::NotRegular, "eigenvalues too close to separate");
      v[k] = -s / denom;
    }
    std::vector<double> w(n, 0.0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c <= i; ++c) w[r] += qtotal(r, c) * v[c];
    double nm = 0.0;
    for (double x : w) nm += x * x;
    nm = std::sqrt(nm);
    for (double& x : w) x /= nm;
    vecs.set_column(i, w);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::fabs(values[a]) > std::fabs(values[b]); });
  RealEig out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = values[order[k]];
    out.vectors.set_column(k, vecs.column(order[k]));
  }
  return out;
}

PeriodResult period(const Matrix& g, const Flag& x) {
  const int n = g.rows();
  if (std::fabs(det(g) - 1.0) > 1e-8) fail(ErrorCode::NotUnimodular, "determinant must be one");
  const RealEig eig = real_eig(g);
  for (int i = 0; i + 1 < n; ++i) {
    const double hi = std::fabs(eig.values[i]);
    const double lo = std::fabs(eig.values[i + 1]);
    if (!(lo > 0.0) || (hi - lo) / hi < 1e-6)
      fail(ErrorCode::NotRegular, "eigenvalue moduli are not well separated");
  }

  const FaceSignature full = FaceSignature::full(n);
  const Flag gplus(n, full, eig.vectors);
  Matrix rev(n, n);
  for (int j = 0; j < n; ++j) rev.set_column(j, eig.vectors.column(n - 1 - j));
  const Flag gminus(n, full, rev);

  if (!is_opposite(x, gplus) || !is_opposite(x, gminus))
    fail(ErrorCode::NotGeneric, "x must be opposite to both eigenflags");
  const Flag gx = act(g, x);
  if (!is_opposite(gx, gplus) || !is_opposite(gx, gminus))
    fail(ErrorCode::NotGeneric, "g x degenerates against the eigenflags");

  const CrValue cr = cr_vector(Quadruple(gminus, gx, gplus, x), full);
  if (!cr.finite()) fail(ErrorCode::NotGeneric, "period quadruple is not all-opposite");

  std::vector<double> ell(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    ell[i] = 2.0 * std::log(std::fabs(eig.values[i]));
    sum += ell[i];
  }
  for (double& v : ell) v -= sum / n;  // det-one drift
  CartanVector ellv(n, std::move(ell));

  const CartanVector expect = (metric_scale(n) / 2.0) * (ellv + involute(ellv));
  const double residual = (*cr.vector - expect).norm();
  if (residual > 1e-8 * std::max(1.0, expect.norm()))
    fail(ErrorCode::Internal, "period identity violated beyond tolerance");

  PeriodResult out{*cr.vector, ellv, residual, gplus, gminus};
  return out;
}

PeriodResult period(const Matrix& g) {
  const int n = g.rows();
  // Deterministic generic choice: a rotated standard flag.
  Matrix b = Matrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) += 0.137 * (i + 1) / (j + 2.0);
  return period(g, Flag(n, FaceSignature::full(n), b));
}

CartanVector geom_interp(const Quadruple& q, const SpdPoint& o) {
  if (!q.x.is_full()) fail(ErrorCode::BadInput, "geometric interpretation needs full flags");
  if (classify(q) != Admissibility::all_opposite)
    fail(ErrorCode::Inadmissible, "quadruple must be all-opposite");
  const CartanVector a0 = flat_coordinates(o, q.x, q.y);  // BasepointNotInFlat if off the flat

  SpdPoint p = retract(o, q.y, q.z);
  p = retract(p, q.z, q.w);
  p = retract(p, q.w, q.x);
  p = retract(p, q.x, q.y);
  const CartanVector a1 = flat_coordinates(p, q.x, q.y);
  return a1 - a0;
}

}  // namespace xr
