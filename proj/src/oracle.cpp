// Limit oracle for boundary Gromov products. At the working t around 1e4 the
// geodesic endpoints carry entries like exp(3500), far outside double range,
// so the distance d(gamma_x(t), gamma_y(t)) is evaluated in MPFR floats with
// the precision sized from the actual eigenvalue spread of the two types.
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>

#include "xr/crossratio.hpp"
#include "xr/jacobi_impl.hpp"
#include "xr/randgen.hpp"
#include "xr/spdspace.hpp"

namespace xr {

namespace {

namespace mp = boost::multiprecision;
using big = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

// d(gamma_ox(t), gamma_oy(t)) via the squared singular values of
// B = exp(-t L1 / 2n) Q exp(t L2 / 2n), Q = k1^t k2.
double big_geodesic_distance(const Matrix& q, const CartanVector& lam1, const CartanVector& lam2,
                             double t) {
  const int n = lam1.n;
  const double spread1 = lam1.coords.front() - lam1.coords.back();
  const double spread2 = lam2.coords.front() - lam2.coords.back();
  const double nats = t * (spread1 + spread2) / n;
  const long bits = static_cast<long>(nats / std::log(2.0)) + 192;
  const unsigned digits = static_cast<unsigned>(bits * 0.30103) + 8;
  big::default_precision(digits);

  std::vector<big> row(n), col(n);
  for (int i = 0; i < n; ++i) {
    row[i] = exp(big(-t * lam1.coords[i] / (2.0 * n)));
    col[i] = exp(big(t * lam2.coords[i] / (2.0 * n)));
  }
  std::vector<big> b(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b[static_cast<size_t>(i) * n + j] = big(q(i, j)) * row[i] * col[j];

  std::vector<big> m(static_cast<size_t>(n) * n, big(0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      big s(0);
      for (int k = 0; k < n; ++k)
        s += b[static_cast<size_t>(i) * n + k] * b[static_cast<size_t>(j) * n + k];
      m[static_cast<size_t>(i) * n + j] = s;
      m[static_cast<size_t>(j) * n + i] = s;
    }

  const big tol = ldexp(big(1), static_cast<int>(-(bits - 32)));
  detail::jacobi_diagonalize<big>(m, n, tol, nullptr, 400);

  big acc(0);
  for (int i = 0; i < n; ++i) {
    const big ev = m[static_cast<size_t>(i) * n + i];
    if (!(ev > 0)) fail(ErrorCode::Internal, "oracle eigenvalue collapsed");
    const big lg = log(ev);  // eig(B B^t) = eig(gamma_x^-1 gamma_y)
    acc += lg * lg;
  }
  return static_cast<double>(big(n * sqrt(acc)));
}

}  // namespace

GromovEstimate gromov_oracle(const IdealPoint& x, const IdealPoint& y, const SpdPoint& o,
                             double t) {
  const int n = o.n();
  if (x.flag.n() != n || y.flag.n() != n) fail(ErrorCode::DimensionMismatch, "oracle arity");
  {
    const TypeVector want = involute(x.type);
    if (want.mults != y.type.mults) fail(ErrorCode::TypeMismatch, "type of y must be iota type of x");
    for (size_t i = 0; i < want.values.size(); ++i)
      if (std::fabs(want.values[i] - y.type.values[i]) > 1e-10)
        fail(ErrorCode::TypeMismatch, "type of y must be iota type of x");
  }
  if (!(t > 0)) fail(ErrorCode::BadInput, "t must be positive");

  const Matrix w = spd_inv_sqrt(o.mat());
  const Matrix k1 = gram_schmidt(w * x.flag.basis());
  const Matrix k2 = gram_schmidt(w * y.flag.basis());
  const Matrix q = k1.transpose() * k2;
  const CartanVector lam1 = embed(x.type);
  const CartanVector lam2 = embed(y.type);

  GromovEstimate est;
  est.f_t = t - 0.5 * big_geodesic_distance(q, lam1, lam2, t);
  est.f_2t = 2.0 * t - 0.5 * big_geodesic_distance(q, lam1, lam2, 2.0 * t);
  est.value = 2.0 * est.f_2t - est.f_t;
  est.non_opposite = (est.f_2t - est.f_t) > 0.1;
  return est;
}

CalibrationReport calibrate(int n, int trials, std::uint64_t seed) {
  if (n < 2 || n > 6) fail(ErrorCode::BadInput, "calibrate supports n in [2,6]");
  if (trials < 1) fail(ErrorCode::BadInput, "at least one trial");
  Rng rng(seed);
  const SpdPoint id = SpdPoint::identity(n);
  const FaceSignature full = FaceSignature::full(n);

  double num = 0.0, den = 0.0;
  std::vector<double> raw(trials), closed(trials);
  for (int k = 0; k < trials; ++k) {
    const TypeVector lam = random_regular_type(rng, n, 0.08);
    const auto [x, y] = random_opposite_pair(rng, n, full, 0.05);
    const CrValue f = gromov_closed(x, y, lam, id);
    if (!f.finite()) fail(ErrorCode::Internal, "sampled pair lost opposition");
    const GromovEstimate est = gromov_oracle(IdealPoint(x, lam), IdealPoint(y, involute(lam)), id, 1e4);
    if (est.non_opposite) fail(ErrorCode::Internal, "oracle flagged an opposite pair");
    raw[k] = est.value / metric_scale(n);  // limit in the unscaled metric
    closed[k] = f.scalar;
    num += raw[k] * closed[k];
    den += raw[k] * raw[k];
  }
  if (!(den > 0.0)) fail(ErrorCode::CalibrationFailed, "degenerate sample");

  CalibrationReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.c_metric = num / den;
  double worst = 0.0;
  for (int k = 0; k < trials; ++k)
    worst = std::max(worst, std::fabs(rep.c_metric * raw[k] - closed[k]));
  rep.residual = worst;
  if (rep.residual > 1e-3) fail(ErrorCode::CalibrationFailed, "fit residual above 1e-3");
  if (std::fabs(rep.c_metric - n) > 1e-3)
    fail(ErrorCode::CalibrationFailed, "fitted constant is not the dimension");
  return rep;
}

}  // namespace xr
