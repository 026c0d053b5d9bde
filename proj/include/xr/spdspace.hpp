// Geometry of P_n = SL(n,R)/SO(n) realized as unit-determinant SPD matrices:
// distance, geodesics toward boundary points, Busemann functions in closed
// form via trailing minors, horospherical retracts and the numerical limit
// oracle for Gromov products.
//
// Metric normalization: d(a,b) = metric_scale(n) * ||log-eigenvalues(a^-1 b)||_2
// with metric_scale(n) = n, the single calibrated constant that makes the
// closed-form Busemann identity b_x(o, gamma_ox(s)) = s hold with unit-norm
// types. The calibrate() op re-derives it from the limit oracle.
#pragma once

#include <optional>

#include "xr/cartan.hpp"
#include "xr/flags.hpp"
#include "xr/matnum.hpp"

namespace xr {

inline double metric_scale(int n) { return static_cast<double>(n); }

class SpdPoint {
 public:
  SpdPoint() = default;
  explicit SpdPoint(const Matrix& mat);

  static SpdPoint identity(int n) { return SpdPoint(Matrix::identity(n)); }

  int n() const { return mat_.rows(); }
  const Matrix& mat() const { return mat_; }

 private:
  Matrix mat_;
};

struct IdealPoint {
  Flag flag;
  TypeVector type;

  IdealPoint(Flag f, TypeVector t);
};

double distance(const SpdPoint& a, const SpdPoint& b);

// (p|q)_o = (d(o,p) + d(o,q) - d(p,q)) / 2.
double finite_gromov(const SpdPoint& p, const SpdPoint& q, const SpdPoint& o);

// Point at arc length t on the geodesic from o toward x. Negative t runs the
// bi-infinite extension toward the ortho-opposite ideal point.
SpdPoint geodesic_point(const SpdPoint& o, const IdealPoint& x, double t);

// Busemann function b_x(o, p); antisymmetric in (o,p), cocycle-additive, and
// b_x(o, gamma_ox(s)) = s.
double busemann(const IdealPoint& x, const SpdPoint& o, const SpdPoint& p);

// Trailing principal j x j minor determinant, 1 <= j <= n-1.
double delta_minor(const SpdPoint& p, int j);

// Horospherical retract of o onto the flat joining the opposite full flags
// cx, cy, along the horospheres of cx. Realized by the unipotent shear moving
// the flat through o (with cx at infinity) onto the target flat.
SpdPoint retract(const SpdPoint& o, const Flag& cx, const Flag& cy);

// Coordinates of a point lying in the flat joining opposite full flags,
// ordered by cx's filtration and scaled so the flat metric is Euclidean.
// Throws BasepointNotInFlat when the off-diagonal residual exceeds tol.
CartanVector flat_coordinates(const SpdPoint& p, const Flag& cx, const Flag& cy,
                              double tol = 1e-8);
// Point of the flat with the given coordinates (inverse of the above up to
// the flat's translation normalization: coordinates are absolute in the
// joint-lines gauge).
SpdPoint flat_point(const Flag& cx, const Flag& cy, const CartanVector& coords);

// Finite-t estimate of the boundary Gromov product via the limit definition,
// evaluated at t and 2t with Richardson extrapolation. Runs in big-float
// arithmetic; t around 1e4 is the intended regime.
struct GromovEstimate {
  double value = 0.0;     // extrapolated estimate
  double f_t = 0.0;       // t - d(..)/2 at t
  double f_2t = 0.0;      // at 2t
  bool non_opposite = false;  // divergence detected (f_2t - f_t > 0.1)
};
GromovEstimate gromov_oracle(const IdealPoint& x, const IdealPoint& y, const SpdPoint& o,
                             double t);

// Least-squares fit of the metric constant between the limit oracle and the
// closed-form Gromov product over random opposite full-flag pairs. Throws
// CalibrationFailed when the residual exceeds 1e-3.
struct CalibrationReport {
  int n = 0;
  double c_metric = 0.0;
  double residual = 0.0;  // max |fit * oracle - closed| over trials
  int trials = 0;
  std::uint64_t seed = 0;
};
CalibrationReport calibrate(int n, int trials, std::uint64_t seed = 42);

}  // namespace xr
