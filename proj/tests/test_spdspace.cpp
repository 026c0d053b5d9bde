#include "doctest.h"

#include <cmath>

#include "xr/crossratio.hpp"
#include "xr/randgen.hpp"

using namespace xr;

namespace {
const double s2 = std::sqrt(2.0);
TypeVector a1_type() { return make_type(2, {1 / s2, -1 / s2}, {1, 1}); }
}  // namespace

TEST_CASE("spd point validation") {
  CHECK_THROWS_AS(SpdPoint(Matrix(2, 2, {2, 0, 0, 1})), Error);   // det != 1
  CHECK_THROWS_AS(SpdPoint(Matrix(2, 2, {0, 1, 1, 0})), Error);   // indefinite
  CHECK_THROWS_AS(SpdPoint(Matrix(2, 2, {1, 0.5, 0, 1})), Error); // asymmetric
  CHECK(SpdPoint::identity(3).n() == 3);
}

TEST_CASE("distance") {
  const SpdPoint id = SpdPoint::identity(2);
  CHECK(distance(id, id) == doctest::Approx(0.0));
  const SpdPoint p(Matrix::diagonal({std::exp(2.0), std::exp(-2.0)}));
  CHECK(distance(id, p) == doctest::Approx(4 * s2));

  Rng rng(3);
  for (int k = 0; k < 8; ++k) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const SpdPoint a = random_spd_point(rng, n);
    const SpdPoint b = random_spd_point(rng, n);
    const Matrix g = random_unimodular(rng, n);
    const SpdPoint ga(g * a.mat() * g.transpose());
    const SpdPoint gb(g * b.mat() * g.transpose());
    CHECK(distance(ga, gb) == doctest::Approx(distance(a, b)).epsilon(1e-9));
    CHECK(distance(a, b) == doctest::Approx(distance(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("triangle inequality") {
  Rng rng(5);
  for (int k = 0; k < 12; ++k) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const SpdPoint a = random_spd_point(rng, n);
    const SpdPoint b = random_spd_point(rng, n);
    const SpdPoint c = random_spd_point(rng, n);
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-10);
  }
}

TEST_CASE("finite gromov product") {
  Rng rng(7);
  const SpdPoint o = random_spd_point(rng, 3);
  const SpdPoint p = random_spd_point(rng, 3);
  CHECK(finite_gromov(p, p, o) == doctest::Approx(distance(o, p)));
  CHECK(finite_gromov(o, p, o) == doctest::Approx(0.0));

  // collinear points exp(s Lambda) at s = -1, 0, 2: all reduces to the line
  const CartanVector lam = embed(make_type(3, {0.5, 0.2, -0.7}, {1, 1, 1}, true));
  auto at = [&](double s) {
    std::vector<double> d(3);
    for (int i = 0; i < 3; ++i) d[i] = std::exp(s * lam.coords[i]);
    return SpdPoint(Matrix::diagonal(d));
  };
  const double unit = metric_scale(3) * lam.norm();
  const double want = 0.5 * (1 + 2 - 3) * unit;
  CHECK(finite_gromov(at(-1), at(2), at(0)) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("geodesics") {
  const SpdPoint id = SpdPoint::identity(2);
  const IdealPoint x(standard_pair(2, FaceSignature::full(2)).first, a1_type());
  CHECK(frobenius_distance(geodesic_point(id, x, 0).mat(), id.mat()) <= 1e-12);

  const SpdPoint q = geodesic_point(id, x, 2 * s2);
  CHECK(q.mat()(0, 0) == doctest::Approx(std::exp(1.0)));
  CHECK(q.mat()(1, 1) == doctest::Approx(std::exp(-1.0)));

  Rng rng(9);
  for (int k = 0; k < 8; ++k) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const SpdPoint o = random_spd_point(rng, n);
    const IdealPoint xi(random_full_flag(rng, n), random_regular_type(rng, n, 0.05));
    const double t = rng.uniform(0.1, 5.0);
    CHECK(distance(o, geodesic_point(o, xi, t)) == doctest::Approx(t).epsilon(1e-8));
    CHECK(distance(o, geodesic_point(o, xi, -t)) == doctest::Approx(t).epsilon(1e-8));
  }
}

TEST_CASE("busemann closed form") {
  const SpdPoint id = SpdPoint::identity(2);
  const IdealPoint x(standard_pair(2, FaceSignature::full(2)).first, a1_type());
  CHECK(busemann(x, id, id) == doctest::Approx(0.0));

  const SpdPoint p(Matrix::diagonal({std::exp(1.0), std::exp(-1.0)}));
  CHECK(busemann(x, p, id) == doctest::Approx(-2 * s2));

  Rng rng(11);
  for (int k = 0; k < 8; ++k) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const SpdPoint o = random_spd_point(rng, n);
    const IdealPoint xi(random_full_flag(rng, n), random_regular_type(rng, n, 0.05));
    const double s = rng.uniform(-3.0, 3.0);
    CHECK(busemann(xi, o, geodesic_point(o, xi, s)) == doctest::Approx(s).epsilon(1e-8));
    const SpdPoint p2 = random_spd_point(rng, n);
    const SpdPoint p3 = random_spd_point(rng, n);
    // antisymmetry, bound, cocycle
    CHECK(busemann(xi, o, p2) == doctest::Approx(-busemann(xi, p2, o)).epsilon(1e-10));
    CHECK(std::fabs(busemann(xi, o, p2)) <= distance(o, p2) + 1e-9);
    CHECK(busemann(xi, o, p2) + busemann(xi, p2, p3) ==
          doctest::Approx(busemann(xi, o, p3)).epsilon(1e-9));
  }
}

TEST_CASE("busemann well defined across representatives of a partial flag") {
  Rng rng(12);
  const FaceSignature face(3, {1, 3});
  // Same line, two different completions.
  Matrix b1 = random_gaussian(rng, 3, 3);
  Matrix b2 = random_gaussian(rng, 3, 3);
  b2.set_column(0, b1.column(0));
  const TypeVector t = make_type(3, {0.9, -0.45}, {1, 2}, true);
  const IdealPoint x1(Flag(3, face, b1), t);
  const IdealPoint x2(Flag(3, face, b2), t);
  const SpdPoint o = random_spd_point(rng, 3);
  const SpdPoint p = random_spd_point(rng, 3);
  CHECK(busemann(x1, o, p) == doctest::Approx(busemann(x2, o, p)).epsilon(1e-10));
}

TEST_CASE("trailing minors") {
  const SpdPoint d(Matrix::diagonal({2.0, 1.0, 0.5}));
  CHECK(delta_minor(d, 1) == doctest::Approx(0.5));
  CHECK(delta_minor(SpdPoint::identity(3), 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(delta_minor(d, 3), Error);

  // Appendix block identity: the retract of the identity along a rotated
  // chamber has trailing minors given by row determinants of the rotation.
  Rng rng(13);
  for (int n : {2, 3, 4}) {
    const FaceSignature full = FaceSignature::full(n);
    const auto [sflag, sopp] = standard_pair(n, full);
    for (int trial = 0; trial < 4; ++trial) {
      const Matrix k = random_rotation(rng, n);
      const Flag kflag(n, full, k);
      if (opposition_margin(kflag, sflag) < 0.05) continue;
      const SpdPoint p = retract(SpdPoint::identity(n), kflag, sflag);
      for (int j = 1; j <= n - 1; ++j) {
        Matrix m(n, n);
        for (int c = 0; c < n - j; ++c) m(c, c) = 1.0;
        for (int c = 0; c < j; ++c)
          for (int r = 0; r < n; ++r) m(r, n - j + c) = k(c, r);  // rows of k
        const double dd = det(m);
        CHECK(delta_minor(p, n - j) == doctest::Approx(dd * dd).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("retract") {
  // 2x2 shear: o = [[1,1],[1,2]] against the standard chamber pair
  const auto [cx, cy] = standard_pair(2, FaceSignature::full(2));
  const SpdPoint o(Matrix(2, 2, {1, 1, 1, 2}));
  const SpdPoint r = retract(o, cx, cy);
  CHECK(r.mat()(0, 0) == doctest::Approx(0.5));
  CHECK(r.mat()(1, 1) == doctest::Approx(2.0));
  CHECK(std::fabs(r.mat()(0, 1)) <= 1e-12);

  CHECK_THROWS_AS(retract(o, cx, cx), Error);  // NotOpposite

  Rng rng(15);
  for (int k = 0; k < 8; ++k) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const auto [x, y] = random_opposite_pair(rng, n, FaceSignature::full(n), 0.05);
    const SpdPoint oo = random_spd_point(rng, n);
    const SpdPoint rr = retract(oo, x, y);
    // lands in the flat
    CHECK_NOTHROW(flat_coordinates(rr, x, y));
    // Busemann invariance toward every corner of the chamber
    const SpdPoint pp = random_spd_point(rng, n);
    for (int j = 1; j < n; ++j) {
      const IdealPoint xc(x.truncate(corner_type(n, j).face()), corner_type(n, j));
      CHECK(busemann(xc, oo, pp) == doctest::Approx(busemann(xc, rr, pp)).epsilon(1e-9));
    }
  }
}

TEST_CASE("busemann antisymmetry across a parallel set") {
  Rng rng(17);
  for (int n : {2, 3}) {
    const auto [x, y] = random_opposite_pair(rng, n, FaceSignature::full(n), 0.05);
    const TypeVector t = random_regular_type(rng, n, 0.05);
    std::vector<double> u(n), v(n);
    double su = 0, sv = 0;
    for (int i = 0; i < n; ++i) {
      u[i] = rng.uniform(-1, 1);
      v[i] = rng.uniform(-1, 1);
      su += u[i];
      sv += v[i];
    }
    for (int i = 0; i < n; ++i) {
      u[i] -= su / n;
      v[i] -= sv / n;
    }
    const SpdPoint p1 = flat_point(x, y, CartanVector(n, u));
    const SpdPoint p2 = flat_point(x, y, CartanVector(n, v));
    CHECK(busemann(IdealPoint(x, t), p1, p2) ==
          doctest::Approx(-busemann(IdealPoint(y, involute(t)), p1, p2)).epsilon(1e-9));
  }
}

TEST_CASE("limit oracle") {
  const SpdPoint id = SpdPoint::identity(2);
  const auto [s, o2] = standard_pair(2, FaceSignature::full(2));
  const TypeVector lam = a1_type();

  // endpoints of a geodesic through the basepoint: product zero
  const GromovEstimate axis =
      gromov_oracle(IdealPoint(s, lam), IdealPoint(o2, involute(lam)), id, 1e4);
  CHECK_FALSE(axis.non_opposite);
  CHECK(std::fabs(axis.value) <= 1e-9);

  // closed-form benchmark: lines e1 and e1 + e2
  const Flag y(2, FaceSignature::full(2), Matrix(2, 2, {1, 0, 1, 1}));
  const GromovEstimate est =
      gromov_oracle(IdealPoint(s, lam), IdealPoint(y, involute(lam)), id, 1e4);
  CHECK(est.value == doctest::Approx(s2 * std::log(2.0)).epsilon(1e-5));

  // non-opposite partner: divergence detected
  const GromovEstimate bad =
      gromov_oracle(IdealPoint(s, lam), IdealPoint(s, involute(lam)), id, 1e3);
  CHECK(bad.non_opposite);

  // type of y must be the involuted type (visible for asymmetric types)
  const TypeVector skew = make_type(3, {0.9, 0.1, -1.0}, {1, 1, 1}, true);
  const auto [s3, o3] = standard_pair(3, FaceSignature::full(3));
  CHECK_THROWS_AS(
      gromov_oracle(IdealPoint(s3, skew), IdealPoint(o3, skew), SpdPoint::identity(3), 1e3),
      Error);
}

TEST_CASE("basepoint change identity against the oracle") {
  Rng rng(19);
  const int n = 2;
  const auto [x, y] = random_opposite_pair(rng, n, FaceSignature::full(n), 0.05);
  const TypeVector lam = random_regular_type(rng, n, 0.1);
  const SpdPoint o = random_spd_point(rng, n);
  const SpdPoint oh = random_spd_point(rng, n);
  const double rhs = gromov_closed(x, y, lam, oh).scalar +
                     0.5 * busemann(IdealPoint(x, lam), o, oh) +
                     0.5 * busemann(IdealPoint(y, involute(lam)), o, oh);
  const GromovEstimate lhs = gromov_oracle(IdealPoint(x, lam), IdealPoint(y, involute(lam)), o, 1e4);
  CHECK(lhs.value == doctest::Approx(rhs).epsilon(1e-4));
}

TEST_CASE("calibration") {
  const CalibrationReport r2 = calibrate(2, 5, 42);
  CHECK(r2.c_metric == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(r2.residual <= 1e-4);  // extrapolation leaves little spread
  const CalibrationReport r3 = calibrate(3, 5, 42);
  CHECK(r3.c_metric == doctest::Approx(3.0).epsilon(1e-3));
  CHECK_THROWS_AS(calibrate(7, 5, 42), Error);
}
