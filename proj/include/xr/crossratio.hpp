// Closed-form Gromov products and scalar/vector cross ratios on flag spaces,
// admissibility classification, periods of regular hyperbolic elements and
// the retract-word geometric interpretation.
#pragma once

#include <optional>

#include "xr/cartan.hpp"
#include "xr/flags.hpp"
#include "xr/spdspace.hpp"

namespace xr {

enum class Admissibility { all_opposite, admissible_minus, admissible_plus, inadmissible };
const char* admissibility_name(Admissibility a);

struct CrValue {
  enum class Kind { finite, plus_inf, minus_inf };
  Kind kind = Kind::finite;
  double scalar = 0.0;
  std::optional<CartanVector> vector;

  static CrValue finite_scalar(double v);
  static CrValue finite_vector(CartanVector v);
  static CrValue plus_inf();
  static CrValue minus_inf();
  bool finite() const { return kind == Kind::finite; }
};

// (x, y, z, w) with x, z of one type and y, w of the involuted type.
struct Quadruple {
  Flag x, y, z, w;
  Quadruple(Flag x_, Flag y_, Flag z_, Flag w_);
};

// Closed-form Gromov product (x|y)_{o,t}. The type may live on a coarser
// face of the flag signatures, in which case the flags are projected first.
// plus_inf exactly when the (projected) pair is not opposite.
CrValue gromov_closed(const Flag& x, const Flag& y, const TypeVector& t, const SpdPoint& o);
CrValue gromov_closed(const Flag& x, const Flag& y, const TypeVector& t);  // o = I

Admissibility classify(const Quadruple& q);

// Scalar cross ratio with respect to an interior type of the quadruple's
// face (or a coarser one). Finite iff all four pairs are opposite; the
// +-infinity conventions follow the admissibility pattern. Basepoint
// independent; the optional basepoint only changes the code path for the
// reference evaluation. Throws Inadmissible.
CrValue cr_scalar(const Quadruple& q, const TypeVector& xi,
                  const std::optional<SpdPoint>& o = std::nullopt);

// Reference path: alternating sum of four closed-form Gromov products at an
// explicit basepoint. The wedge-ratio path above must match this to 1e-10.
double cr_scalar_gromov_sum(const Quadruple& q, const TypeVector& xi, const SpdPoint& o);

// Vector-valued cross ratio: sum of corner cross ratios against the face's
// dual basis. Lives in the span of the face's corner embeddings.
CrValue cr_vector(const Quadruple& q, const FaceSignature& face);

// Orthogonal projection of a full-chamber vector value onto the face span;
// verified against the direct cr_vector of the face-truncated flags.
CrValue cr_project(const CrValue& sigma_value, const FaceSignature& face, const Quadruple& q);

// Period of a regular hyperbolic element: cr_sigma(g^-, g x, g^+, x) together
// with the log-eigenvalue vector ell (coords 2 log|eig_i| descending). In the
// calibrated metric the identity cr = (n/2) (ell + iota ell) holds; residual
// is reported and must stay below 1e-8.
struct PeriodResult {
  CartanVector period;       // cr_sigma value
  CartanVector translation;  // ell
  double residual = 0.0;
  Flag attracting;           // g^+
  Flag repelling;            // g^-
};
PeriodResult period(const Matrix& g, const Flag& x);
PeriodResult period(const Matrix& g);  // picks a generic x deterministically

// Flat displacement of the four-retract word: pi(rho_x rho_w rho_z rho_y(o))
// relative to o, for o in the flat joining x and y. Equals 2 cr_sigma.
CartanVector geom_interp(const Quadruple& q, const SpdPoint& o);

// Real eigendecomposition for matrices with distinct-modulus real spectrum
// (unshifted QR iteration + back-substitution). Values sorted by descending
// modulus, columns of `vectors` aligned. Throws NotRegular.
struct RealEig {
  std::vector<double> values;
  Matrix vectors;
};
RealEig real_eig(const Matrix& g);

}  // namespace xr
