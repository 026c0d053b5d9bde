// Model Cartan data for type A_{n-1}: the chamber, type vectors with
// multiplicities, the opposition involution, corner types, and dual vectors.
// The Cartan algebra is realized concretely as traceless coordinate n-vectors
// with the Euclidean dot product, so a normalized type embeds to a unit
// vector. Any global metric rescaling lives in spdspace, not here.
#pragma once

#include <vector>

#include "xr/error.hpp"

namespace xr {

// Dimension steps (i_1 < ... < i_l = n) of flags of one type.
struct FaceSignature {
  int n = 0;
  std::vector<int> dims;

  FaceSignature() = default;
  FaceSignature(int n_, std::vector<int> dims_);

  static FaceSignature full(int n);
  FaceSignature involute() const;
  // Grassmannian steps {i_1, ..., i_{l-1}}.
  std::vector<int> proper_steps() const;
  bool operator==(const FaceSignature& o) const { return n == o.n && dims == o.dims; }
};

// Boundary type: strictly decreasing values with positive multiplicities,
// weighted mean zero and weighted square-sum one.
struct TypeVector {
  int n = 0;
  std::vector<double> values;
  std::vector<int> mults;

  FaceSignature face() const;
  int blocks() const { return static_cast<int>(values.size()); }
};

// Element of the Cartan algebra: traceless coordinate n-vector.
struct CartanVector {
  int n = 0;
  std::vector<double> coords;

  CartanVector() = default;
  CartanVector(int n_, std::vector<double> coords_);

  CartanVector& operator+=(const CartanVector& o);
  CartanVector& operator-=(const CartanVector& o);
  CartanVector& operator*=(double s);
  double norm() const;
};

CartanVector operator+(CartanVector a, const CartanVector& b);
CartanVector operator-(CartanVector a, const CartanVector& b);
CartanVector operator*(double s, CartanVector a);

// Validated construction. With normalize=true the raw values are first
// projected onto the constraint set (subtract weighted mean, rescale to unit
// weighted square-sum). Throws NotDecreasing / BadMultiplicities.
TypeVector make_type(int n, std::vector<double> values, std::vector<int> mults,
                     bool normalize = false);

// Opposition involution: values reversed and negated, mults reversed.
TypeVector involute(const TypeVector& t);
// Reverse-negation on embedded coordinates.
CartanVector involute(const CartanVector& v);

// The n-1 corner types of the chamber; corner j has multiplicities (j, n-j).
std::vector<TypeVector> corner_types(int n);
TypeVector corner_type(int n, int j);

// Expand (values, mults) to the coordinate n-vector, each value repeated by
// its multiplicity. Unit norm by the type constraints.
CartanVector embed(const TypeVector& t);

// Euclidean inner product on embedded coordinates.
double a_inner(const CartanVector& u, const CartanVector& v);

// Dual vectors alpha_j for the corners of a face: <alpha_j, xi_i> = delta_ij
// on the corner embeddings, solved through the Gram system. Ordered like
// proper_steps().
std::vector<CartanVector> dual_basis(const FaceSignature& face);

// Orthogonal projection onto the span of the face's corner embeddings.
CartanVector project_to_face(const CartanVector& v, const FaceSignature& face);

// Rebuild a TypeVector from an embedded coordinate vector whose value blocks
// follow the given face (values constant on blocks, strictly decreasing).
TypeVector type_from_embedded(const CartanVector& v, const FaceSignature& face);

}  // namespace xr
