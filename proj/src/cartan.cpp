#include "xr/cartan.hpp"

#include <algorithm>
#include <cmath>

#include "xr/matnum.hpp"

namespace xr {

FaceSignature::FaceSignature(int n_, std::vector<int> dims_) : n(n_), dims(std::move(dims_)) {
  if (n < 1) fail(ErrorCode::BadInput, "face signature needs n >= 1");
  if (dims.empty() || dims.back() != n)
    fail(ErrorCode::BadInput, "face signature must end at n");
  for (size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1 || (i > 0 && dims[i] <= dims[i - 1]))
      fail(ErrorCode::BadInput, "face signature must be strictly increasing");
  }
}

FaceSignature FaceSignature::full(int n) {
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) d[i] = i + 1;
  return FaceSignature(n, std::move(d));
}

FaceSignature FaceSignature::involute() const {
  std::vector<int> d;
  for (auto it = dims.rbegin(); it != dims.rend(); ++it)
    if (*it != n) d.push_back(n - *it);
  d.push_back(n);
  return FaceSignature(n, std::move(d));
}

std::vector<int> FaceSignature::proper_steps() const {
  return std::vector<int>(dims.begin(), dims.end() - 1);
}

FaceSignature TypeVector::face() const {
  std::vector<int> d;
  int acc = 0;
  for (int m : mults) {
    acc += m;
    d.push_back(acc);
  }
  return FaceSignature(n, std::move(d));
}

CartanVector::CartanVector(int n_, std::vector<double> coords_)
    : n(n_), coords(std::move(coords_)) {
  if (static_cast<int>(coords.size()) != n)
    fail(ErrorCode::DimensionMismatch, "coordinate count != n");
  double s = 0.0;
  for (double c : coords) s += c;
  if (std::fabs(s) > 1e-10 * std::max(1.0, norm()))
    fail(ErrorCode::BadInput, "coordinates must sum to zero");
}

CartanVector& CartanVector::operator+=(const CartanVector& o) {
  if (o.n != n) fail(ErrorCode::DimensionMismatch, "cartan vector sum");
  for (int i = 0; i < n; ++i) coords[i] += o.coords[i];
  return *this;
}
CartanVector& CartanVector::operator-=(const CartanVector& o) {
  if (o.n != n) fail(ErrorCode::DimensionMismatch, "cartan vector difference");
  for (int i = 0; i < n; ++i) coords[i] -= o.coords[i];
  return *this;
}
CartanVector& CartanVector::operator*=(double s) {
  for (double& c : coords) c *= s;
  return *this;
}
double CartanVector::norm() const {
  double s = 0.0;
  for (double c : coords) s += c * c;
  return std::sqrt(s);
}

CartanVector operator+(CartanVector a, const CartanVector& b) { a += b; return a; }
CartanVector operator-(CartanVector a, const CartanVector& b) { a -= b; return a; }
CartanVector operator*(double s, CartanVector a) { a *= s; return a; }

TypeVector make_type(int n, std::vector<double> values, std::vector<int> mults, bool normalize) {
  if (values.size() != mults.size() || values.empty())
    fail(ErrorCode::BadMultiplicities, "values and mults must align and be non-empty");
  int total = 0;
  for (int m : mults) {
    if (m < 1) fail(ErrorCode::BadMultiplicities, "multiplicities must be positive");
    total += m;
  }
  if (total != n) fail(ErrorCode::BadMultiplicities, "multiplicities must sum to n");

  if (normalize) {
    double mean = 0.0;
    for (size_t i = 0; i < values.size(); ++i) mean += mults[i] * values[i];
    mean /= n;
    for (double& v : values) v -= mean;
    double sq = 0.0;
    for (size_t i = 0; i < values.size(); ++i) sq += mults[i] * values[i] * values[i];
    if (!(sq > 0.0)) fail(ErrorCode::BadInput, "cannot normalize the zero type");
    const double scale = 1.0 / std::sqrt(sq);
    for (double& v : values) v *= scale;
  }

  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (!(values[i] > values[i + 1])) fail(ErrorCode::NotDecreasing, "values must strictly decrease");

  double sum = 0.0, sq = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    sum += mults[i] * values[i];
    sq += mults[i] * values[i] * values[i];
  }
  if (std::fabs(sum) > 1e-12) fail(ErrorCode::BadInput, "weighted mean must vanish");
  if (std::fabs(sq - 1.0) > 1e-12) fail(ErrorCode::BadInput, "weighted square-sum must be one");

  TypeVector t;
  t.n = n;
  t.values = std::move(values);
  t.mults = std::move(mults);
  return t;
}

TypeVector involute(const TypeVector& t) {
  std::vector<double> v(t.values.rbegin(), t.values.rend());
  for (double& x : v) x = -x;
  std::vector<int> m(t.mults.rbegin(), t.mults.rend());
  return make_type(t.n, std::move(v), std::move(m));
}

CartanVector involute(const CartanVector& v) {
  std::vector<double> c(v.coords.rbegin(), v.coords.rend());
  for (double& x : c) x = -x;
  return CartanVector(v.n, std::move(c));
}

TypeVector corner_type(int n, int j) {
  if (n < 2 || j < 1 || j >= n) fail(ErrorCode::BadInput, "corner index out of range");
  // Two-block type with j lam1 + (n-j) lam2 = 0 and unit weighted square-sum.
  const double lam1 = std::sqrt(static_cast<double>(n - j) / (static_cast<double>(j) * n));
  const double lam2 = -std::sqrt(static_cast<double>(j) / (static_cast<double>(n - j) * n));
  return make_type(n, {lam1, lam2}, {j, n - j});
}

std::vector<TypeVector> corner_types(int n) {
  std::vector<TypeVector> out;
  for (int j = 1; j < n; ++j) out.push_back(corner_type(n, j));
  return out;
}

CartanVector embed(const TypeVector& t) {
  std::vector<double> c;
  c.reserve(t.n);
  for (size_t i = 0; i < t.values.size(); ++i)
    for (int k = 0; k < t.mults[i]; ++k) c.push_back(t.values[i]);
  return CartanVector(t.n, std::move(c));
}

double a_inner(const CartanVector& u, const CartanVector& v) {
  if (u.n != v.n) fail(ErrorCode::DimensionMismatch, "inner product arity");
  double s = 0.0;
  for (int i = 0; i < u.n; ++i) s += u.coords[i] * v.coords[i];
  return s;
}

std::vector<CartanVector> dual_basis(const FaceSignature& face) {
  const std::vector<int> steps = face.proper_steps();
  const int k = static_cast<int>(steps.size());
  if (k == 0) fail(ErrorCode::BadInput, "face has no proper steps");
  std::vector<CartanVector> xi;
  xi.reserve(k);
  for (int s : steps) xi.push_back(embed(corner_type(face.n, s)));

  Matrix gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram(i, j) = a_inner(xi[i], xi[j]);
  if (std::fabs(det(gram)) < 1e-14) fail(ErrorCode::SingularGram, "degenerate corner Gram matrix");
  const Matrix ginv = inverse(gram);

  std::vector<CartanVector> alpha;
  alpha.reserve(k);
  for (int j = 0; j < k; ++j) {
    std::vector<double> c(face.n, 0.0);
    for (int i = 0; i < k; ++i)
      for (int r = 0; r < face.n; ++r) c[r] += ginv(i, j) * xi[i].coords[r];
    alpha.emplace_back(face.n, std::move(c));
  }
  return alpha;
}

CartanVector project_to_face(const CartanVector& v, const FaceSignature& face) {
  if (v.n != face.n) fail(ErrorCode::DimensionMismatch, "projection arity");
  const std::vector<int> steps = face.proper_steps();
  std::vector<CartanVector> xi;
  for (int s : steps) xi.push_back(embed(corner_type(face.n, s)));
  const int k = static_cast<int>(xi.size());

  Matrix gram(k, k);
  std::vector<double> rhs(k);
  for (int i = 0; i < k; ++i) {
    rhs[i] = a_inner(xi[i], v);
    for (int j = 0; j < k; ++j) gram(i, j) = a_inner(xi[i], xi[j]);
  }
  const std::vector<double> coef = solve(gram, rhs);
  std::vector<double> c(face.n, 0.0);
  for (int i = 0; i < k; ++i)
    for (int r = 0; r < face.n; ++r) c[r] += coef[i] * xi[i].coords[r];
  return CartanVector(face.n, std::move(c));
}

TypeVector type_from_embedded(const CartanVector& v, const FaceSignature& face) {
  std::vector<double> values;
  std::vector<int> mults;
  int start = 0;
  for (int d : face.dims) {
    const double val = v.coords[start];
    for (int i = start; i < d; ++i)
      if (std::fabs(v.coords[i] - val) > 1e-9)
        fail(ErrorCode::BadInput, "embedded vector not constant on face blocks");
    values.push_back(val);
    mults.push_back(d - start);
    start = d;
  }
  return make_type(face.n, std::move(values), std::move(mults), true);
}

}  // namespace xr
