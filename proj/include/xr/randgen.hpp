// Random model elements for calibration, audits and tests. All draws go
// through xr::Rng so fixed seeds give identical streams everywhere.
#pragma once

#include "xr/flags.hpp"
#include "xr/rng.hpp"
#include "xr/spdspace.hpp"

namespace xr {

inline Matrix random_gaussian(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

inline Matrix random_rotation(Rng& rng, int n) {
  for (;;) {
    Matrix g = random_gaussian(rng, n, n);
    try {
      Matrix q = gram_schmidt(g);
      if (det(q) < 0) {
        std::vector<double> last = q.column(n - 1);
        for (double& v : last) v = -v;
        q.set_column(n - 1, last);
      }
      return q;
    } catch (const Error&) {
      continue;
    }
  }
}

// Unimodular with condition number below cond_cap.
inline Matrix random_unimodular(Rng& rng, int n, double cond_cap = 1e3) {
  for (;;) {
    Matrix g = random_gaussian(rng, n, n);
    const double d = det(g);
    if (std::fabs(d) < 1e-6) continue;
    double scale = std::pow(std::fabs(d), -1.0 / n);
    g *= scale;
    if (det(g) < 0) {
      std::vector<double> last = g.column(n - 1);
      for (double& v : last) v = -v;
      g.set_column(n - 1, last);
    }
    const SymEig e = sym_eig(g.transpose() * g);
    if (e.eigenvalues.back() <= 0.0) continue;
    if (std::sqrt(e.eigenvalues.front() / e.eigenvalues.back()) > cond_cap) continue;
    return g;
  }
}

inline SpdPoint random_spd_point(Rng& rng, int n, double cond_cap = 1e3) {
  const Matrix g = random_unimodular(rng, n, std::sqrt(cond_cap));
  Matrix m = g * g.transpose();
  Matrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return SpdPoint(s);
}

inline Flag random_full_flag(Rng& rng, int n) {
  return Flag(n, FaceSignature::full(n), random_rotation(rng, n));
}

// Strictly decreasing unit type with value gaps at least min_gap.
inline TypeVector random_regular_type(Rng& rng, int n, double min_gap = 0.05) {
  for (;;) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    std::sort(v.rbegin(), v.rend());
    TypeVector t;
    try {
      t = make_type(n, v, std::vector<int>(n, 1), true);
    } catch (const Error&) {
      continue;
    }
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i)
      if (t.values[i] - t.values[i + 1] < min_gap) ok = false;
    if (ok) return t;
  }
}

// Interior type of a face: positive combination of its corner types.
inline TypeVector random_interior_type(Rng& rng, const FaceSignature& face) {
  for (;;) {
    std::vector<double> c(face.n, 0.0);
    for (int s : face.proper_steps()) {
      const double w = 0.2 + rng.u01();
      const CartanVector xi = embed(corner_type(face.n, s));
      for (int i = 0; i < face.n; ++i) c[i] += w * xi.coords[i];
    }
    try {
      return type_from_embedded(CartanVector(face.n, c), face);
    } catch (const Error&) {
      continue;
    }
  }
}

// Pairwise-opposite pair (x of the signature, y of the involuted signature)
// with opposition margin at least min_margin.
inline std::pair<Flag, Flag> random_opposite_pair(Rng& rng, int n, const FaceSignature& sig,
                                                  double min_margin = 0.02) {
  for (;;) {
    Flag x(n, sig, random_rotation(rng, n));
    Flag y(n, sig.involute(), random_rotation(rng, n));
    if (opposition_margin(x, y) >= min_margin) return {x, y};
  }
}

}  // namespace xr
