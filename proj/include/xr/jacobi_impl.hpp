// Cyclic Jacobi eigenvalue iteration on a row-major symmetric buffer,
// templated on the scalar type so the oracle can run it in big floats.
#pragma once

#include <cstddef>
#include <vector>

namespace xr::detail {

// Diagonalizes the symmetric n x n matrix stored row-major in `a`.
// Rotates until the off-diagonal Frobenius mass drops below tol * ||a||_F.
// If `vecs` is non-null it accumulates the rotations (starts from identity).
// Returns the number of sweeps used.
template <class T>
int jacobi_diagonalize(std::vector<T>& a, int n, const T& tol,
                       std::vector<T>* vecs, int max_sweeps = 60) {
  auto at = [&](int i, int j) -> T& { return a[static_cast<size_t>(i) * n + j]; };
  if (vecs) {
    vecs->assign(static_cast<size_t>(n) * n, T(0));
    for (int i = 0; i < n; ++i) (*vecs)[static_cast<size_t>(i) * n + i] = T(1);
  }
  T norm(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm += at(i, j) * at(i, j);
  using std::sqrt;
  norm = sqrt(norm);
  if (norm == T(0)) return 0;
  const T stop = tol * norm;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    T off(0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    off = sqrt(T(2) * off);
    if (off <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (at(p, q) == T(0)) continue;
        const T theta = (at(q, q) - at(p, p)) / (T(2) * at(p, q));
        using std::fabs;
        T t;
        if (theta >= T(0)) {
          t = T(1) / (theta + sqrt(T(1) + theta * theta));
        } else {
          t = T(-1) / (-theta + sqrt(T(1) + theta * theta));
        }
        const T c = T(1) / sqrt(T(1) + t * t);
        const T s = t * c;
        const T tau = s / (T(1) + c);

        const T apq = at(p, q);
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = T(0);
        at(q, p) = T(0);
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const T akp = at(k, p);
          const T akq = at(k, q);
          at(k, p) = akp - s * (akq + tau * akp);
          at(p, k) = at(k, p);
          at(k, q) = akq + s * (akp - tau * akq);
          at(q, k) = at(k, q);
        }
        if (vecs) {
          for (int k = 0; k < n; ++k) {
            T& vkp = (*vecs)[static_cast<size_t>(k) * n + p];
            T& vkq = (*vecs)[static_cast<size_t>(k) * n + q];
            const T tp = vkp;
            const T tq = vkq;
            vkp = tp - s * (tq + tau * tp);
            vkq = tq + s * (tp - tau * tq);
          }
        }
      }
    }
  }
  return sweep;
}

}  // namespace xr::detail
