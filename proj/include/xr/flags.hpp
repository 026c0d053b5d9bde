// Partial flags in R^n: construction, group action, opposition tests,
// standard/opposite pairs, basepoint-orthogonal complements and unipotent
// transporters. Flags always carry a full n x n representative whose leading
// column spans realize the signature steps; the representative is kept
// orthonormal (standard inner product) with determinant +1.
#pragma once

#include "xr/cartan.hpp"
#include "xr/matnum.hpp"

namespace xr {

class Flag {
 public:
  Flag() = default;
  // Canonicalizes: orthonormalizes the basis, fixes det = +1.
  Flag(int n, FaceSignature signature, const Matrix& basis);

  int n() const { return n_; }
  const FaceSignature& signature() const { return signature_; }
  const Matrix& basis() const { return basis_; }
  bool is_full() const { return static_cast<int>(signature_.dims.size()) == n_; }

  // Drop steps not present in the coarser face (which must be a subset).
  Flag truncate(const FaceSignature& coarser) const;

 private:
  int n_ = 0;
  FaceSignature signature_;
  Matrix basis_;
};

Flag make_flag(int n, const FaceSignature& signature, const Matrix& basis);

// Standard flag of the signature and its standard opposite (trailing
// coordinate spans, signature involuted).
std::pair<Flag, Flag> standard_pair(int n, const FaceSignature& signature);

// Smallest block transversality determinant over the signature steps;
// opposition holds when this stays above 1e-9. Values in (1e-9, 1e-7] are
// reported as degenerate by callers that care.
double opposition_margin(const Flag& x, const Flag& y);

// Transversality at every step. Signatures must be iota-compatible, else
// SignatureMismatch.
bool is_opposite(const Flag& x, const Flag& y);

// Action of a determinant-one matrix; throws NotUnimodular.
Flag act(const Matrix& g, const Flag& x);

// The flag of successive o-orthogonal complements of x, where <u,v>_o =
// u^t o^-1 v and o is SPD. Opposite to x with involuted signature; for o = I
// this is the standard-inner-product complement flag.
Flag ortho_opposite(const Flag& x, const Matrix& o_mat);

// Unique element of the horospherical group of the full flag x mapping the
// x-opposite flag z to the x-opposite flag y. Unipotent in x's basis; fixes
// every subspace of x. Throws NotOpposite.
Matrix unipotent_transporter(const Flag& x, const Flag& z, const Flag& y);

// Same subspace chain within tolerance.
bool same_flag(const Flag& a, const Flag& b, double tol = 1e-8);

// Lines L_i = V_i(x) /\ W_{n-i+1}(y) of an opposite full-flag pair, returned
// as the columns of a determinant +-1 matrix ordered by x's filtration. The
// flat joining x and y is { D exp(diag u) D^t : sum u = 0 }.
Matrix joint_lines(const Flag& x, const Flag& y);

// Common apartment of two full flags in general position: a basis B and a
// permutation p such that x is spanned by (b_1..b_i) and y's step j is
// spanned by { b_{p(1)}, ..., b_{p(j)} }. Throws CannotSeparate when the
// numerical rank decisions are too marginal.
struct CommonApartment {
  Matrix basis;
  std::vector<int> order;  // order[j] = index (into basis columns) of y's j-th new line
};
CommonApartment common_apartment(const Flag& x, const Flag& y);

}  // namespace xr
