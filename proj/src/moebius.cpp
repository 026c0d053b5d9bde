#include "xr/moebius.hpp"

#include <algorithm>
#include <cmath>

#include "xr/rng.hpp"

namespace xr {

namespace {

void check_sample(const SampledMap& f) {
  if (f.domain.size() != f.image.size())
    fail(ErrorCode::ArityMismatch, "domain and image samples must align");
  if (f.domain.size() < 4) fail(ErrorCode::BadInput, "need at least four sample flags");
  for (const Flag& fl : f.domain)
    if (!fl.is_full()) fail(ErrorCode::BadInput, "audits run on full flags");
  for (const Flag& fl : f.image)
    if (!fl.is_full()) fail(ErrorCode::BadInput, "audits run on full flags");
}

}  // namespace

MoebiusReport check_moebius(const SampledMap& f, const TypeVector& xi, int budget,
                            std::uint64_t seed, double threshold) {
  check_sample(f);
  const int m = static_cast<int>(f.domain.size());
  MoebiusReport rep;
  rep.threshold = threshold;
  rep.seed = seed;
  rep.exhaustive = (m <= 8);

  auto eval = [&](int i, int j, int k, int l) {
    const Quadruple qd(f.domain[i], f.domain[j], f.domain[k], f.domain[l]);
    const Quadruple qi(f.image[i], f.image[j], f.image[k], f.image[l]);
    const Admissibility ad = classify(qd);
    const Admissibility ai = classify(qi);
    if (ad != ai) {
      ++rep.mismatches;
      return;
    }
    if (ad != Admissibility::all_opposite) return;
    const CrValue cd = cr_scalar(qd, xi);
    const CrValue ci = cr_scalar(qi, xi);
    ++rep.quadruples;
    rep.max_deviation =
        std::max(rep.max_deviation, std::fabs(cd.scalar - f.codomain_scale * ci.scalar));
  };

  if (rep.exhaustive) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
            eval(i, j, k, l);
          }
  } else {
    Rng rng(seed);
    for (int b = 0; b < budget; ++b) {
      int idx[4];
      do {
        for (int& v : idx) v = static_cast<int>(rng.below(m));
      } while (idx[0] == idx[1] || idx[0] == idx[2] || idx[0] == idx[3] || idx[1] == idx[2] ||
               idx[1] == idx[3] || idx[2] == idx[3]);
      eval(idx[0], idx[1], idx[2], idx[3]);
    }
  }
  rep.moebius = (rep.mismatches == 0) && (rep.max_deviation <= threshold);
  return rep;
}

OppositionReport check_opposition_preserving(const SampledMap& f) {
  check_sample(f);
  OppositionReport rep;
  const int m = static_cast<int>(f.domain.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (is_opposite(f.domain[i], f.domain[j]) != is_opposite(f.image[i], f.image[j]))
        rep.violations.emplace_back(i, j);
    }
  return rep;
}

InjectivityWitness injectivity_witness(const SampledMap& f, int x_index, int y_index) {
  check_sample(f);
  const int m = static_cast<int>(f.domain.size());
  if (x_index < 0 || y_index < 0 || x_index >= m || y_index >= m || x_index == y_index)
    fail(ErrorCode::BadInput, "witness needs two distinct sample indices");
  const Flag& x = f.domain[x_index];
  const Flag& y = f.domain[y_index];
  if (same_flag(x, y)) fail(ErrorCode::BadInput, "x and y must be distinct flags");
  if (!same_flag(f.image[x_index], f.image[y_index]))
    fail(ErrorCode::BadInput, "witness requires f(x) = f(y)");

  // a: the opposite of x inside a common apartment of x and y. Uniqueness of
  // opposites in an apartment forces a not-opposite y.
  const CommonApartment apt = common_apartment(x, y);
  const int n = x.n();
  Matrix rev(n, n);
  for (int j = 0; j < n; ++j) rev.set_column(j, apt.basis.column(n - 1 - j));
  const Flag a(n, FaceSignature::full(n), rev);
  if (!is_opposite(a, x) || is_opposite(a, y))
    fail(ErrorCode::CannotSeparate, "apartment-opposite separation failed numerically");

  // z opposite a; w opposite z and x. Search the sample.
  const Flag* zp = nullptr;
  const Flag* wp = nullptr;
  for (int i = 0; i < m && !wp; ++i) {
    if (!is_opposite(f.domain[i], a)) continue;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      if (is_opposite(f.domain[j], f.domain[i]) && is_opposite(f.domain[j], x)) {
        zp = &f.domain[i];
        wp = &f.domain[j];
        break;
      }
    }
  }
  if (!zp || !wp)
    fail(ErrorCode::CannotSeparate, "sample too small to realize z, w; extend the sample");

  InjectivityWitness wit;
  wit.a = a;
  wit.z = *zp;
  wit.w = *wp;

  // A regular type, so finiteness needs opposition at every step.
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = static_cast<double>(n - 1 - 2 * i);
  const TypeVector xi = make_type(n, vals, std::vector<int>(n, 1), true);
  const Quadruple qx(x, a, wit.z, wit.w);
  wit.cr_x = cr_scalar(qx, xi);
  try {
    const Quadruple qy(y, a, wit.z, wit.w);
    wit.cr_y = cr_scalar(qy, xi);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Inadmissible) throw;
    wit.y_inadmissible = true;
    wit.cr_y = CrValue::minus_inf();
  }
  if (wit.cr_x.kind != CrValue::Kind::finite)
    fail(ErrorCode::CannotSeparate, "witness quadruple failed to stay finite at x");
  if (!wit.y_inadmissible && wit.cr_y.kind != CrValue::Kind::minus_inf)
    fail(ErrorCode::CannotSeparate, "witness quadruple failed to degenerate at y");
  return wit;
}

}  // namespace xr
