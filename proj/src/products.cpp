#include "xr/products.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xr {

ProductType::ProductType(std::vector<std::optional<TypeVector>> types, std::vector<double> mu)
    : factor_types(std::move(types)), weights(std::move(mu)) {
  if (factor_types.size() != weights.size())
    fail(ErrorCode::ArityMismatch, "types and weights must align");
  double sq = 0.0;
  for (double w : weights) {
    if (w < 0.0) fail(ErrorCode::BadInput, "weights must be nonnegative");
    sq += w * w;
  }
  if (std::fabs(sq - 1.0) > 1e-12) fail(ErrorCode::BadInput, "weights must have unit square sum");
}

ProductBasepoint ProductBasepoint::defaults(const ProductSpace& space) {
  ProductBasepoint b;
  b.spd.resize(space.factors.size());
  b.tree_vertex.resize(space.factors.size());
  for (size_t i = 0; i < space.factors.size(); ++i) {
    const auto& f = space.factors[i];
    if (f.kind == ProductSpace::Factor::Kind::spd) b.spd[i] = SpdPoint::identity(f.n);
    if (f.kind == ProductSpace::Factor::Kind::tree) b.tree_vertex[i] = f.tree->vertices().front();
  }
  return b;
}

namespace {

using Kind = ProductSpace::Factor::Kind;

void check_arity(const ProductSpace& space, const ProductBoundaryPoint& p) {
  if (p.parts.size() != space.factors.size())
    fail(ErrorCode::ArityMismatch, "boundary point arity does not match the space");
}

bool factor_opposite(const ProductSpace::Factor& f, const FactorBoundary& a,
                     const FactorBoundary& b) {
  switch (f.kind) {
    case Kind::spd: {
      const auto& x = std::get<SpdBoundary>(a);
      const auto& y = std::get<SpdBoundary>(b);
      return is_opposite(x.flag, y.flag);
    }
    case Kind::h2: {
      const auto& x = std::get<DiscBoundaryPoint>(a);
      const auto& y = std::get<DiscBoundaryPoint>(b);
      return std::fabs(2.0 * std::sin(0.5 * (x.angle - y.angle))) > 1e-9;
    }
    case Kind::tree:
      return std::get<std::string>(a) != std::get<std::string>(b);
    case Kind::flat: {
      const auto& x = std::get<FlatBoundary>(a);
      const auto& y = std::get<FlatBoundary>(b);
      double s = 0.0;
      for (size_t i = 0; i < x.dir.size(); ++i) {
        const double d = x.dir[i] + y.dir[i];
        s += d * d;
      }
      return std::sqrt(s) <= 1e-9;  // opposite iff antipodal
    }
  }
  return false;
}

double factor_gromov(const ProductSpace::Factor& f, const FactorBoundary& a,
                     const FactorBoundary& b, const std::optional<TypeVector>& type,
                     const std::optional<SpdPoint>& ospd,
                     const std::optional<std::string>& otree) {
  switch (f.kind) {
    case Kind::spd: {
      const auto& x = std::get<SpdBoundary>(a);
      const auto& y = std::get<SpdBoundary>(b);
      if (!type.has_value()) fail(ErrorCode::BadInput, "spd factor needs a type");
      const SpdPoint o = ospd.value_or(SpdPoint::identity(f.n));
      const CrValue v = gromov_closed(x.flag, y.flag, *type, o);
      if (!v.finite()) fail(ErrorCode::Internal, "factor product degenerated");
      return v.scalar;
    }
    case Kind::h2:
      return h2_gromov(std::get<DiscBoundaryPoint>(a), std::get<DiscBoundaryPoint>(b));
    case Kind::tree: {
      const std::string o = otree.value_or(f.tree->vertices().front());
      return tree_gromov(*f.tree, std::get<std::string>(a), std::get<std::string>(b), o);
    }
    case Kind::flat:
      return 0.0;  // antipodal directions travel together for no time
  }
  return 0.0;
}

double factor_cr(const ProductSpace::Factor& f, const FactorBoundary& x, const FactorBoundary& y,
                 const FactorBoundary& z, const FactorBoundary& w,
                 const std::optional<TypeVector>& type, const std::optional<SpdPoint>& ospd) {
  switch (f.kind) {
    case Kind::spd: {
      if (!type.has_value()) fail(ErrorCode::BadInput, "spd factor needs a type");
      Quadruple q(std::get<SpdBoundary>(x).flag, std::get<SpdBoundary>(y).flag,
                  std::get<SpdBoundary>(z).flag, std::get<SpdBoundary>(w).flag);
      std::optional<SpdPoint> o = ospd;
      const CrValue v = cr_scalar(q, *type, o);
      if (!v.finite()) fail(ErrorCode::Internal, "factor cross ratio degenerated");
      return v.scalar;
    }
    case Kind::h2:
      return h2_cr(std::get<DiscBoundaryPoint>(x), std::get<DiscBoundaryPoint>(y),
                   std::get<DiscBoundaryPoint>(z), std::get<DiscBoundaryPoint>(w));
    case Kind::tree: {
      const CrValue v = tree_cr(*f.tree, std::get<std::string>(x), std::get<std::string>(y),
                                std::get<std::string>(z), std::get<std::string>(w));
      if (!v.finite()) fail(ErrorCode::Internal, "tree factor cross ratio degenerated");
      return v.scalar;
    }
    case Kind::flat:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

CrValue product_gromov(const ProductSpace& space, const ProductBoundaryPoint& x,
                       const ProductBoundaryPoint& y, const ProductType& pt,
                       const ProductBasepoint& base) {
  check_arity(space, x);
  check_arity(space, y);
  if (pt.weights.size() != space.factors.size())
    fail(ErrorCode::ArityMismatch, "type arity does not match the space");
  double acc = 0.0;
  for (size_t i = 0; i < space.factors.size(); ++i) {
    if (!pt.active(i)) continue;
    if (!factor_opposite(space.factors[i], x.parts[i], y.parts[i])) return CrValue::plus_inf();
    acc += pt.weights[i] * factor_gromov(space.factors[i], x.parts[i], y.parts[i],
                                         pt.factor_types[i], base.spd[i], base.tree_vertex[i]);
  }
  return CrValue::finite_scalar(acc);
}

CrValue product_cr(const ProductSpace& space, const ProductQuadruple& q, const ProductType& pt,
                   const ProductBasepoint& base) {
  for (const auto* p : {&q.x, &q.y, &q.z, &q.w}) check_arity(space, *p);
  if (pt.weights.size() != space.factors.size())
    fail(ErrorCode::ArityMismatch, "type arity does not match the space");

  // Product-level opposition: opposite in every active factor.
  auto opp = [&](const ProductBoundaryPoint& a, const ProductBoundaryPoint& b) {
    for (size_t i = 0; i < space.factors.size(); ++i) {
      if (!pt.active(i)) continue;
      if (!factor_opposite(space.factors[i], a.parts[i], b.parts[i])) return false;
    }
    return true;
  };
  const bool diag = opp(q.x, q.y) && opp(q.z, q.w);
  const bool cross = opp(q.x, q.w) && opp(q.z, q.y);
  if (!diag && !cross) fail(ErrorCode::Inadmissible, "no opposite pattern in the product");
  if (!diag) return CrValue::minus_inf();
  if (!cross) return CrValue::plus_inf();

  double acc = 0.0;
  for (size_t i = 0; i < space.factors.size(); ++i) {
    if (!pt.active(i)) continue;
    acc += pt.weights[i] * factor_cr(space.factors[i], q.x.parts[i], q.y.parts[i], q.z.parts[i],
                                     q.w.parts[i], pt.factor_types[i], base.spd[i]);
  }
  return CrValue::finite_scalar(acc);
}

CrValue product_cr(const ProductSpace& space, const ProductQuadruple& q, const ProductType& pt) {
  return product_cr(space, q, pt, ProductBasepoint::defaults(space));
}

BlockEmbedding block_embedding(int n1, int n2, const TypeVector& t1, const TypeVector& t2,
                               const std::vector<double>& mu) {
  if (mu.size() != 2) fail(ErrorCode::ArityMismatch, "block embedding is binary");
  if (t1.n != n1 || t2.n != n2) fail(ErrorCode::TypeMismatch, "factor type arity");
  const double kappa = std::sqrt(mu[0] * mu[0] / (n1 * n1) + mu[1] * mu[1] / (n2 * n2));
  if (!(kappa > 0.0)) fail(ErrorCode::BadInput, "degenerate weights");
  BlockEmbedding out;
  out.block_norms = {mu[0] / (n1 * kappa), mu[1] / (n2 * kappa)};
  const int n = n1 + n2;
  out.cr_coefficients = {out.block_norms[0] * n / n1, out.block_norms[1] * n / n2};

  // Merge the scaled value blocks, tracking multiplicities.
  struct Item {
    double value;
    int mult;
  };
  std::vector<Item> items;
  for (size_t i = 0; i < t1.values.size(); ++i)
    items.push_back({out.block_norms[0] * t1.values[i], t1.mults[i]});
  for (size_t i = 0; i < t2.values.size(); ++i)
    items.push_back({out.block_norms[1] * t2.values[i], t2.mults[i]});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.value > b.value; });
  std::vector<double> values;
  std::vector<int> mults;
  for (const Item& it : items) {
    if (!values.empty() && std::fabs(values.back() - it.value) < 1e-12)
      fail(ErrorCode::Degenerate, "scaled block values collide; perturb the weights");
    values.push_back(it.value);
    mults.push_back(it.mult);
  }
  out.type = make_type(n, std::move(values), std::move(mults), true);
  return out;
}

Flag embed_block_flag(int n1, int n2, const Flag& f1, const Flag& f2, const TypeVector& t1,
                      const TypeVector& t2, const std::vector<double>& mu) {
  const BlockEmbedding emb = block_embedding(n1, n2, t1, t2, mu);
  const int n = n1 + n2;

  // Column order follows the sorted merged values: per item, pull the next
  // multiplicity-many columns of the owning block.
  struct Item {
    double value;
    int block;
    int mult;
  };
  std::vector<Item> items;
  for (size_t i = 0; i < t1.values.size(); ++i)
    items.push_back({emb.block_norms[0] * t1.values[i], 0, t1.mults[i]});
  for (size_t i = 0; i < t2.values.size(); ++i)
    items.push_back({emb.block_norms[1] * t2.values[i], 1, t2.mults[i]});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.value > b.value; });

  Matrix basis(n, n);
  int col = 0;
  int cursor[2] = {0, 0};
  for (const Item& it : items) {
    for (int c = 0; c < it.mult; ++c) {
      if (it.block == 0) {
        for (int r = 0; r < n1; ++r) basis(r, col) = f1.basis()(r, cursor[0]);
      } else {
        for (int r = 0; r < n2; ++r) basis(n1 + r, col) = f2.basis()(r, cursor[1]);
      }
      ++cursor[it.block];
      ++col;
    }
  }
  return Flag(n, emb.type.face(), basis);
}

std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

SplitRecovery factor_split_recover(const SplitSamples& samples,
                                   const std::vector<std::vector<int>>& candidates,
                                   double tol) {
  const size_t nf = samples.domain_weights.size();
  const size_t ns = samples.domain_raw.size();
  const size_t nk = samples.image_weight_sets.size();
  if (ns < 2) fail(ErrorCode::BadInput, "need at least two samples per factor");
  if (nk < 1) fail(ErrorCode::BadInput, "need at least one image product type");
  for (const auto& row : samples.domain_raw)
    if (row.size() != nf) fail(ErrorCode::ArityMismatch, "domain sample arity");
  if (samples.observed.size() != nk) fail(ErrorCode::ArityMismatch, "observation sets");
  for (const auto& set : samples.observed) {
    if (set.size() != ns) fail(ErrorCode::ArityMismatch, "observation samples");
    for (const auto& row : set)
      if (row.size() != nf + 1) fail(ErrorCode::ArityMismatch, "observation probes");
  }

  // Image contribution of domain factor i, per product type k and sample s:
  // half the gap between the base aggregate and the factor-flipped one.
  auto contribution = [&](size_t k, size_t s, size_t i) {
    return 0.5 * (samples.observed[k][s][0] - samples.observed[k][s][1 + i]);
  };

  std::vector<SplitRecovery> fits;
  for (const auto& perm : candidates) {
    if (perm.size() != nf) continue;
    bool ok = true;
    std::vector<double> ratios(nf, 0.0);
    for (size_t i = 0; i < nf && ok; ++i) {
      const int slot = perm[i];
      // Recover the raw image values from product type 0 and demand the
      // remaining product types replay them with their own slot weight.
      std::vector<double> raw(ns);
      for (size_t s = 0; s < ns; ++s) {
        const double w0 = samples.image_weight_sets[0][slot];
        if (std::fabs(w0) < 1e-12) { ok = false; break; }
        raw[s] = contribution(0, s, i) / w0;
        for (size_t k = 1; k < nk; ++k) {
          const double expect = samples.image_weight_sets[k][slot] * raw[s];
          if (std::fabs(contribution(k, s, i) - expect) >
              tol * std::max(1.0, std::fabs(expect))) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) break;
      // Proportionality against the domain values: raw = rho * domain.
      double num = 0.0, den = 0.0;
      for (size_t s = 0; s < ns; ++s) {
        num += raw[s] * samples.domain_raw[s][i];
        den += samples.domain_raw[s][i] * samples.domain_raw[s][i];
      }
      if (!(den > 0.0)) { ok = false; break; }
      const double rho = num / den;
      if (!(rho > 0.0)) { ok = false; break; }
      for (size_t s = 0; s < ns; ++s) {
        if (std::fabs(raw[s] - rho * samples.domain_raw[s][i]) >
            tol * std::max(1.0, std::fabs(raw[s]))) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      ratios[i] = 1.0 / rho;  // mu2^{s(i)} / mu1^i
    }
    if (ok) {
      SplitRecovery r;
      r.permutation = perm;
      r.ratios = ratios;
      fits.push_back(std::move(r));
    }
  }
  if (fits.empty()) fail(ErrorCode::Inconsistent, "no candidate permutation fits the samples");
  if (fits.size() > 1) fail(ErrorCode::Ambiguous, "several permutations fit; add product types");
  return fits.front();
}

}  // namespace xr
