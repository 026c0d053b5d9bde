#include "doctest.h"

#include <cmath>

#include "xr/products.hpp"
#include "xr/randgen.hpp"

using namespace xr;

namespace {
constexpr double kPi = 3.14159265358979323846;

ProductSpace h2xh2() {
  ProductSpace s;
  s.factors.resize(2);
  s.factors[0].kind = ProductSpace::Factor::Kind::h2;
  s.factors[1].kind = ProductSpace::Factor::Kind::h2;
  return s;
}

ProductBoundaryPoint disc_pair(double a1, double a2) {
  ProductBoundaryPoint p;
  p.parts.emplace_back(DiscBoundaryPoint(a1));
  p.parts.emplace_back(DiscBoundaryPoint(a2));
  return p;
}

Quadruple random_opposite_quadruple(Rng& rng, int n) {
  for (;;) {
    Flag x = random_full_flag(rng, n), y = random_full_flag(rng, n);
    Flag z = random_full_flag(rng, n), w = random_full_flag(rng, n);
    Quadruple q(x, y, z, w);
    if (classify(q) == Admissibility::all_opposite && opposition_margin(x, y) > 0.05 &&
        opposition_margin(z, w) > 0.05 && opposition_margin(x, w) > 0.05 &&
        opposition_margin(z, y) > 0.05)
      return q;
  }
}
}  // namespace

TEST_CASE("product gromov products") {
  const ProductSpace space = h2xh2();
  const ProductBasepoint base = ProductBasepoint::defaults(space);

  // weight (1, 0): factor one only
  ProductType only1({std::nullopt, std::nullopt}, {1.0, 0.0});
  const CrValue v =
      product_gromov(space, disc_pair(0.0, 1.0), disc_pair(kPi / 2, 1.0), only1, base);
  CHECK(v.scalar == doctest::Approx(h2_gromov(DiscBoundaryPoint(0), DiscBoundaryPoint(kPi / 2))));

  // balanced weights: the pi/4 join
  ProductType bal({std::nullopt, std::nullopt}, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
  const CrValue vb =
      product_gromov(space, disc_pair(0.0, 1.0), disc_pair(kPi / 2, 2.5), bal, base);
  const double want = (h2_gromov(DiscBoundaryPoint(0), DiscBoundaryPoint(kPi / 2)) +
                       h2_gromov(DiscBoundaryPoint(1.0), DiscBoundaryPoint(2.5))) /
                      std::sqrt(2.0);
  CHECK(vb.scalar == doctest::Approx(want).epsilon(1e-12));

  // coincident points in an active factor: plus infinity
  const CrValue inf =
      product_gromov(space, disc_pair(0.0, 1.0), disc_pair(0.0, 2.5), bal, base);
  CHECK(inf.kind == CrValue::Kind::plus_inf);

  CHECK_THROWS_AS(product_gromov(space, disc_pair(0.0, 1.0), ProductBoundaryPoint{}, bal, base),
                  Error);
}

TEST_CASE("product cross ratio on h2 x h2") {
  const ProductSpace space = h2xh2();
  Rng rng(3);
  for (double alpha : {kPi / 6, kPi / 4, kPi / 3}) {
    ProductType pt({std::nullopt, std::nullopt}, {std::cos(alpha), std::sin(alpha)});
    double ang[8];
    for (double& a : ang) a = rng.uniform(0, 2 * kPi);
    bool ok = true;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j)
        if (std::fabs(std::sin(0.5 * (ang[i] - ang[j]))) < 0.05) ok = false;
    if (!ok) continue;
    ProductQuadruple q{disc_pair(ang[0], ang[4]), disc_pair(ang[1], ang[5]),
                       disc_pair(ang[2], ang[6]), disc_pair(ang[3], ang[7])};
    const double want =
        std::cos(alpha) * std::log(h2_cr_mult(DiscBoundaryPoint(ang[0]), DiscBoundaryPoint(ang[1]),
                                              DiscBoundaryPoint(ang[2]), DiscBoundaryPoint(ang[3]))) +
        std::sin(alpha) * std::log(h2_cr_mult(DiscBoundaryPoint(ang[4]), DiscBoundaryPoint(ang[5]),
                                              DiscBoundaryPoint(ang[6]), DiscBoundaryPoint(ang[7])));
    CHECK(product_cr(space, q, pt).scalar == doctest::Approx(want).epsilon(1e-10));

    // degenerate weight: reduces to the second factor
    ProductType second({std::nullopt, std::nullopt}, {0.0, 1.0});
    const double only2 = std::log(h2_cr_mult(DiscBoundaryPoint(ang[4]), DiscBoundaryPoint(ang[5]),
                                             DiscBoundaryPoint(ang[6]), DiscBoundaryPoint(ang[7])));
    CHECK(product_cr(space, q, second).scalar == doctest::Approx(only2).epsilon(1e-12));
  }
}

TEST_CASE("product cross ratio inherits the symmetries") {
  // mixed h2 x tree product
  auto tree = std::make_shared<EndedTree>(
      std::vector<std::string>{"r", "s"}, std::vector<EndedTree::Edge>{{"r", "s", 1.5}},
      std::vector<std::pair<std::string, std::string>>{
          {"ta", "r"}, {"tb", "r"}, {"tc", "s"}, {"td", "s"}});
  ProductSpace space;
  space.factors.resize(2);
  space.factors[0].kind = ProductSpace::Factor::Kind::h2;
  space.factors[1].kind = ProductSpace::Factor::Kind::tree;
  space.factors[1].tree = tree;
  ProductType pt({std::nullopt, std::nullopt}, {0.6, 0.8});

  auto P = [&](double a, const char* e) {
    ProductBoundaryPoint p;
    p.parts.emplace_back(DiscBoundaryPoint(a));
    p.parts.emplace_back(std::string(e));
    return p;
  };
  const ProductBoundaryPoint x = P(0.3, "ta"), y = P(1.7, "tc"), z = P(3.0, "tb"),
                             w = P(5.1, "td");
  const double base = product_cr(space, {x, y, z, w}, pt).scalar;
  CHECK(base == doctest::Approx(-product_cr(space, {x, w, z, y}, pt).scalar).epsilon(1e-12));
  CHECK(base == doctest::Approx(-product_cr(space, {z, y, x, w}, pt).scalar).epsilon(1e-12));
  CHECK(base == doctest::Approx(product_cr(space, {z, w, x, y}, pt).scalar).epsilon(1e-12));
}

TEST_CASE("homogeneity under factor rescaling") {
  auto tree = std::make_shared<EndedTree>(
      std::vector<std::string>{"r", "s"}, std::vector<EndedTree::Edge>{{"r", "s", 1.25}},
      std::vector<std::pair<std::string, std::string>>{
          {"ta", "r"}, {"tb", "r"}, {"tc", "s"}, {"td", "s"}});
  const CrValue before = tree_cr(*tree, "ta", "tc", "tb", "td");
  const EndedTree scaled = tree->rescaled(3.0);
  const CrValue after = tree_cr(scaled, "ta", "tc", "tb", "td");
  CHECK(after.scalar == doctest::Approx(3.0 * before.scalar).epsilon(1e-12));
}

TEST_CASE("block diagonal embedding consistency") {
  Rng rng(5);
  const int n1 = 2, n2 = 2;
  const SpdPoint id4 = SpdPoint::identity(4);
  for (int k = 0; k < 4; ++k) {
    const TypeVector t1 = random_regular_type(rng, n1, 0.2);
    const TypeVector t2 = random_regular_type(rng, n2, 0.2);
    const std::vector<double> mu = {std::cos(0.7), std::sin(0.7)};
    const Quadruple q1 = random_opposite_quadruple(rng, n1);
    const Quadruple q2 = random_opposite_quadruple(rng, n2);
    const BlockEmbedding emb = block_embedding(n1, n2, t1, t2, mu);
    const Flag X = embed_block_flag(n1, n2, q1.x, q2.x, t1, t2, mu);
    const Flag Y = embed_block_flag(n1, n2, q1.y, q2.y, involute(t1), involute(t2), mu);
    const Flag Z = embed_block_flag(n1, n2, q1.z, q2.z, t1, t2, mu);
    const Flag W = embed_block_flag(n1, n2, q1.w, q2.w, involute(t1), involute(t2), mu);
    const double ambient = cr_scalar(Quadruple(X, Y, Z, W), emb.type, id4).scalar;
    const double split = emb.cr_coefficients[0] * cr_scalar(q1, t1).scalar +
                         emb.cr_coefficients[1] * cr_scalar(q2, t2).scalar;
    CHECK(ambient == doctest::Approx(split).epsilon(1e-8));
  }
}

TEST_CASE("flat x tree wall weight") {
  auto tree = std::make_shared<EndedTree>(
      std::vector<std::string>{"r", "s"}, std::vector<EndedTree::Edge>{{"r", "s", 2.5}},
      std::vector<std::pair<std::string, std::string>>{
          {"ta", "r"}, {"tb", "r"}, {"tc", "s"}, {"td", "s"}});
  ProductSpace space;
  space.factors.resize(2);
  space.factors[0].kind = ProductSpace::Factor::Kind::flat;
  space.factors[0].n = 1;
  space.factors[1].kind = ProductSpace::Factor::Kind::tree;
  space.factors[1].tree = tree;
  const double alpha = 0.8;
  ProductType pt({std::nullopt, std::nullopt}, {std::cos(alpha), std::sin(alpha)});
  ProductBasepoint base = ProductBasepoint::defaults(space);
  base.tree_vertex[1] = std::string("r");
  auto P = [&](double d, const char* e) {
    ProductBoundaryPoint p;
    p.parts.emplace_back(FlatBoundary{{d}});
    p.parts.emplace_back(std::string(e));
    return p;
  };
  const CrValue v = product_gromov(space, P(1.0, "ta"), P(-1.0, "tc"), pt, base);
  CHECK(v.scalar ==
        doctest::Approx(std::sin(alpha) * tree_gromov(*tree, "ta", "tc", "r")).epsilon(1e-12));

  // aligned (non-antipodal) flat directions never meet at infinity
  const CrValue inf = product_gromov(space, P(1.0, "ta"), P(1.0, "tc"), pt, base);
  CHECK(inf.kind == CrValue::Kind::plus_inf);
}

TEST_CASE("factor split recovery") {
  Rng rng(7);
  const double mu1 = 0.6, mu2 = 0.8;
  const TypeVector t0 = corner_type(2, 1);
  SplitSamples samples;
  samples.domain_weights = {mu1, mu2};
  samples.image_weight_sets = {{mu1, mu2}, {0.28, 0.96}};
  std::vector<double> c1s, c2s;
  for (int s = 0; s < 3; ++s) {
    const double c1 = cr_scalar(random_opposite_quadruple(rng, 2), t0).scalar;
    const double c2 = cr_scalar(random_opposite_quadruple(rng, 2), t0).scalar;
    c1s.push_back(c1);
    c2s.push_back(c2);
    samples.domain_raw.push_back({c1 / mu1, c2 / mu2});
  }
  samples.observed.resize(2);
  for (int k = 0; k < 2; ++k) {
    const auto& w = samples.image_weight_sets[k];
    for (int s = 0; s < 3; ++s) {
      const double slot1 = c2s[s] / mu1;  // swap map: image slot 1 carries factor 2
      const double slot2 = c1s[s] / mu2;
      samples.observed[k].push_back({w[0] * slot1 + w[1] * slot2,
                                     w[0] * slot1 - w[1] * slot2,
                                     -w[0] * slot1 + w[1] * slot2});
    }
  }
  const SplitRecovery rec = factor_split_recover(samples, all_permutations(2));
  CHECK(rec.permutation == std::vector<int>({1, 0}));
  CHECK(rec.ratios[0] == doctest::Approx(mu2 / mu1).epsilon(1e-10));
  CHECK(rec.ratios[1] == doctest::Approx(mu1 / mu2).epsilon(1e-10));

  // identity map: identity permutation, unit ratios
  SplitSamples ident = samples;
  for (int k = 0; k < 2; ++k) {
    const auto& w = ident.image_weight_sets[k];
    for (int s = 0; s < 3; ++s) {
      const double slot1 = c1s[s] / mu1;
      const double slot2 = c2s[s] / mu2;
      ident.observed[k][s] = {w[0] * slot1 + w[1] * slot2, -w[0] * slot1 + w[1] * slot2,
                              w[0] * slot1 - w[1] * slot2};
    }
  }
  const SplitRecovery reci = factor_split_recover(ident, all_permutations(2));
  CHECK(reci.permutation == std::vector<int>({0, 1}));
  CHECK(reci.ratios[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(reci.ratios[1] == doctest::Approx(1.0).epsilon(1e-10));

  // breaking one observation breaks proportionality
  SplitSamples broken = samples;
  broken.observed[0][1][1] += 0.05;
  CHECK_THROWS_AS(factor_split_recover(broken, all_permutations(2)), Error);

  // a single product type with equal weights cannot pin the permutation
  SplitSamples amb = samples;
  amb.image_weight_sets = {{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}};
  amb.observed.resize(1);
  amb.observed[0].clear();
  for (int s = 0; s < 3; ++s) {
    const double slot1 = c1s[s];  // symmetric contributions
    const double slot2 = c1s[s];
    amb.observed[0].push_back({slot1 + slot2, slot1 - slot2, -slot1 + slot2});
    amb.domain_raw[s] = {c1s[s] * std::sqrt(2.0), c1s[s] * std::sqrt(2.0)};
  }
  CHECK_THROWS_AS(factor_split_recover(amb, all_permutations(2)), Error);
}
