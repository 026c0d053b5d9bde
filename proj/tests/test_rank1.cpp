#include "doctest.h"

#include <cmath>

#include "xr/rank1.hpp"
#include "xr/rng.hpp"

using namespace xr;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Hyperbolic distance in the Poincare disc between the points at parameter t
// along the rays toward two boundary angles; 1 - r^2 is kept in closed form
// to survive t = 30.
double disc_ray_distance(double a1, double a2, double t) {
  const double r = std::tanh(t / 2);
  const double sech2 = 1.0 / (std::cosh(t / 2) * std::cosh(t / 2));
  const double chord = 2.0 * std::fabs(std::sin(0.5 * (a1 - a2)));
  const double arg = 1.0 + 2.0 * r * r * chord * chord / (sech2 * sech2);
  return std::acosh(arg);
}

EndedTree double_tripod(double len) {
  return EndedTree({"p", "q"}, {{"p", "q", len}},
                   {{"z1", "p"}, {"w1", "p"}, {"z2", "q"}, {"w2", "q"}});
}
}  // namespace

TEST_CASE("disc gromov product") {
  CHECK(h2_gromov(DiscBoundaryPoint(0), DiscBoundaryPoint(kPi)) == doctest::Approx(0.0));
  CHECK(h2_gromov(DiscBoundaryPoint(0), DiscBoundaryPoint(kPi / 2)) ==
        doctest::Approx(0.5 * std::log(2.0)));
  CHECK(h2_gromov(DiscBoundaryPoint(1.0), DiscBoundaryPoint(2.2)) ==
        doctest::Approx(h2_gromov(DiscBoundaryPoint(2.2), DiscBoundaryPoint(1.0))));
  CHECK_THROWS_AS(h2_gromov(DiscBoundaryPoint(1.0), DiscBoundaryPoint(1.0)), Error);
}

TEST_CASE("disc gromov product matches the geodesic limit") {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const double a1 = rng.uniform(0, 2 * kPi);
    double a2 = rng.uniform(0, 2 * kPi);
    if (std::fabs(std::sin(0.5 * (a1 - a2))) < 0.05) continue;
    const double t = 30.0;
    const double limit = t - 0.5 * disc_ray_distance(a1, a2, t);
    CHECK(h2_gromov(DiscBoundaryPoint(a1), DiscBoundaryPoint(a2)) ==
          doctest::Approx(limit).epsilon(1e-9));
  }
}

TEST_CASE("disc cross ratio") {
  // the points 1, -1, i, -i
  const DiscBoundaryPoint x(0), y(kPi), z(kPi / 2), w(3 * kPi / 2);
  CHECK(h2_cr(x, y, z, w) == doctest::Approx(std::log(2.0)));
  CHECK(h2_cr(x, y, x, w) == doctest::Approx(0.0));

  Rng rng(5);
  for (int k = 0; k < 8; ++k) {
    const double rot = rng.uniform(0, 2 * kPi);
    auto r = [&](const DiscBoundaryPoint& p) { return DiscBoundaryPoint(p.angle + rot); };
    CHECK(h2_cr(r(x), r(y), r(z), r(w)) == doctest::Approx(h2_cr(x, y, z, w)).epsilon(1e-12));
    const double add = h2_cr(x, y, z, w);
    CHECK(add == doctest::Approx(std::log(h2_cr_mult(x, y, z, w))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(h2_cr(x, x, z, w), Error);
}

TEST_CASE("tree validation") {
  CHECK_THROWS_AS(EndedTree({"a", "b"}, {{"a", "b", 1.0}}, {{"e1", "a"}, {"e2", "b"}}), Error);
  CHECK_THROWS_AS(EndedTree({"a", "b"}, {{"a", "b", -1.0}},
                            {{"e1", "a"}, {"e2", "b"}, {"e3", "a"}}),
                  Error);
  CHECK_THROWS_AS(EndedTree({"a", "b", "c"}, {{"a", "b", 1.0}},
                            {{"e1", "a"}, {"e2", "b"}, {"e3", "c"}}),
                  Error);  // disconnected
  CHECK_THROWS_AS(EndedTree({"a"}, {}, {{"e1", "a"}, {"e2", "a"}, {"e3", "x"}}), Error);
}

TEST_CASE("tree gromov products") {
  // tripod with center c and legs of length 1, 2, 3
  EndedTree t({"c", "u", "v", "w"}, {{"c", "u", 1.0}, {"c", "v", 2.0}, {"c", "w", 3.0}},
              {{"a", "u"}, {"b", "v"}, {"d", "w"}});
  CHECK(tree_gromov(t, "a", "b", "c") == doctest::Approx(0.0));
  // basepoint one unit down the a-leg: the other two ends read 1
  CHECK(tree_gromov(t, "b", "d", "u") == doctest::Approx(1.0));
  // moving away from the line increases the product
  CHECK(tree_gromov(t, "b", "d", "c") <= tree_gromov(t, "b", "d", "u"));
  CHECK_THROWS_AS(tree_gromov(t, "a", "a", "c"), Error);
}

TEST_CASE("tree cross ratio and branch recovery") {
  EndedTree t = double_tripod(3.0);
  CHECK(tree_cr(t, "z1", "w2", "z2", "w1").scalar == doctest::Approx(3.0));
  CHECK(tree_cr(t, "z1", "w1", "z1", "w2").scalar == doctest::Approx(0.0));
  CHECK(tree_cr(t, "z1", "z1", "z2", "w2").kind == CrValue::Kind::minus_inf);
  CHECK(tree_cr(t, "z1", "w1", "z2", "z1").kind == CrValue::Kind::plus_inf);

  Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    const double len = (1.0 + static_cast<double>(rng.below(24))) / 8.0;
    EndedTree dt = double_tripod(len);
    CHECK(recover_branch_distance(dt, "p", "q") == doctest::Approx(len).epsilon(1e-14));
  }
}

TEST_CASE("tree cross ratio symmetries are exact") {
  EndedTree t({"r", "s", "u"}, {{"r", "s", 0.5}, {"s", "u", 1.25}},
              {{"a", "r"}, {"b", "r"}, {"c", "s"}, {"d", "u"}, {"e", "u"}});
  auto cr = [&](const char* a, const char* b, const char* c, const char* d) {
    return tree_cr(t, a, b, c, d).scalar;
  };
  const double base = cr("a", "c", "d", "b");
  CHECK(base == doctest::Approx(-cr("a", "b", "d", "c")).epsilon(1e-12));
  CHECK(base == doctest::Approx(-cr("d", "c", "a", "b")).epsilon(1e-12));
  CHECK(base == doctest::Approx(cr("a", "c", "e", "b") + cr("e", "c", "d", "b")).epsilon(1e-12));
  CHECK(base == doctest::Approx(cr("a", "c", "d", "e") + cr("a", "e", "d", "b")).epsilon(1e-12));
}

TEST_CASE("tree basepoint change through busemann functions") {
  EndedTree t({"r", "s", "u"}, {{"r", "s", 0.5}, {"s", "u", 1.25}},
              {{"a", "r"}, {"b", "r"}, {"c", "s"}, {"d", "u"}, {"e", "u"}});
  for (const char* o : {"r", "s", "u"})
    for (const char* oh : {"r", "s", "u"}) {
      const double lhs = tree_gromov(t, "a", "d", o) - tree_gromov(t, "a", "d", oh);
      const double rhs =
          0.5 * tree_busemann(t, "a", o, oh) + 0.5 * tree_busemann(t, "d", o, oh);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("tree moebius extension") {
  EndedTree t({"r", "s"}, {{"r", "s", 2.0}},
              {{"a", "r"}, {"b", "r"}, {"c", "s"}, {"d", "s"}});

  // identity map
  std::map<std::string, std::string> ident{{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}};
  const TreeIsometryReport rep = tree_moebius_extend(t, t, ident);
  CHECK(rep.max_distance_deviation <= 1e-12);
  CHECK(rep.max_cr_deviation <= 1e-12);

  // swapping the two ends at one branch is an isometry fixing the core
  std::map<std::string, std::string> swap{{"a", "b"}, {"b", "a"}, {"c", "c"}, {"d", "d"}};
  CHECK_NOTHROW(tree_moebius_extend(t, t, swap));

  // equilateral tripod, swap of two ends: reflection fixing the third leg
  EndedTree trip({"c0"}, {}, {{"a", "c0"}, {"b", "c0"}, {"d", "c0"}});
  std::map<std::string, std::string> tswap{{"a", "b"}, {"b", "a"}, {"d", "d"}};
  const TreeIsometryReport trep = tree_moebius_extend(trip, trip, tswap);
  CHECK(trep.vertex_map.size() == 1);  // the center is the only median

  // doubling the target metric breaks the map, halving it back repairs it
  const EndedTree doubled = t.rescaled(2.0);
  CHECK_THROWS_AS(tree_moebius_extend(t, doubled, ident), Error);
  CHECK_NOTHROW(tree_moebius_extend(t, doubled.rescaled(0.5), ident));

  // non-bijective map
  std::map<std::string, std::string> merge{{"a", "b"}, {"b", "b"}, {"c", "c"}, {"d", "d"}};
  CHECK_THROWS_AS(tree_moebius_extend(t, t, merge), Error);
}
