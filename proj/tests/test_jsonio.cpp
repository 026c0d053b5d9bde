#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "xr/cli.hpp"
#include "xr/jsonio.hpp"
#include "xr/randgen.hpp"

using namespace xr;

namespace {

struct TempFile {
  std::string path;
  TempFile(const std::string& name, const json& doc) : path("/tmp/xr_test_" + name) {
    std::ofstream out(path);
    out << doc.dump();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

int run(const std::vector<std::string>& args, std::string* out_str = nullptr,
        std::string* err_str = nullptr) {
  std::ostringstream out, err;
  const int rc = dispatch(args, out, err);
  if (out_str) *out_str = out.str();
  if (err_str) *err_str = err.str();
  return rc;
}

}  // namespace

TEST_CASE("round trips") {
  Rng rng(3);
  const TypeVector t = random_regular_type(rng, 3, 0.05);
  const TypeVector t2 = type_from_json(to_json(t));
  for (int i = 0; i < 3; ++i) CHECK(t2.values[i] == doctest::Approx(t.values[i]).epsilon(1e-15));

  const FaceSignature face(3, {1, 3});
  CHECK(face_from_json(to_json(face)) == face);

  const Flag f = random_full_flag(rng, 3);
  CHECK(same_flag(flag_from_json(to_json(f)), f, 1e-12));

  const SpdPoint p = random_spd_point(rng, 3);
  CHECK(frobenius_distance(spd_from_json(to_json(p)).mat(), p.mat()) <= 1e-12);

  EndedTree tree({"a", "b"}, {{"a", "b", 1.5}}, {{"e1", "a"}, {"e2", "a"}, {"e3", "b"}});
  const EndedTree tree2 = tree_from_json(to_json(tree));
  CHECK(tree2.vertex_distance("a", "b") == doctest::Approx(1.5));

  CHECK(to_json(CrValue::plus_inf())["kind"] == "plus_inf");
  CHECK_THROWS_AS(type_from_json(json{{"n", 2}}), Error);
}

TEST_CASE("cli gromov on the standard pair") {
  const auto [s, o] = standard_pair(2, FaceSignature::full(2));
  TempFile tf("type.json", to_json(make_type(2, {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}, {1, 1})));
  TempFile xf("x.json", to_json(s));
  TempFile yf("y.json", to_json(o));
  std::string out;
  const int rc = run({"gromov", "--type", tf.path, "--x", xf.path, "--y", yf.path}, &out);
  CHECK(rc == 0);
  const json doc = json::parse(out);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("cli cr conventions and exit codes") {
  const FaceSignature full2 = FaceSignature::full(2);
  const Flag e1(2, full2, Matrix::identity(2));
  const Flag d1(2, full2, Matrix(2, 2, {1, 1, 1, -1}));
  const Flag d2(2, full2, Matrix(2, 2, {1, 1, -1, 1}));
  // (x, y) fails, cross pairs hold: minus infinity, exit 2
  json quad{{"x", to_json(e1)}, {"y", to_json(e1)}, {"z", to_json(d1)}, {"w", to_json(d2)}};
  TempFile qf("quad.json", quad);
  TempFile tf("xi.json", to_json(make_type(2, {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}, {1, 1})));
  std::string out;
  const int rc = run({"cr", "--xi", tf.path, "--quad", qf.path}, &out);
  CHECK(rc == 2);
  CHECK(json::parse(out)["kind"] == "minus_inf");

  // unknown flag file: usage error
  CHECK(run({"cr", "--xi", tf.path, "--quad", "/nonexistent.json"}) == 1);
  CHECK(run({"bogus-subcommand"}) == 1);
}

TEST_CASE("cli calibrate and determinism") {
  std::string out1, out2;
  const int rc1 = run({"calibrate", "--n", "2", "--trials", "4", "--seed", "7"}, &out1);
  const int rc2 = run({"calibrate", "--n", "2", "--trials", "4", "--seed", "7"}, &out2);
  CHECK(rc1 == 0);
  CHECK(rc2 == 0);
  CHECK(out1 == out2);  // byte-stable for a fixed seed
  const json doc = json::parse(out1);
  CHECK(doc["c_metric"].get<double>() == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(doc["seed"].get<std::uint64_t>() == 7);
}

TEST_CASE("cli tree commands") {
  EndedTree t({"p", "q"}, {{"p", "q", 3.0}},
              {{"z1", "p"}, {"w1", "p"}, {"z2", "q"}, {"w2", "q"}});
  TempFile tf("tree.json", to_json(t));
  std::string out;
  CHECK(run({"tree-gromov", "--tree", tf.path, "--z", "z1", "--w", "z2", "--o", "p"}, &out) == 0);
  CHECK(json::parse(out)["value"].get<double>() == doctest::Approx(0.0));

  CHECK(run({"tree-cr", "--tree", tf.path, "--z1", "z1", "--w1", "w2", "--z2", "z2", "--w2",
             "w1"},
            &out) == 0);
  CHECK(json::parse(out)["scalar"].get<double>() == doctest::Approx(3.0));

  // extension of the identity map, then of a perturbed tree
  TempFile mf("map.json", json{{"z1", "z1"}, {"w1", "w1"}, {"z2", "z2"}, {"w2", "w2"}});
  CHECK(run({"tree-extend", "--t1", tf.path, "--t2", tf.path, "--map", mf.path}, &out) == 0);
  CHECK(json::parse(out)["verdict"] == "moebius");

  EndedTree tp({"p", "q"}, {{"p", "q", 3.1}},
               {{"z1", "p"}, {"w1", "p"}, {"z2", "q"}, {"w2", "q"}});
  TempFile tpf("tree_p.json", to_json(tp));
  CHECK(run({"tree-extend", "--t1", tf.path, "--t2", tpf.path, "--map", mf.path}, &out) == 3);
  CHECK(json::parse(out)["verdict"] == "not_moebius");
}

TEST_CASE("cli product-cr") {
  json space{{"factors", json::array({json{{"kind", "h2"}}, json{{"kind", "h2"}}})},
             {"weights", {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}}};
  TempFile sf("space.json", space);
  auto pt = [](double a, double b) { return json::array({json{{"angle", a}}, json{{"angle", b}}}); };
  json quad{{"x", pt(0.0, 0.1)}, {"y", pt(3.1, 2.0)}, {"z", pt(1.5, 4.0)}, {"w", pt(4.6, 5.5)}};
  TempFile qf("pquad.json", quad);
  std::string out;
  CHECK(run({"product-cr", "--space", sf.path, "--quad", qf.path}, &out) == 0);
  const double got = json::parse(out)["scalar"].get<double>();
  const double want = (h2_cr(DiscBoundaryPoint(0.0), DiscBoundaryPoint(3.1), DiscBoundaryPoint(1.5),
                             DiscBoundaryPoint(4.6)) +
                       h2_cr(DiscBoundaryPoint(0.1), DiscBoundaryPoint(2.0), DiscBoundaryPoint(4.0),
                             DiscBoundaryPoint(5.5))) /
                      std::sqrt(2.0);
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("cli moebius-check") {
  Rng rng(5);
  const Matrix g = random_unimodular(rng, 2);
  json dom = json::array(), img = json::array();
  for (int i = 0; i < 6; ++i) {
    const Flag f = random_full_flag(rng, 2);
    dom.push_back(to_json(f));
    img.push_back(to_json(act(g, f)));
  }
  TempFile df("dom.json", dom);
  TempFile mf("img.json", img);
  TempFile tf("mxi.json", to_json(make_type(2, {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}, {1, 1})));
  std::string out;
  CHECK(run({"moebius-check", "--domain", df.path, "--image", mf.path, "--xi", tf.path}, &out) ==
        0);
  CHECK(json::parse(out)["verdict"] == "moebius");

  // shuffled image: rejected with exit 3
  json img2 = img;
  std::swap(img2[0], img2[1]);
  TempFile mf2("img2.json", img2);
  CHECK(run({"moebius-check", "--domain", df.path, "--image", mf2.path, "--xi", tf.path}, &out) ==
        3);
  CHECK(json::parse(out)["verdict"] == "not_moebius");
}

TEST_CASE("cli period and oracle") {
  TempFile gf("g.json", json::array({{2.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.5}}));
  std::string out;
  CHECK(run({"period", "--g", gf.path}, &out) == 0);
  const json doc = json::parse(out);
  CHECK(doc["ell"][0].get<double>() == doctest::Approx(2 * std::log(2.0)));
  CHECK(doc["residual"].get<double>() <= 1e-8);

  const auto [s, o] = standard_pair(2, FaceSignature::full(2));
  TempFile tf("otype.json", to_json(make_type(2, {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}, {1, 1})));
  TempFile xf("ox.json", to_json(s));
  TempFile yf("oy.json", to_json(o));
  CHECK(run({"oracle", "--type", tf.path, "--x", xf.path, "--y", yf.path, "--t", "1000"}, &out) ==
        0);
  CHECK(std::fabs(json::parse(out)["value"].get<double>()) <= 1e-8);

  // same flag on both sides: divergence, exit 2
  CHECK(run({"oracle", "--type", tf.path, "--x", xf.path, "--y", xf.path, "--t", "1000"}, &out) ==
        2);
  CHECK(json::parse(out)["non_opposite"].get<bool>());
}
