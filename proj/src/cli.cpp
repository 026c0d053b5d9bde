#include "xr/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "xr/jsonio.hpp"
#include "xr/suite.hpp"

namespace xr {

namespace {

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::BadInput, "parse error in " + path + ": " + e.what());
  }
  return j;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotOpposite:
    case ErrorCode::Inadmissible:
    case ErrorCode::CoincidentPoints:
    case ErrorCode::SameEnd:
    case ErrorCode::Degenerate:
    case ErrorCode::NotGeneric:
    case ErrorCode::BasepointNotInFlat:
      return 2;
    case ErrorCode::NotMoebius:
    case ErrorCode::NotExtendable:
    case ErrorCode::CalibrationFailed:
      return 3;
    default:
      return 1;
  }
}

double env_tolerance(double fallback) {
  if (const char* s = std::getenv("XR_TOL")) {
    try {
      const double v = std::stod(s);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return fallback;
}

int emit_cr(const CrValue& v, std::ostream& out) {
  out << to_json(v).dump(2) << "\n";
  return v.finite() ? 0 : 2;
}

// Degenerate warning channel: transversality holds but sits close enough to
// the opposition threshold that downstream values lose digits.
void warn_if_marginal(const Flag& a, const Flag& b, const char* what, std::ostream& err) {
  const double m = opposition_margin(a, b);
  if (m > 1e-9 && m <= 1e-7)
    err << "degenerate: " << what << " opposition margin " << m << " is near the threshold\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"boundary cross-ratio toolkit"};
  app.require_subcommand(1);

  std::string type_path, x_path, y_path, base_path, quad_path, face_path, g_path;
  std::string tree_path, tree2_path, map_path, space_path, domain_path, image_path;
  std::string z_end, w_end, o_vertex, z1, w1, z2, w2;
  double t_param = 1e4;
  int n_param = 3, trials = 50, budget = 500;
  std::uint64_t seed = 42;
  double scale = 1.0;
  const double tol = env_tolerance(1e-7);

  auto* c_gromov = app.add_subcommand("gromov", "closed-form Gromov product of two flags");
  c_gromov->add_option("--type", type_path)->required();
  c_gromov->add_option("--x", x_path)->required();
  c_gromov->add_option("--y", y_path)->required();
  c_gromov->add_option("--base", base_path);

  auto* c_cr = app.add_subcommand("cr", "scalar cross ratio of a flag quadruple");
  c_cr->add_option("--xi", type_path)->required();
  c_cr->add_option("--quad", quad_path)->required();
  c_cr->add_option("--base", base_path);

  auto* c_crv = app.add_subcommand("cr-vector", "vector-valued cross ratio");
  c_crv->add_option("--face", face_path)->required();
  c_crv->add_option("--quad", quad_path)->required();

  auto* c_crp = app.add_subcommand("cr-project", "project the chamber value onto a face");
  c_crp->add_option("--face", face_path)->required();
  c_crp->add_option("--quad", quad_path)->required();

  auto* c_period = app.add_subcommand("period", "period of a regular hyperbolic element");
  c_period->add_option("--g", g_path)->required();
  c_period->add_option("--x", x_path);

  auto* c_geom = app.add_subcommand("geom-interp", "flat displacement of the retract word");
  c_geom->add_option("--quad", quad_path)->required();
  c_geom->add_option("--base", base_path)->required();

  auto* c_oracle = app.add_subcommand("oracle", "finite-t limit evaluation of the Gromov product");
  c_oracle->add_option("--type", type_path)->required();
  c_oracle->add_option("--x", x_path)->required();
  c_oracle->add_option("--y", y_path)->required();
  c_oracle->add_option("--base", base_path);
  c_oracle->add_option("--t", t_param);

  auto* c_cal = app.add_subcommand("calibrate", "fit the metric constant against the oracle");
  c_cal->add_option("--n", n_param)->required();
  c_cal->add_option("--trials", trials);
  c_cal->add_option("--seed", seed);

  auto* c_tg = app.add_subcommand("tree-gromov", "Gromov product of two tree ends");
  c_tg->add_option("--tree", tree_path)->required();
  c_tg->add_option("--z", z_end)->required();
  c_tg->add_option("--w", w_end)->required();
  c_tg->add_option("--o", o_vertex)->required();

  auto* c_tcr = app.add_subcommand("tree-cr", "cross ratio of four tree ends");
  c_tcr->add_option("--tree", tree_path)->required();
  c_tcr->add_option("--z1", z1)->required();
  c_tcr->add_option("--w1", w1)->required();
  c_tcr->add_option("--z2", z2)->required();
  c_tcr->add_option("--w2", w2)->required();

  auto* c_text = app.add_subcommand("tree-extend", "extend a tree Moebius bijection");
  c_text->add_option("--t1", tree_path)->required();
  c_text->add_option("--t2", tree2_path)->required();
  c_text->add_option("--map", map_path)->required();

  auto* c_pcr = app.add_subcommand("product-cr", "cross ratio in a product space");
  c_pcr->add_option("--space", space_path)->required();
  c_pcr->add_option("--quad", quad_path)->required();

  auto* c_mc = app.add_subcommand("moebius-check", "audit a sampled boundary map");
  c_mc->add_option("--domain", domain_path)->required();
  c_mc->add_option("--image", image_path)->required();
  c_mc->add_option("--xi", type_path)->required();
  c_mc->add_option("--budget", budget);
  c_mc->add_option("--seed", seed);
  c_mc->add_option("--scale", scale);

  auto* c_suite = app.add_subcommand("suite", "run the full acceptance battery");
  c_suite->add_option("--seed", seed);

  std::vector<std::string> args = argv;
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (*c_gromov) {
      const TypeVector t = type_from_json(load(type_path));
      const Flag x = flag_from_json(load(x_path));
      const Flag y = flag_from_json(load(y_path));
      const SpdPoint o =
          base_path.empty() ? SpdPoint::identity(t.n) : spd_from_json(load(base_path));
      warn_if_marginal(x, y, "(x, y)", err);
      const CrValue v = gromov_closed(x, y, t, o);
      if (v.finite()) {
        out << json{{"value", v.scalar}}.dump(2) << "\n";
        return 0;
      }
      return emit_cr(v, out);
    }
    if (*c_cr) {
      const TypeVector t = type_from_json(load(type_path));
      const Quadruple q = quad_from_json(load(quad_path));
      warn_if_marginal(q.x, q.y, "(x, y)", err);
      warn_if_marginal(q.z, q.w, "(z, w)", err);
      warn_if_marginal(q.x, q.w, "(x, w)", err);
      warn_if_marginal(q.z, q.y, "(z, y)", err);
      std::optional<SpdPoint> o;
      if (!base_path.empty()) o = spd_from_json(load(base_path));
      return emit_cr(cr_scalar(q, t, o), out);
    }
    if (*c_crv) {
      const FaceSignature face = face_from_json(load(face_path));
      const Quadruple q = quad_from_json(load(quad_path));
      return emit_cr(cr_vector(q, face), out);
    }
    if (*c_crp) {
      const FaceSignature face = face_from_json(load(face_path));
      const Quadruple q = quad_from_json(load(quad_path));
      const CrValue sigma = cr_vector(q, FaceSignature::full(face.n));
      if (!sigma.finite()) return emit_cr(sigma, out);
      return emit_cr(cr_project(sigma, face, q), out);
    }
    if (*c_period) {
      const Matrix g = matrix_from_json(load(g_path));
      const PeriodResult pr =
          x_path.empty() ? period(g) : period(g, flag_from_json(load(x_path)));
      out << json{{"period", pr.period.coords},
                  {"ell", pr.translation.coords},
                  {"residual", pr.residual}}
                 .dump(2)
          << "\n";
      return 0;
    }
    if (*c_geom) {
      const Quadruple q = quad_from_json(load(quad_path));
      const SpdPoint o = spd_from_json(load(base_path));
      const CartanVector disp = geom_interp(q, o);
      const CrValue cr = cr_vector(q, FaceSignature::full(q.x.n()));
      const CartanVector two_cr = 2.0 * *cr.vector;
      out << json{{"vector", disp.coords},
                  {"two_cr", two_cr.coords},
                  {"deviation", (disp - two_cr).norm()}}
                 .dump(2)
          << "\n";
      return 0;
    }
    if (*c_oracle) {
      const TypeVector t = type_from_json(load(type_path));
      const Flag x = flag_from_json(load(x_path));
      const Flag y = flag_from_json(load(y_path));
      const SpdPoint o =
          base_path.empty() ? SpdPoint::identity(t.n) : spd_from_json(load(base_path));
      const GromovEstimate est =
          gromov_oracle(IdealPoint(x, t), IdealPoint(y, involute(t)), o, t_param);
      out << json{{"t", t_param},
                  {"f_t", est.f_t},
                  {"f_2t", est.f_2t},
                  {"value", est.value},
                  {"non_opposite", est.non_opposite}}
                 .dump(2)
          << "\n";
      return est.non_opposite ? 2 : 0;
    }
    if (*c_cal) {
      const CalibrationReport rep = calibrate(n_param, trials, seed);
      out << to_json(rep).dump(2) << "\n";
      return 0;
    }
    if (*c_tg) {
      const EndedTree t = tree_from_json(load(tree_path));
      out << json{{"value", tree_gromov(t, z_end, w_end, o_vertex)}}.dump(2) << "\n";
      return 0;
    }
    if (*c_tcr) {
      const EndedTree t = tree_from_json(load(tree_path));
      return emit_cr(tree_cr(t, z1, w1, z2, w2), out);
    }
    if (*c_text) {
      const EndedTree t1 = tree_from_json(load(tree_path));
      const EndedTree t2 = tree_from_json(load(tree2_path));
      const auto emap = end_map_from_json(load(map_path));
      try {
        const TreeIsometryReport rep = tree_moebius_extend(t1, t2, emap, env_tolerance(1e-9));
        json doc = to_json(rep);
        doc["verdict"] = "moebius";
        out << doc.dump(2) << "\n";
        return 0;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotMoebius && e.code() != ErrorCode::NotExtendable) throw;
        out << json{{"verdict", "not_moebius"}, {"error", e.what()}}.dump(2) << "\n";
        return 3;
      }
    }
    if (*c_pcr) {
      const json sj = load(space_path);
      const ProductSpace space = product_space_from_json(sj);
      const ProductType pt = product_type_from_json(space, sj);
      const ProductQuadruple q = product_quad_from_json(space, load(quad_path));
      return emit_cr(product_cr(space, q, pt), out);
    }
    if (*c_mc) {
      SampledMap f;
      for (const auto& j : load(domain_path)) f.domain.push_back(flag_from_json(j));
      for (const auto& j : load(image_path)) f.image.push_back(flag_from_json(j));
      f.codomain_scale = scale;
      const TypeVector t = type_from_json(load(type_path));
      const MoebiusReport rep = check_moebius(f, t, budget, seed, tol);
      out << to_json(rep).dump(2) << "\n";
      return rep.moebius ? 0 : 3;
    }
    if (*c_suite) {
      const std::vector<CheckResult> results = run_acceptance(seed);
      const bool all = print_acceptance(err, results);
      json arr = json::array();
      for (const CheckResult& r : results)
        arr.push_back(json{{"name", r.name},
                           {"pass", r.pass},
                           {"worst", r.worst},
                           {"bound", r.bound},
                           {"detail", r.detail}});
      out << json{{"seed", seed}, {"checks", arr}, {"pass", all}}.dump(2) << "\n";
      return all ? 0 : 3;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    out << json{{"error", e.what()}}.dump(2) << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  err << "no subcommand dispatched\n";
  return 1;
}

}  // namespace xr
