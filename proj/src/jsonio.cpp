#include "xr/jsonio.hpp"

namespace xr {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::BadInput, std::string("missing key: ") + key);
  return j.at(key);
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::BadInput, "matrix must be an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(i).size()) != cols) fail(ErrorCode::BadInput, "ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

json to_json(const TypeVector& t) {
  return json{{"n", t.n}, {"values", t.values}, {"mults", t.mults}};
}

TypeVector type_from_json(const json& j) {
  return make_type(need(j, "n").get<int>(), need(j, "values").get<std::vector<double>>(),
                   need(j, "mults").get<std::vector<int>>(),
                   j.value("normalize", false));
}

json to_json(const FaceSignature& f) { return json{{"n", f.n}, {"dims", f.dims}}; }

FaceSignature face_from_json(const json& j) {
  return FaceSignature(need(j, "n").get<int>(), need(j, "dims").get<std::vector<int>>());
}

json to_json(const Flag& f) {
  json cols = json::array();
  for (int c = 0; c < f.basis().cols(); ++c) cols.push_back(f.basis().column(c));
  return json{{"n", f.n()}, {"signature", f.signature().dims}, {"basis", cols}};
}

Flag flag_from_json(const json& j) {
  const int n = need(j, "n").get<int>();
  FaceSignature sig(n, need(j, "signature").get<std::vector<int>>());
  const json& cols = need(j, "basis");
  std::vector<std::vector<double>> cc;
  for (const auto& c : cols) cc.push_back(c.get<std::vector<double>>());
  return Flag(n, sig, Matrix::from_columns(cc));
}

json to_json(const SpdPoint& p) { return json{{"n", p.n()}, {"mat", matrix_to_json(p.mat())}}; }

SpdPoint spd_from_json(const json& j) {
  const Matrix m = matrix_from_json(need(j, "mat"));
  if (j.contains("n") && j.at("n").get<int>() != m.rows())
    fail(ErrorCode::BadInput, "spd point n does not match matrix size");
  return SpdPoint(m);
}

json to_json(const Quadruple& q) {
  return json{{"x", to_json(q.x)}, {"y", to_json(q.y)}, {"z", to_json(q.z)}, {"w", to_json(q.w)}};
}

Quadruple quad_from_json(const json& j) {
  return Quadruple(flag_from_json(need(j, "x")), flag_from_json(need(j, "y")),
                   flag_from_json(need(j, "z")), flag_from_json(need(j, "w")));
}

json to_json(const CrValue& v) {
  switch (v.kind) {
    case CrValue::Kind::plus_inf:
      return json{{"kind", "plus_inf"}};
    case CrValue::Kind::minus_inf:
      return json{{"kind", "minus_inf"}};
    case CrValue::Kind::finite:
      if (v.vector.has_value()) return json{{"kind", "finite"}, {"vector", v.vector->coords}};
      return json{{"kind", "finite"}, {"scalar", v.scalar}};
  }
  return json{};
}

json to_json(const EndedTree& t) {
  json edges = json::array();
  for (const auto& e : t.edges()) edges.push_back(json::array({e.u, e.v, e.length}));
  json ends = json::array();
  for (const auto& [eid, vid] : t.ends()) ends.push_back(json::array({eid, vid}));
  return json{{"vertices", t.vertices()}, {"edges", edges}, {"ends", ends}};
}

EndedTree tree_from_json(const json& j) {
  std::vector<std::string> vertices = need(j, "vertices").get<std::vector<std::string>>();
  std::vector<EndedTree::Edge> edges;
  for (const auto& e : need(j, "edges")) {
    if (e.size() != 3) fail(ErrorCode::BadInput, "edge must be [u, v, length]");
    edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>(), e.at(2).get<double>()});
  }
  std::vector<std::pair<std::string, std::string>> ends;
  for (const auto& e : need(j, "ends")) {
    if (e.size() != 2) fail(ErrorCode::BadInput, "end must be [id, vertex]");
    ends.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return EndedTree(std::move(vertices), std::move(edges), std::move(ends));
}

std::map<std::string, std::string> end_map_from_json(const json& j) {
  std::map<std::string, std::string> m;
  for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = it.value().get<std::string>();
  return m;
}

ProductSpace product_space_from_json(const json& j) {
  ProductSpace space;
  for (const auto& f : need(j, "factors")) {
    ProductSpace::Factor factor;
    const std::string kind = need(f, "kind").get<std::string>();
    if (kind == "spd") {
      factor.kind = ProductSpace::Factor::Kind::spd;
      factor.n = need(f, "n").get<int>();
    } else if (kind == "h2") {
      factor.kind = ProductSpace::Factor::Kind::h2;
    } else if (kind == "tree") {
      factor.kind = ProductSpace::Factor::Kind::tree;
      factor.tree = std::make_shared<EndedTree>(tree_from_json(need(f, "tree")));
    } else if (kind == "flat") {
      factor.kind = ProductSpace::Factor::Kind::flat;
      factor.n = need(f, "dim").get<int>();
    } else {
      fail(ErrorCode::BadInput, "unknown factor kind: " + kind);
    }
    space.factors.push_back(std::move(factor));
  }
  return space;
}

ProductType product_type_from_json(const ProductSpace& space, const json& j) {
  std::vector<double> weights = need(j, "weights").get<std::vector<double>>();
  std::vector<std::optional<TypeVector>> types(space.factors.size());
  if (j.contains("types")) {
    const json& ts = j.at("types");
    if (ts.size() != space.factors.size()) fail(ErrorCode::ArityMismatch, "types arity");
    for (size_t i = 0; i < ts.size(); ++i)
      if (!ts.at(i).is_null()) types[i] = type_from_json(ts.at(i));
  }
  for (size_t i = 0; i < space.factors.size(); ++i)
    if (space.factors[i].kind == ProductSpace::Factor::Kind::spd && !types[i].has_value())
      fail(ErrorCode::BadInput, "spd factor needs a type entry");
  return ProductType(std::move(types), std::move(weights));
}

ProductBoundaryPoint product_point_from_json(const ProductSpace& space, const json& j) {
  if (!j.is_array() || j.size() != space.factors.size())
    fail(ErrorCode::ArityMismatch, "boundary point must list one part per factor");
  ProductBoundaryPoint p;
  for (size_t i = 0; i < space.factors.size(); ++i) {
    const json& part = j.at(i);
    switch (space.factors[i].kind) {
      case ProductSpace::Factor::Kind::spd:
        p.parts.emplace_back(
            SpdBoundary{flag_from_json(need(part, "flag")), type_from_json(need(part, "type"))});
        break;
      case ProductSpace::Factor::Kind::h2:
        p.parts.emplace_back(DiscBoundaryPoint(need(part, "angle").get<double>()));
        break;
      case ProductSpace::Factor::Kind::tree:
        p.parts.emplace_back(need(part, "end").get<std::string>());
        break;
      case ProductSpace::Factor::Kind::flat: {
        FlatBoundary fb{need(part, "dir").get<std::vector<double>>()};
        double s = 0.0;
        for (double v : fb.dir) s += v * v;
        if (std::fabs(s - 1.0) > 1e-9) fail(ErrorCode::BadInput, "flat direction must be unit");
        p.parts.emplace_back(std::move(fb));
        break;
      }
    }
  }
  return p;
}

ProductQuadruple product_quad_from_json(const ProductSpace& space, const json& j) {
  return ProductQuadruple{product_point_from_json(space, need(j, "x")),
                          product_point_from_json(space, need(j, "y")),
                          product_point_from_json(space, need(j, "z")),
                          product_point_from_json(space, need(j, "w"))};
}

json to_json(const CalibrationReport& r) {
  return json{{"n", r.n},
              {"c_metric", r.c_metric},
              {"residual", r.residual},
              {"trials", r.trials},
              {"seed", r.seed}};
}

json to_json(const MoebiusReport& r) {
  return json{{"max_deviation", r.max_deviation}, {"quadruples", r.quadruples},
              {"mismatches", r.mismatches},       {"verdict", r.moebius ? "moebius" : "not_moebius"},
              {"threshold", r.threshold},         {"seed", r.seed},
              {"exhaustive", r.exhaustive}};
}

json to_json(const TreeIsometryReport& r) {
  json vm = json::object();
  for (const auto& [a, b] : r.vertex_map) vm[a] = b;
  return json{{"vertex_map", vm},
              {"max_cr_deviation", r.max_cr_deviation},
              {"max_distance_deviation", r.max_distance_deviation},
              {"max_stretch", r.max_stretch},
              {"min_stretch", r.min_stretch}};
}

}  // namespace xr
