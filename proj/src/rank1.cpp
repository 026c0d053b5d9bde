#include "xr/rank1.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace xr {

namespace {
constexpr double kTau = 6.283185307179586476925287;
}

DiscBoundaryPoint::DiscBoundaryPoint(double a) : angle(a) {
  angle = std::fmod(angle, kTau);
  if (angle < 0) angle += kTau;
}

namespace {

double chord(const DiscBoundaryPoint& x, const DiscBoundaryPoint& y) {
  return 2.0 * std::fabs(std::sin(0.5 * (x.angle - y.angle)));
}

}  // namespace

double h2_gromov(const DiscBoundaryPoint& x, const DiscBoundaryPoint& y) {
  const double c = chord(x, y);
  if (c < 1e-12) fail(ErrorCode::CoincidentPoints, "boundary points coincide");
  return -std::log(c / 2.0);
}

double h2_cr(const DiscBoundaryPoint& x, const DiscBoundaryPoint& y, const DiscBoundaryPoint& z,
             const DiscBoundaryPoint& w) {
  const double xy = chord(x, y), zw = chord(z, w), xw = chord(x, w), zy = chord(z, y);
  if (xy < 1e-12 || zw < 1e-12 || xw < 1e-12 || zy < 1e-12)
    fail(ErrorCode::Degenerate, "cross ratio chord vanishes");
  return std::log(xy * zw / (xw * zy));
}

double h2_cr_mult(const DiscBoundaryPoint& x, const DiscBoundaryPoint& y,
                  const DiscBoundaryPoint& z, const DiscBoundaryPoint& w) {
  const double xy = chord(x, y), zw = chord(z, w), xw = chord(x, w), zy = chord(z, y);
  if (xy < 1e-12 || zw < 1e-12 || xw < 1e-12 || zy < 1e-12)
    fail(ErrorCode::Degenerate, "cross ratio chord vanishes");
  return xy * zw / (xw * zy);
}

EndedTree::EndedTree(std::vector<std::string> vertices, std::vector<Edge> edges,
                     std::vector<std::pair<std::string, std::string>> ends)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), ends_(std::move(ends)) {
  const int nv = static_cast<int>(vertices_.size());
  if (nv < 1) fail(ErrorCode::BadInput, "tree needs at least one vertex");
  for (int i = 0; i < nv; ++i) {
    if (vertex_index_.count(vertices_[i])) fail(ErrorCode::BadInput, "duplicate vertex id");
    vertex_index_[vertices_[i]] = i;
  }
  if (static_cast<int>(edges_.size()) != nv - 1)
    fail(ErrorCode::BadInput, "edge count must be vertex count minus one");

  std::vector<std::vector<std::pair<int, double>>> adj(nv);
  for (const Edge& e : edges_) {
    if (!vertex_index_.count(e.u) || !vertex_index_.count(e.v))
      fail(ErrorCode::BadInput, "edge references unknown vertex");
    if (!(e.length > 0.0)) fail(ErrorCode::BadInput, "edge length must be positive");
    adj[vertex_index_[e.u]].emplace_back(vertex_index_[e.v], e.length);
    adj[vertex_index_[e.v]].emplace_back(vertex_index_[e.u], e.length);
  }

  // All-pairs distances by BFS from each vertex; also proves connectivity.
  dist_.assign(nv, std::vector<double>(nv, -1.0));
  for (int s = 0; s < nv; ++s) {
    dist_[s][s] = 0.0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (auto [v, len] : adj[u]) {
        if (dist_[s][v] < 0) {
          dist_[s][v] = dist_[s][u] + len;
          q.push(v);
        }
      }
    }
    for (int v = 0; v < nv; ++v)
      if (dist_[s][v] < 0) fail(ErrorCode::BadInput, "tree is not connected");
  }

  if (ends_.size() < 3) fail(ErrorCode::BadInput, "thick tree needs at least three ends");
  std::set<std::string> seen;
  for (const auto& [eid, vid] : ends_) {
    if (!seen.insert(eid).second) fail(ErrorCode::BadInput, "duplicate end id");
    if (!vertex_index_.count(vid)) fail(ErrorCode::BadInput, "end attaches to unknown vertex");
    end_attach_[eid] = vid;
  }
}

bool EndedTree::has_vertex(const std::string& id) const { return vertex_index_.count(id) > 0; }
bool EndedTree::has_end(const std::string& id) const { return end_attach_.count(id) > 0; }

const std::string& EndedTree::attach(const std::string& end_id) const {
  auto it = end_attach_.find(end_id);
  if (it == end_attach_.end()) fail(ErrorCode::BadInput, "unknown end id: " + end_id);
  return it->second;
}

double EndedTree::vertex_distance(const std::string& a, const std::string& b) const {
  auto ia = vertex_index_.find(a);
  auto ib = vertex_index_.find(b);
  if (ia == vertex_index_.end() || ib == vertex_index_.end())
    fail(ErrorCode::BadInput, "unknown vertex id");
  return dist_[ia->second][ib->second];
}

std::string EndedTree::median_vertex(const std::string& a, const std::string& b,
                                     const std::string& c) const {
  // The meeting vertex minimizes the summed distances to the three inputs.
  double best = 0.0;
  int best_i = -1;
  const int ia = vertex_index_.at(a), ib = vertex_index_.at(b), ic = vertex_index_.at(c);
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    const double s = dist_[i][ia] + dist_[i][ib] + dist_[i][ic];
    if (best_i < 0 || s < best - 1e-12) {
      best = s;
      best_i = i;
    }
  }
  return vertices_[best_i];
}

EndedTree EndedTree::rescaled(double factor) const {
  if (!(factor > 0.0)) fail(ErrorCode::BadInput, "scale factor must be positive");
  std::vector<Edge> e = edges_;
  for (Edge& ed : e) ed.length *= factor;
  return EndedTree(vertices_, std::move(e), ends_);
}

double tree_gromov(const EndedTree& t, const std::string& z, const std::string& w,
                   const std::string& o) {
  if (z == w) fail(ErrorCode::SameEnd, "gromov product needs distinct ends");
  const std::string& az = t.attach(z);
  const std::string& aw = t.attach(w);
  return 0.5 * (t.vertex_distance(o, az) + t.vertex_distance(o, aw) - t.vertex_distance(az, aw));
}

double tree_busemann(const EndedTree& t, const std::string& z, const std::string& o,
                     const std::string& p) {
  const std::string& az = t.attach(z);
  return t.vertex_distance(o, az) - t.vertex_distance(p, az);
}

CrValue tree_cr(const EndedTree& t, const std::string& z1, const std::string& w1,
                const std::string& z2, const std::string& w2) {
  for (const auto* e : {&z1, &w1, &z2, &w2})
    if (!t.has_end(*e)) fail(ErrorCode::BadInput, "unknown end id: " + *e);
  const bool diag = (z1 != w1) && (z2 != w2);
  const bool cross = (z1 != w2) && (z2 != w1);
  if (!diag && !cross) fail(ErrorCode::Inadmissible, "quadruple matches no opposite pattern");
  if (!diag) return CrValue::minus_inf();
  if (!cross) return CrValue::plus_inf();
  const std::string& o = t.vertices().front();
  const double v = -tree_gromov(t, z1, w1, o) - tree_gromov(t, z2, w2, o) +
                   tree_gromov(t, z1, w2, o) + tree_gromov(t, z2, w1, o);
  return CrValue::finite_scalar(v);
}

double recover_branch_distance(const EndedTree& t, const std::string& p, const std::string& q) {
  const auto& ends = t.ends();
  const auto through = [&](const std::string& a, const std::string& b, const std::string& at,
                           const std::string& other) {
    // (a,b) joins through `at` when their median with the far vertex is `at`.
    return t.median_vertex(t.attach(a), t.attach(b), other) == at;
  };
  for (size_t i = 0; i < ends.size(); ++i)
    for (size_t j = 0; j < ends.size(); ++j) {
      if (i == j) continue;
      const std::string &z1 = ends[i].first, &w1 = ends[j].first;
      if (!through(z1, w1, p, q)) continue;
      for (size_t k = 0; k < ends.size(); ++k)
        for (size_t l = 0; l < ends.size(); ++l) {
          if (k == l || k == i || k == j || l == i || l == j) continue;
          const std::string &z2 = ends[k].first, &w2 = ends[l].first;
          if (!through(z2, w2, q, p)) continue;
          const CrValue v = tree_cr(t, z1, w2, z2, w1);
          if (v.finite()) return v.scalar;
        }
    }
  fail(ErrorCode::Degenerate, "no end quadruple realizes the branch pair");
}

TreeIsometryReport tree_moebius_extend(const EndedTree& t1, const EndedTree& t2,
                                       const std::map<std::string, std::string>& end_map,
                                       double tol) {
  // The map must be a bijection of the end sets.
  if (end_map.size() != t1.ends().size() || t1.ends().size() != t2.ends().size())
    fail(ErrorCode::BadInput, "end map is not a bijection");
  std::set<std::string> image;
  for (const auto& [a, b] : end_map) {
    if (!t1.has_end(a) || !t2.has_end(b)) fail(ErrorCode::BadInput, "end map references unknown end");
    if (!image.insert(b).second) fail(ErrorCode::BadInput, "end map is not injective");
  }

  std::vector<std::string> eids;
  for (const auto& [eid, vid] : t1.ends()) eids.push_back(eid);
  const size_t m = eids.size();

  TreeIsometryReport rep;
  // Cross-ratio agreement over all ordered quadruples of distinct ends.
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      for (size_t c = 0; c < m; ++c)
        for (size_t d = 0; d < m; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          const CrValue v1 = tree_cr(t1, eids[a], eids[b], eids[c], eids[d]);
          const CrValue v2 = tree_cr(t2, end_map.at(eids[a]), end_map.at(eids[b]),
                                     end_map.at(eids[c]), end_map.at(eids[d]));
          if (v1.kind != v2.kind) {
            rep.max_cr_deviation = 1e300;
          } else if (v1.finite()) {
            rep.max_cr_deviation =
                std::max(rep.max_cr_deviation, std::fabs(v1.scalar - v2.scalar));
          }
        }
  if (rep.max_cr_deviation > tol) {
    std::ostringstream os;
    os << "cross ratios disagree, max deviation " << rep.max_cr_deviation;
    fail(ErrorCode::NotMoebius, os.str());
  }

  // Medians of end triples map to medians of image triples.
  std::map<std::string, std::string> vmap;
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      for (size_t c = b + 1; c < m; ++c) {
        const std::string m1 =
            t1.median_vertex(t1.attach(eids[a]), t1.attach(eids[b]), t1.attach(eids[c]));
        const std::string m2 = t2.median_vertex(t2.attach(end_map.at(eids[a])),
                                                t2.attach(end_map.at(eids[b])),
                                                t2.attach(end_map.at(eids[c])));
        auto it = vmap.find(m1);
        if (it == vmap.end()) {
          vmap[m1] = m2;
        } else if (it->second != m2) {
          fail(ErrorCode::NotExtendable, "median images conflict at vertex " + m1);
        }
      }

  for (const auto& [a, b] : vmap) rep.vertex_map.emplace_back(a, b);

  // Distances between mapped medians must match.
  for (size_t i = 0; i < rep.vertex_map.size(); ++i)
    for (size_t j = i + 1; j < rep.vertex_map.size(); ++j) {
      const double d1 = t1.vertex_distance(rep.vertex_map[i].first, rep.vertex_map[j].first);
      const double d2 = t2.vertex_distance(rep.vertex_map[i].second, rep.vertex_map[j].second);
      rep.max_distance_deviation = std::max(rep.max_distance_deviation, std::fabs(d1 - d2));
      if (d1 > tol) {
        rep.max_stretch = std::max(rep.max_stretch, d2 / d1);
        rep.min_stretch = std::min(rep.min_stretch, d2 / d1);
      }
    }
  if (rep.max_distance_deviation > tol)
    fail(ErrorCode::NotExtendable, "median distances drift beyond tolerance");
  return rep;
}

}  // namespace xr
