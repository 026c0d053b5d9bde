// Rank-one models: the hyperbolic plane in the disc model with the classical
// cross ratio, and finite metric trees with marked ends. Ends are markers on
// vertices standing for pairwise-diverging rays; every quantity in scope
// depends only on the finite subtree they span, so all products reduce to
// path arithmetic.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "xr/crossratio.hpp"

namespace xr {

// Boundary point of the disc model, angle canonicalized to [0, 2 pi).
struct DiscBoundaryPoint {
  double angle = 0.0;
  explicit DiscBoundaryPoint(double a);
};

// Gromov product at the disc center: -log(chord / 2). Throws CoincidentPoints.
double h2_gromov(const DiscBoundaryPoint& x, const DiscBoundaryPoint& y);

// Additive cross ratio log(|x-y||z-w| / (|x-w||z-y|)) and its multiplicative
// (chordal, positive) counterpart. Throws Degenerate when a needed chord
// vanishes.
double h2_cr(const DiscBoundaryPoint& x, const DiscBoundaryPoint& y, const DiscBoundaryPoint& z,
             const DiscBoundaryPoint& w);
double h2_cr_mult(const DiscBoundaryPoint& x, const DiscBoundaryPoint& y,
                  const DiscBoundaryPoint& z, const DiscBoundaryPoint& w);

class EndedTree {
 public:
  struct Edge {
    std::string u, v;
    double length;
  };

  EndedTree(std::vector<std::string> vertices, std::vector<Edge> edges,
            std::vector<std::pair<std::string, std::string>> ends);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<std::string, std::string>>& ends() const { return ends_; }

  bool has_vertex(const std::string& id) const;
  bool has_end(const std::string& id) const;
  const std::string& attach(const std::string& end_id) const;

  double vertex_distance(const std::string& a, const std::string& b) const;
  // Meeting vertex of the three pairwise paths.
  std::string median_vertex(const std::string& a, const std::string& b,
                            const std::string& c) const;

  // Scale every edge length; the boundary cross ratio scales along.
  EndedTree rescaled(double factor) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::string, std::string>> ends_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, std::string> end_attach_;
  std::vector<std::vector<double>> dist_;
};

// Gromov product of two ends at a vertex basepoint: the distance from the
// basepoint to the line joining the ends. Throws SameEnd.
double tree_gromov(const EndedTree& t, const std::string& z, const std::string& w,
                   const std::string& o);

// Busemann function toward an end, evaluated along its ray.
double tree_busemann(const EndedTree& t, const std::string& z, const std::string& o,
                     const std::string& p);

// Extended-real cross ratio of four ends; basepoint independent. Infinite
// values follow the opposition conventions (ends are opposite iff distinct).
CrValue tree_cr(const EndedTree& t, const std::string& z1, const std::string& w1,
                const std::string& z2, const std::string& w2);

// Recover the distance of two branch vertices from a cross ratio: searches
// end pairs joined through p and through q and evaluates the alternating
// arrangement. Throws Degenerate when no realizing quadruple exists.
double recover_branch_distance(const EndedTree& t, const std::string& p, const std::string& q);

// Constructive extension of a boundary Moebius bijection to an isometry of
// the median-spanned cores. Checks cross-ratio agreement on all quadruples
// first (NotMoebius, deviation in the message, when it fails), then rebuilds
// the vertex map from end-triple medians and verifies pairwise distances
// (NotExtendable on conflict; cannot fire once the Moebius check passed).
struct TreeIsometryReport {
  std::vector<std::pair<std::string, std::string>> vertex_map;
  double max_cr_deviation = 0.0;
  double max_distance_deviation = 0.0;
  // Largest and smallest observed image/domain ratio over mapped vertex
  // pairs; both 1 for an honest isometry.
  double max_stretch = 1.0;
  double min_stretch = 1.0;
};
TreeIsometryReport tree_moebius_extend(const EndedTree& t1, const EndedTree& t2,
                                       const std::map<std::string, std::string>& end_map,
                                       double tol = 1e-9);

}  // namespace xr
