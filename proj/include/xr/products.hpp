// Product spaces: joined types with weights, mixed Gromov products and cross
// ratios across SPD, hyperbolic-plane, tree and flat factors, block-diagonal
// embeddings of SPD products, and recovery of per-factor rescalings from
// Moebius observations.
#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "xr/crossratio.hpp"
#include "xr/rank1.hpp"

namespace xr {

struct ProductSpace {
  struct Factor {
    enum class Kind { spd, h2, tree, flat } kind = Kind::spd;
    int n = 0;                        // spd: matrix size, flat: dimension
    std::shared_ptr<EndedTree> tree;  // tree factor
  };
  std::vector<Factor> factors;
};

// Join data: per-factor type handle (a TypeVector for SPD factors, "point"
// for rank-one and flat factors) and the weight vector mu with sum of
// squares one. Factors with weight zero are inactive.
struct ProductType {
  std::vector<std::optional<TypeVector>> factor_types;
  std::vector<double> weights;

  ProductType(std::vector<std::optional<TypeVector>> types, std::vector<double> mu);
  bool active(size_t i) const { return weights[i] > 0.0; }
};

struct SpdBoundary {
  Flag flag;
  TypeVector type;
};
struct FlatBoundary {
  std::vector<double> dir;  // unit vector
};
using FactorBoundary = std::variant<SpdBoundary, DiscBoundaryPoint, std::string /*tree end*/,
                                    FlatBoundary>;

struct ProductBoundaryPoint {
  std::vector<FactorBoundary> parts;
};

// Per-factor basepoints: SPD factors take a point, tree factors a vertex id,
// the disc factor is pinned at its center and the flat at its origin.
struct ProductBasepoint {
  std::vector<std::optional<SpdPoint>> spd;
  std::vector<std::optional<std::string>> tree_vertex;

  static ProductBasepoint defaults(const ProductSpace& space);
};

// Weighted sum of the factor Gromov products; plus_inf as soon as one active
// factor degenerates. Throws ArityMismatch.
CrValue product_gromov(const ProductSpace& space, const ProductBoundaryPoint& x,
                       const ProductBoundaryPoint& y, const ProductType& pt,
                       const ProductBasepoint& base);

struct ProductQuadruple {
  ProductBoundaryPoint x, y, z, w;
};

// Weighted sum of the factor cross ratios with the admissibility conventions
// applied at the product level (a pair is opposite iff it is opposite in
// every active factor).
CrValue product_cr(const ProductSpace& space, const ProductQuadruple& q, const ProductType& pt,
                   const ProductBasepoint& base);
CrValue product_cr(const ProductSpace& space, const ProductQuadruple& q, const ProductType& pt);

// Block-diagonal embedding of a pair of SPD factors into P_{n1+n2}.
// For weights mu the embedded direction has block norms nu_i =
// mu_i / (n_i kappa) with kappa = sqrt(sum mu_i^2 / n_i^2), and the ambient
// cross ratio decomposes as sum_i nu_i (n / n_i) cr_i. The helpers build the
// embedded type/flag data and report those induced coefficients.
struct BlockEmbedding {
  TypeVector type;            // ambient type of the embedded direction
  std::vector<double> block_norms;   // nu_i
  std::vector<double> cr_coefficients;  // nu_i * n / n_i
};
BlockEmbedding block_embedding(int n1, int n2, const TypeVector& t1, const TypeVector& t2,
                               const std::vector<double>& mu);
Flag embed_block_flag(int n1, int n2, const Flag& f1, const Flag& f2, const TypeVector& t1,
                      const TypeVector& t2, const std::vector<double>& mu);

// Factor-split recovery from Moebius observations. Domain data are raw
// per-factor cross ratios; image data are aggregate product cross ratios
// observed across several image product types, once for the base quadruples
// and once per single-factor sign flip (x and z of that factor swapped).
// The flip isolates each factor's image contribution; the weight profile
// across the image product types identifies the permutation slot, and the
// proportionality against the domain values yields the rescaling ratio
// mu2^{s(i)} / mu1^i. Throws Ambiguous / Inconsistent.
struct SplitSamples {
  std::vector<std::vector<double>> domain_raw;           // [sample][factor]
  std::vector<double> domain_weights;                    // mu1
  std::vector<std::vector<double>> image_weight_sets;    // [set][factor]
  // observed[set][sample][0] = base aggregate; [1 + i] = factor-i flipped
  std::vector<std::vector<std::vector<double>>> observed;
};
struct SplitRecovery {
  std::vector<int> permutation;  // s(i), zero-based
  std::vector<double> ratios;    // mu2^{s(i)} / mu1^i
};
SplitRecovery factor_split_recover(const SplitSamples& samples,
                                   const std::vector<std::vector<int>>& candidates,
                                   double tol = 1e-8);
std::vector<std::vector<int>> all_permutations(int k);

}  // namespace xr
