// Auditing candidate boundary maps on full flag spaces: cross-ratio
// preservation, opposition preservation, and injectivity witnesses built the
// way the separation argument prescribes. Report-based: audits never throw
// on a negative verdict, only on malformed input.
#pragma once

#include <cstdint>
#include <string>

#include "xr/crossratio.hpp"

namespace xr {

struct SampledMap {
  std::vector<Flag> domain;
  std::vector<Flag> image;
  std::string provenance;  // "matrix" | "permutation" | "table"
  // Cross ratios on the codomain are scaled by this factor (a codomain with
  // metric c * d has cross ratios c times the raw ones).
  double codomain_scale = 1.0;
};

struct MoebiusReport {
  double max_deviation = 0.0;
  int quadruples = 0;       // admissibility-matched quadruples compared
  int mismatches = 0;       // quadruples whose admissibility class changed
  bool moebius = false;
  double threshold = 0.0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

// Compares cr over quadruples of sample indices; exhaustive when the sample
// has at most 8 flags, otherwise `budget` random draws from the seed.
MoebiusReport check_moebius(const SampledMap& f, const TypeVector& xi, int budget,
                            std::uint64_t seed = 42, double threshold = 1e-7);

struct OppositionReport {
  std::vector<std::pair<int, int>> violations;  // sample index pairs
};
OppositionReport check_opposition_preserving(const SampledMap& f);

// For x != y with f(x) = f(y): builds a with a opposite x but not y (the
// apartment-opposite of x in a common apartment of x and y), plus z, w, and
// returns the quadruple pair whose cross ratios cannot both be preserved.
// Flags z, w are searched in the domain sample first; CannotSeparate when
// the sample cannot realize them.
struct InjectivityWitness {
  Flag a, z, w;
  CrValue cr_x;  // cr(x, a, z, w): finite
  CrValue cr_y;  // cr(y, a, z, w): minus_inf (or inadmissible, flagged here)
  bool y_inadmissible = false;
};
InjectivityWitness injectivity_witness(const SampledMap& f, int x_index, int y_index);

}  // namespace xr
