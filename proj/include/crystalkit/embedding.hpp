#pragma once

// Embeddings of cycle-type modules into sums of tensor powers of the
// Lubin-Tate module of rank r.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crystalkit/crystal.hpp"

namespace crystalkit {

// Lubin-Tate module: cycle (1,...,r), eps = (1,0,...,0).
StdModule lubin_tate_module(std::uint32_t p, unsigned m, unsigned r, Field field);

struct TensorKey {
  unsigned weight = 0;          // tensor degree; 0 for a unit copy
  std::vector<unsigned> idx;    // 1-based factor indices in 1..r
  int unit = -1;                // unit-object copy id, or -1

  bool operator<(const TensorKey& o) const {
    if (weight != o.weight) return weight < o.weight;
    if (unit != o.unit) return unit < o.unit;
    return idx < o.idx;
  }
  bool operator==(const TensorKey& o) const {
    return weight == o.weight && unit == o.unit && idx == o.idx;
  }
  std::string str() const;
};

using TensorImage = std::map<TensorKey, WittVector>;

struct EmbeddingClass {
  unsigned q = 0;
  std::vector<int> eps_pattern;       // of the first cycle as listed
  unsigned weight = 0;                // number of eps = 1 entries
  unsigned tensor_weight = 0;         // (r/q) * weight
  std::vector<unsigned> s_list;       // 1-based positions with eps = 1
  std::vector<long> l_list;           // raw values r+2-s_d+(r-q)i
  std::vector<std::vector<unsigned>> cycles;  // rotated to match eps_pattern
  std::vector<int> u_pattern;         // u(s) from the index congruence
  std::vector<unsigned> orbit_key;    // least cyclic shift of l_list mod r
  bool etale = false;
  std::vector<int> unit_copies;       // first unit copy of each cycle (etale only)
  // r/q scalars for weight > 0 (first cycles(). size() used), or an F_p-basis
  // of F_{p^q} for etale classes.
  std::vector<FFElement> zetas;
};

struct EmbeddingParameters {
  unsigned o_pi = 0, n_pi = 0, r_min = 0;
  unsigned r = 0;
  // Smallest multiple of r_min whose tensor orbits can host every class.
  unsigned r_admissible = 0;
  std::vector<EmbeddingClass> classes;
};

// Index data for the given r (r_min when omitted); scalars left empty.
EmbeddingParameters embedding_parameters(const CycleType& ctype,
                                         std::optional<unsigned> r = std::nullopt);

struct EmbeddingPlan {
  StdModule source;
  EmbeddingParameters params;
  std::vector<TensorImage> images;  // image of a_i at position i-1
};

// r defaults to r_admissible. BadR when r is not a multiple of r_min or a
// tensor orbit is over capacity; FieldTooSmall when the scalars do not fit.
EmbeddingPlan build_embedding(const StdModule& src, std::optional<unsigned> r = std::nullopt);

// Images recomputed from the plan's scalars.
std::vector<TensorImage> embedding_images(const EmbeddingPlan& plan);

// phi on the target: factor a_1 picks up p, every index shifts by one;
// unit copies are fixed up to sigma.
TensorImage target_phi(const TensorImage& x, unsigned r);

struct EmbeddingReport {
  bool equivariant = false;
  bool filtration = false;
  bool injective = false;
  bool projector = false;
  bool u_pattern = false;      // u(s) = 1 exactly at s_list
  bool l_distinct = false;     // l_list distinct mod r
  bool supports_disjoint = false;  // classes in different orbits share no tensors
  unsigned image_rank = 0;
  std::vector<std::pair<std::size_t, std::size_t>> shared_orbits;  // class pairs
  std::vector<std::string> failures;
  WMatrix projector_matrix;    // c o L over the support keys
  std::vector<TensorKey> support;
  bool ok() const {
    return equivariant && filtration && injective && projector && u_pattern && l_distinct &&
           supports_disjoint && failures.empty();
  }
};

// Never throws; errors are recorded as failures.
EmbeddingReport verify_embedding(const EmbeddingPlan& plan);

}  // namespace crystalkit
