#pragma once

// Cycle-type Dieudonne modules phi(a_i) = p^{eps_i} a_{pi(i)}.

#include <gmpxx.h>

#include <vector>

#include "crystalkit/witt_linalg.hpp"

namespace crystalkit {

class CycleType {
 public:
  CycleType() = default;
  // Indices are 1-based; cycle (i_1,...,i_q) means pi(i_j) = i_{j+1}.
  CycleType(std::vector<std::vector<unsigned>> cycles, std::vector<int> eps);

  unsigned rank() const { return static_cast<unsigned>(eps_.size()); }
  const std::vector<std::vector<unsigned>>& cycles() const { return cycles_; }
  const std::vector<int>& eps() const { return eps_; }
  int eps(unsigned i) const { return eps_[i - 1]; }
  unsigned pi(unsigned i) const { return pi_[i - 1]; }
  unsigned hodge_rank() const;
  // Index of the cycle containing i.
  std::size_t cycle_of(unsigned i) const { return cycle_of_[i - 1]; }

  bool operator==(const CycleType& o) const { return cycles_ == o.cycles_ && eps_ == o.eps_; }

 private:
  std::vector<std::vector<unsigned>> cycles_;
  std::vector<int> eps_;
  std::vector<unsigned> pi_;
  std::vector<std::size_t> cycle_of_;
};

struct PolygonPoint {
  mpq_class slope;
  unsigned mult;
  bool operator==(const PolygonPoint& o) const { return slope == o.slope && mult == o.mult; }
};
using Polygon = std::vector<PolygonPoint>;

// Sort by slope and merge equal slopes.
Polygon normalize_polygon(Polygon pts);
bool polygon_lies_above(const Polygon& upper, const Polygon& lower);

struct StdModule {
  std::uint32_t p = 0;
  unsigned m = 0;
  Field field = nullptr;
  CycleType ctype;
  WMatrix phi;  // column i is phi(a_i)
  unsigned hodge_rank = 0;

  // phi on eps = 0 columns and phi_1 = phi/p on eps = 1 columns.
  WMatrix divided_phi() const;
};

StdModule standard_module(std::uint32_t p, unsigned m, const CycleType& ctype, Field field);

Polygon newton_polygon(const CycleType& ctype);
Polygon newton_polygon(const StdModule& mod);
Polygon hodge_polygon(const StdModule& mod);

struct Summand {
  StdModule module;
  std::vector<unsigned> indices;  // original index of each summand basis vector
};
std::vector<Summand> slope_decomposition(const StdModule& mod);
// Reassemble the block-diagonal phi from summands in original indexing.
WMatrix direct_sum_phi(const std::vector<Summand>& parts, unsigned rank);

// Fixed-Frobenius version of the slopes-0-and-1 condition.
bool has_slopes_0_and_1(const StdModule& mod);

struct LatticeReport {
  bool p_m_in_image = false;     // pM inside phi(M)
  bool divided_surjective = false;  // phi(M + p^{-1}F^1) = M
  bool divided_consistent = false;  // p * phi_1 == phi on F^1 columns
  std::vector<unsigned> elementary_exponents;
  bool ok() const { return p_m_in_image && divided_surjective && divided_consistent; }
};

// divided holds phi columns for eps = 0 and phi_1 columns for eps = 1.
LatticeReport check_lattice_axioms(const WMatrix& phi, const WMatrix& divided,
                                   const std::vector<int>& eps);
// Derives phi_1 by dividing columns by p; needs precision >= 2.
LatticeReport check_lattice_axioms(const WMatrix& phi, const std::vector<int>& eps);
LatticeReport check_lattice_axioms(const StdModule& mod);

}  // namespace crystalkit
