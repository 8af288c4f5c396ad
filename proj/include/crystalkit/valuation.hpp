#pragma once

// Exact valuations of the root system X_i^p = (-p)^{eps_{pi(i)}/p} X_{pi(i)}.

#include <map>
#include <string>
#include <vector>

#include "crystalkit/crystal.hpp"
#include "crystalkit/rational.hpp"

namespace crystalkit {

// Q_{i_1}(x) = sum_{j : eps_{i_{j+1}} = 1} x^{q-j-1} / (x^q - 1), applied to
// every cyclic relabelling; keyed by index.
std::map<unsigned, RationalFn> cycle_Q(const std::vector<unsigned>& cycle,
                                       const std::vector<int>& eps_on_cycle);

// Solves p v_i = eps_{pi(i)}/p + v_{pi(i)} around one cycle by Gaussian
// elimination over Q.
std::map<unsigned, Rational> recurrence_valuations(const std::vector<unsigned>& cycle,
                                                   const std::vector<int>& eps_on_cycle,
                                                   std::uint32_t p);

struct ValuationProfile {
  CycleType ctype;
  std::uint32_t p = 0;
  std::map<unsigned, RationalFn> Q;
  std::map<unsigned, Rational> vZ;
  std::map<unsigned, Rational> w;  // eps_i/p + vZ_i
};

// Runs both the closed form and the recurrence; OracleMismatch if they differ.
ValuationProfile valuation_profile(const CycleType& ctype, std::uint32_t p);

// eta_i with pi^{eta_i}(1) = i, for i = 2..q, ordered by i.
std::vector<unsigned> solution_orbit_exponents(const CycleType& ctype);

std::vector<Rational> lubin_tate_w(unsigned r, std::uint32_t p);

struct SumIdentity {
  bool holds = false;
  Rational lhs;         // 1/p + sum_{eta=-1}^{r-2} p^eta/(p^r-1)
  Rational lt_sum;      // sum of lubin_tate_w
  Rational target;      // 1/(p-1)
};
SumIdentity sum_identity(unsigned r, std::uint32_t p);
bool sum_identity_check(unsigned r, std::uint32_t p);

struct Example43Class {
  std::string name;  // "i".."iv"
  std::vector<unsigned> indices;
  int eps = 0;
  Rational derived_vZ;
  Rational derived_w;
  // Exponents as printed in the reference table: the full valuation of the
  // listed element, and its (-p)-power part alone.
  Rational printed_value;
  Rational printed_x;
  bool printed_x_matches = false;  // printed_x == derived_vZ
};

struct Example43Report {
  std::uint32_t p = 0;
  unsigned q0 = 0, q1 = 0, n = 0, m = 0;
  CycleType ctype;
  ValuationProfile profile;
  std::map<unsigned, std::string> class_of;
  std::vector<Example43Class> classes;  // only nonempty classes
  bool slots_uniform = false;           // every index in a class has the same w
  bool all_in_bounds = false;           // 0 <= w <= 1/(p-1)
  bool product_relation_derived = false;   // w(ii) = w(iii) + w(iv)
  bool product_relation_printed = false;   // same relation on printed values
  bool printed_assignment_matches = false;     // printed_x == derived vZ for all classes
  bool transposed_assignment_matches = false;  // holds after swapping (iii) and (iv)
};

// BadShape unless q0 <= n, q1 <= m, n - q0 = m - q1 > 0 and q0 + q1 > 0.
Example43Report example_43_report(std::uint32_t p, unsigned q0, unsigned q1, unsigned n,
                                  unsigned m);
CycleType example_43_cycle_type(unsigned q0, unsigned q1, unsigned n, unsigned m);

}  // namespace crystalkit
