#include "crystalkit/valuation.hpp"

#include <numeric>

#include "crystalkit/error.hpp"

namespace crystalkit {

namespace {

void check_cycle(const std::vector<unsigned>& cycle, const std::vector<int>& eps) {
  require(!cycle.empty() && cycle.size() == eps.size(), ErrorCode::BadShape,
          "cycle and eps lengths differ");
  for (int e : eps) require(e == 0 || e == 1, ErrorCode::BadShape, "eps entries must be 0 or 1");
}

Rational pow_rat(std::uint32_t p, long e) {
  mpz_class a;
  mpz_ui_pow_ui(a.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
  Rational r = e < 0 ? Rational(1, a) : Rational(a);
  r.canonicalize();
  return r;
}

}  // namespace

std::map<unsigned, RationalFn> cycle_Q(const std::vector<unsigned>& cycle,
                                       const std::vector<int>& eps_on_cycle) {
  check_cycle(cycle, eps_on_cycle);
  const std::size_t q = cycle.size();
  // Multiply through by x: numerator sum x^{q-j}, denominator x(x^q - 1).
  ZPoly den(q + 2, 0);
  den[q + 1] = 1;
  den[1] = -1;
  std::map<unsigned, RationalFn> out;
  for (std::size_t start = 0; start < q; ++start) {
    ZPoly num(q + 1, 0);
    for (std::size_t j = 1; j <= q; ++j) {
      if (eps_on_cycle[(start + j) % q] == 1) num[q - j] += 1;
    }
    out.emplace(cycle[start], RationalFn(num, den));
  }
  return out;
}

std::map<unsigned, Rational> recurrence_valuations(const std::vector<unsigned>& cycle,
                                                   const std::vector<int>& eps_on_cycle,
                                                   std::uint32_t p) {
  check_cycle(cycle, eps_on_cycle);
  require(is_prime(p), ErrorCode::NotPrime, "p must be prime");
  const std::size_t q = cycle.size();
  // Row j: p v_j - v_{j+1} = eps_{j+1}/p.
  std::vector<std::vector<Rational>> a(q, std::vector<Rational>(q + 1, 0));
  for (std::size_t j = 0; j < q; ++j) {
    a[j][j] += p;
    a[j][(j + 1) % q] -= 1;
    a[j][q] = Rational(eps_on_cycle[(j + 1) % q], p);
  }
  for (std::size_t c = 0; c < q; ++c) {
    std::size_t piv = c;
    while (piv < q && a[piv][c] == 0) ++piv;
    require(piv < q, ErrorCode::OracleMismatch, "singular recurrence");
    std::swap(a[c], a[piv]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < q; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = c; k <= q; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::map<unsigned, Rational> out;
  for (std::size_t j = 0; j < q; ++j) {
    Rational v = a[j][q];
    v.canonicalize();
    out.emplace(cycle[j], v);
  }
  return out;
}

ValuationProfile valuation_profile(const CycleType& ctype, std::uint32_t p) {
  require(is_prime(p), ErrorCode::NotPrime, "p must be prime");
  ValuationProfile prof;
  prof.ctype = ctype;
  prof.p = p;
  for (const auto& cyc : ctype.cycles()) {
    std::vector<int> e;
    for (unsigned i : cyc) e.push_back(ctype.eps(i));
    auto Q = cycle_Q(cyc, e);
    auto rec = recurrence_valuations(cyc, e, p);
    for (unsigned i : cyc) {
      Rational v = Q.at(i).evaluate(Rational(p));
      require(v == rec.at(i), ErrorCode::OracleMismatch,
              "closed form and recurrence disagree at index " + std::to_string(i));
      prof.Q.emplace(i, Q.at(i));
      prof.vZ.emplace(i, v);
      Rational w = Rational(ctype.eps(i), p) + v;
      w.canonicalize();
      prof.w.emplace(i, w);
    }
  }
  return prof;
}

std::vector<unsigned> solution_orbit_exponents(const CycleType& ctype) {
  require(ctype.cycles().size() == 1, ErrorCode::NotACycle, "permutation is not a single cycle");
  const unsigned q = ctype.rank();
  std::vector<unsigned> eta(q + 1, 0);
  unsigned cur = 1;
  for (unsigned k = 1; k < q; ++k) {
    cur = ctype.pi(cur);
    eta[cur] = k;
  }
  return std::vector<unsigned>(eta.begin() + 2, eta.end());
}

std::vector<Rational> lubin_tate_w(unsigned r, std::uint32_t p) {
  require(r >= 1, ErrorCode::BadShape, "r must be >= 1");
  require(is_prime(p), ErrorCode::NotPrime, "p must be prime");
  const Rational den = pow_rat(p, r) - 1;
  std::vector<Rational> w;
  Rational first = Rational(1, p) + pow_rat(p, -1) / den;
  first.canonicalize();
  w.push_back(first);
  for (unsigned i = 2; i <= r; ++i) {
    Rational v = pow_rat(p, static_cast<long>(i) - 2) / den;
    v.canonicalize();
    w.push_back(v);
  }
  return w;
}

SumIdentity sum_identity(unsigned r, std::uint32_t p) {
  SumIdentity s;
  const Rational den = pow_rat(p, r) - 1;
  s.lhs = Rational(1, p);
  for (long eta = -1; eta <= static_cast<long>(r) - 2; ++eta) s.lhs += pow_rat(p, eta) / den;
  s.lhs.canonicalize();
  const auto w = lubin_tate_w(r, p);
  s.lt_sum = std::accumulate(w.begin(), w.end(), Rational(0));
  s.lt_sum.canonicalize();
  s.target = Rational(1, p - 1);
  s.target.canonicalize();
  Rational mid = Rational(1, p) + Rational(1, p * (p - 1));
  mid.canonicalize();
  s.holds = s.lhs == mid && mid == s.target && s.lt_sum == s.target;
  return s;
}

bool sum_identity_check(unsigned r, std::uint32_t p) { return sum_identity(r, p).holds; }

CycleType example_43_cycle_type(unsigned q0, unsigned q1, unsigned n, unsigned m) {
  require(q0 <= n && q1 <= m && n - q0 == m - q1 && n > q0 && q0 + q1 > 0, ErrorCode::BadShape,
          "need q0 <= n, q1 <= m, n - q0 = m - q1 > 0 and q0 + q1 > 0");
  const unsigned total = n + m;
  std::vector<std::vector<unsigned>> cycles;
  std::vector<int> eps(total, 0);
  for (unsigned i = n + 1; i <= total; ++i) eps[i - 1] = 1;
  for (unsigned i = 1; i <= q0; ++i) cycles.push_back({i});
  for (unsigned s = 1; s <= n - q0; ++s) cycles.push_back({q0 + s, total + 1 - q1 - s});
  for (unsigned i = total + 1 - q1; i <= total; ++i) cycles.push_back({i});
  return CycleType(cycles, eps);
}

Example43Report example_43_report(std::uint32_t p, unsigned q0, unsigned q1, unsigned n,
                                  unsigned m) {
  Example43Report rep;
  rep.p = p;
  rep.q0 = q0;
  rep.q1 = q1;
  rep.n = n;
  rep.m = m;
  rep.ctype = example_43_cycle_type(q0, q1, n, m);
  rep.profile = valuation_profile(rep.ctype, p);
  const unsigned total = n + m;
  const Rational P = p;
  const Rational p2m1 = P * P - 1;

  struct Spec {
    const char* name;
    unsigned lo, hi;  // inclusive, 1-based; empty when lo > hi
    int eps;
    Rational printed_value, printed_x;
  };
  const Spec specs[] = {
      {"i", 1, q0, 0, 0, 0},
      {"ii", total + 1 - q1, total, 1, 1 / (P * (P - 1)), 1 / (P * (P - 1))},
      {"iii", q0 + 1, n, 0, 1 / (P * p2m1), 1 / (P * p2m1)},
      {"iv", n + 1, total - q1, 1, 1 / p2m1 + 1 / P, 1 / p2m1},
  };

  // Reference values from standalone shapes, used when a class is empty.
  const auto fixed1 = valuation_profile(CycleType({{1}}, {1}), p);
  const auto pair = valuation_profile(CycleType({{1, 2}}, {0, 1}), p);
  const Rational ref_w[] = {0, fixed1.w.at(1), pair.w.at(1), pair.w.at(2)};
  const Rational ref_vZ[] = {0, fixed1.vZ.at(1), pair.vZ.at(1), pair.vZ.at(2)};

  rep.slots_uniform = true;
  rep.all_in_bounds = true;
  const Rational bound = Rational(1, p - 1);
  for (const auto& [i, w] : rep.profile.w) {
    if (w < 0 || w > bound) rep.all_in_bounds = false;
  }
  Rational w_of[4], printed_of[4], printed_x_of[4];
  bool direct = true, swapped = true;
  for (int c = 0; c < 4; ++c) {
    const Spec& s = specs[c];
    Rational pv = s.printed_value, px = s.printed_x;
    pv.canonicalize();
    px.canonicalize();
    printed_of[c] = pv;
    printed_x_of[c] = px;
    w_of[c] = ref_w[c];
    if (s.lo > s.hi || s.hi == 0) continue;
    Example43Class cls;
    cls.name = s.name;
    cls.eps = s.eps;
    cls.printed_value = pv;
    cls.printed_x = px;
    for (unsigned i = s.lo; i <= s.hi; ++i) {
      cls.indices.push_back(i);
      rep.class_of[i] = s.name;
      if (rep.ctype.eps(i) != s.eps) rep.slots_uniform = false;
    }
    cls.derived_vZ = rep.profile.vZ.at(cls.indices.front());
    cls.derived_w = rep.profile.w.at(cls.indices.front());
    for (unsigned i : cls.indices) {
      if (rep.profile.w.at(i) != cls.derived_w) rep.slots_uniform = false;
    }
    if (cls.derived_w != ref_w[c] || cls.derived_vZ != ref_vZ[c]) rep.slots_uniform = false;
    cls.printed_x_matches = cls.printed_x == cls.derived_vZ;
    rep.classes.push_back(std::move(cls));
  }
  for (int c = 0; c < 4; ++c) {
    if (printed_x_of[c] != ref_vZ[c]) direct = false;
    const int t = c == 2 ? 3 : c == 3 ? 2 : c;
    if (printed_x_of[c] != ref_vZ[t]) swapped = false;
  }
  rep.product_relation_derived = w_of[1] == w_of[2] + w_of[3];
  rep.product_relation_printed = printed_of[1] == printed_of[2] + printed_of[3];
  rep.printed_assignment_matches = direct;
  rep.transposed_assignment_matches = swapped;
  return rep;
}

}  // namespace crystalkit
