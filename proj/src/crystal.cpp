#include "crystalkit/crystal.hpp"

#include <algorithm>

namespace crystalkit {

CycleType::CycleType(std::vector<std::vector<unsigned>> cycles, std::vector<int> eps)
    : cycles_(std::move(cycles)), eps_(std::move(eps)) {
  const std::size_t d = eps_.size();
  require(d >= 1, ErrorCode::BadShape, "cycle type needs rank >= 1");
  for (int e : eps_) require(e == 0 || e == 1, ErrorCode::BadShape, "eps entries must be 0 or 1");
  pi_.assign(d, 0);
  cycle_of_.assign(d, 0);
  std::vector<bool> seen(d, false);
  for (std::size_t c = 0; c < cycles_.size(); ++c) {
    const auto& cyc = cycles_[c];
    require(!cyc.empty(), ErrorCode::BadShape, "empty cycle");
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      const unsigned i = cyc[j];
      require(i >= 1 && i <= d, ErrorCode::BadShape, "cycle index out of range");
      require(!seen[i - 1], ErrorCode::BadShape, "index repeated across cycles");
      seen[i - 1] = true;
      pi_[i - 1] = cyc[(j + 1) % cyc.size()];
      cycle_of_[i - 1] = c;
    }
  }
  require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), ErrorCode::BadShape,
          "cycles do not cover every index");
}

unsigned CycleType::hodge_rank() const {
  return static_cast<unsigned>(std::count(eps_.begin(), eps_.end(), 1));
}

Polygon normalize_polygon(Polygon pts) {
  std::sort(pts.begin(), pts.end(),
            [](const PolygonPoint& a, const PolygonPoint& b) { return a.slope < b.slope; });
  Polygon out;
  for (auto& pt : pts) {
    if (pt.mult == 0) continue;
    if (!out.empty() && out.back().slope == pt.slope) {
      out.back().mult += pt.mult;
    } else {
      out.push_back(pt);
    }
  }
  return out;
}

namespace {

// Height of the polygon after x unit steps, slopes taken in ascending order.
std::vector<mpq_class> heights(const Polygon& poly) {
  std::vector<mpq_class> h{0};
  for (const auto& pt : poly) {
    for (unsigned k = 0; k < pt.mult; ++k) h.push_back(h.back() + pt.slope);
  }
  return h;
}

}  // namespace

bool polygon_lies_above(const Polygon& upper, const Polygon& lower) {
  auto hu = heights(normalize_polygon(upper));
  auto hl = heights(normalize_polygon(lower));
  if (hu.size() != hl.size() || hu.back() != hl.back()) return false;
  for (std::size_t i = 0; i < hu.size(); ++i) {
    if (hu[i] < hl[i]) return false;
  }
  return true;
}

StdModule standard_module(std::uint32_t p, unsigned m, const CycleType& ctype, Field field) {
  require(field->p() == p, ErrorCode::IncompatibleFields, "field characteristic differs from p");
  StdModule mod;
  mod.p = p;
  mod.m = m;
  mod.field = field;
  mod.ctype = ctype;
  const unsigned d = ctype.rank();
  mod.phi = wzero(field, m, d, d);
  const WittVector pw = WittVector::from_integer(field, m, p);
  for (unsigned i = 1; i <= d; ++i) {
    mod.phi[ctype.pi(i) - 1][i - 1] = ctype.eps(i) ? pw : WittVector::one(field, m);
  }
  mod.hodge_rank = ctype.hodge_rank();
  return mod;
}

WMatrix StdModule::divided_phi() const {
  const unsigned d = ctype.rank();
  WMatrix out = wzero(field, m, d, d);
  for (unsigned i = 1; i <= d; ++i) out[ctype.pi(i) - 1][i - 1] = WittVector::one(field, m);
  return out;
}

Polygon newton_polygon(const CycleType& ctype) {
  Polygon pts;
  for (const auto& cyc : ctype.cycles()) {
    long w = 0;
    for (unsigned i : cyc) w += ctype.eps(i);
    mpq_class s(w, static_cast<long>(cyc.size()));
    s.canonicalize();
    pts.push_back({s, static_cast<unsigned>(cyc.size())});
  }
  return normalize_polygon(pts);
}

Polygon newton_polygon(const StdModule& mod) { return newton_polygon(mod.ctype); }

Polygon hodge_polygon(const StdModule& mod) {
  const unsigned ones = mod.ctype.hodge_rank();
  return normalize_polygon({{mpq_class(0), mod.ctype.rank() - ones}, {mpq_class(1), ones}});
}

std::vector<Summand> slope_decomposition(const StdModule& mod) {
  std::vector<Summand> parts;
  for (const auto& cyc : mod.ctype.cycles()) {
    std::vector<unsigned> local(cyc.size());
    std::vector<int> eps;
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      local[j] = static_cast<unsigned>(j + 1);
      eps.push_back(mod.ctype.eps(cyc[j]));
    }
    CycleType ct({local}, eps);
    parts.push_back({standard_module(mod.p, mod.m, ct, mod.field), cyc});
  }
  return parts;
}

WMatrix direct_sum_phi(const std::vector<Summand>& parts, unsigned rank) {
  require(!parts.empty(), ErrorCode::BadShape, "empty decomposition");
  const auto& first = parts[0].module;
  WMatrix out = wzero(first.field, first.m, rank, rank);
  for (const auto& part : parts) {
    const auto& idx = part.indices;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) out[idx[i] - 1][idx[j] - 1] = part.module.phi[i][j];
    }
  }
  return out;
}

bool has_slopes_0_and_1(const StdModule& mod) {
  bool zero = false, one = false;
  for (const auto& pt : newton_polygon(mod)) {
    if (pt.slope == 0 && pt.mult > 0) zero = true;
    if (pt.slope == 1 && pt.mult > 0) one = true;
  }
  return zero && one;
}

LatticeReport check_lattice_axioms(const WMatrix& phi, const WMatrix& divided,
                                   const std::vector<int>& eps) {
  LatticeReport rep;
  const std::size_t d = phi.size();
  require(d == eps.size() && divided.size() == d, ErrorCode::BadShape, "lattice check shapes");
  rep.elementary_exponents = elementary_divisor_exponents(phi);
  const unsigned m = phi[0][0].precision();
  // pM inside phi(M) iff every elementary divisor divides p; at precision 1
  // pM = 0 and the condition is vacuous.
  rep.p_m_in_image = m == 1 || std::all_of(rep.elementary_exponents.begin(),
                                           rep.elementary_exponents.end(),
                                           [](unsigned e) { return e <= 1; });
  rep.divided_consistent = true;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      const WittVector expect = eps[j] ? times_p(divided[i][j]) : divided[i][j];
      if (expect != phi[i][j]) rep.divided_consistent = false;
    }
  }
  rep.divided_surjective = rank(reduce_mod_p(divided)) == d;
  return rep;
}

LatticeReport check_lattice_axioms(const WMatrix& phi, const std::vector<int>& eps) {
  const std::size_t d = phi.size();
  require(d > 0, ErrorCode::BadShape, "empty matrix");
  require(phi[0][0].precision() >= 2, ErrorCode::PrecisionLimit,
          "dividing by p needs precision >= 2");
  WMatrix divided = phi;
  for (std::size_t j = 0; j < d; ++j) {
    if (!eps[j]) continue;
    for (std::size_t i = 0; i < d; ++i) {
      if (!phi[i][j][0].is_zero()) {
        LatticeReport rep;
        rep.elementary_exponents = elementary_divisor_exponents(phi);
        return rep;  // column not divisible by p
      }
      divided[i][j] = divide_by_p(phi[i][j]);
    }
  }
  return check_lattice_axioms(phi, divided, eps);
}

LatticeReport check_lattice_axioms(const StdModule& mod) {
  return check_lattice_axioms(mod.phi, mod.divided_phi(), mod.ctype.eps());
}

}  // namespace crystalkit
