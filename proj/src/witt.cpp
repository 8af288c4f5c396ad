#include "crystalkit/witt.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>

namespace crystalkit {

// ---------------------------------------------------------------- IntPoly

namespace {

constexpr std::uint32_t kExpBits = 24;
constexpr std::uint32_t kExpMask = (1U << kExpBits) - 1;

IntPoly::Monomial mono_mul(const IntPoly::Monomial& a, const IntPoly::Monomial& b) {
  IntPoly::Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && (a[i] >> kExpBits) < (b[j] >> kExpBits))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || (b[j] >> kExpBits) < (a[i] >> kExpBits)) {
      out.push_back(b[j++]);
    } else {
      const std::uint32_t e = (a[i] & kExpMask) + (b[j] & kExpMask);
      require(e <= kExpMask, ErrorCode::PrecisionLimit, "Witt exponent overflow");
      out.push_back((a[i] & ~kExpMask) | e);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

IntPoly IntPoly::constant(long v) {
  IntPoly p;
  if (v != 0) p.terms_[{}] = v;
  return p;
}

IntPoly IntPoly::variable(std::uint32_t var) {
  IntPoly p;
  p.terms_[{(var << kExpBits) | 1U}] = 1;
  return p;
}

void IntPoly::add_term(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  IntPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  IntPoly r;
  mpz_class prod;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      prod = ca * cb;
      r.add_term(mono_mul(ma, mb), prod);
    }
  }
  return r;
}

IntPoly IntPoly::scaled(const mpz_class& c) const {
  IntPoly r;
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result = constant(1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

IntPoly IntPoly::divided(const mpz_class& c) const {
  IntPoly r;
  for (const auto& [m, v] : terms_) {
    if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t())) {
      fail(ErrorCode::OracleMismatch, "Witt recursion produced a non-divisible coefficient");
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    r.terms_.emplace(m, q);
  }
  return r;
}

IntPoly ghost_polynomial(std::uint32_t p, unsigned k, bool y_side) {
  IntPoly w;
  mpz_class pj = 1;
  for (unsigned j = 0; j <= k; ++j) {
    unsigned e = 1;
    for (unsigned t = j; t < k; ++t) e *= p;
    IntPoly v = IntPoly::variable(y_side ? witt_y(j) : witt_x(j));
    w = w + v.pow(e).scaled(pj);
    pj *= p;
  }
  return w;
}

// ---------------------------------------------------------------- structure

namespace {

std::atomic<unsigned> g_cap{6};

// Builds S_k and P_k level by level over the integers.
struct Builder {
  std::uint32_t p;
  std::vector<IntPoly> sum, prod;
  std::vector<IntPoly> sum_pow, prod_pow;  // S_j^{p^{k-j}} for the current k

  void extend() {
    const unsigned k = static_cast<unsigned>(sum.size());
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    IntPoly wx = ghost_polynomial(p, k, false);
    IntPoly wy = ghost_polynomial(p, k, true);
    for (auto& s : sum_pow) s = s.pow(p);
    for (auto& s : prod_pow) s = s.pow(p);
    IntPoly s_rest = wx + wy;
    IntPoly p_rest = wx * wy;
    mpz_class pj = 1;
    for (unsigned j = 0; j < k; ++j) {
      s_rest = s_rest - sum_pow[j].scaled(pj);
      p_rest = p_rest - prod_pow[j].scaled(pj);
      pj *= p;
    }
    sum.push_back(s_rest.divided(pk));
    prod.push_back(p_rest.divided(pk));
    sum_pow.push_back(sum.back());
    prod_pow.push_back(prod.back());
  }
};

// Expand sum_j p^j F_j^{p^{k-j}} from scratch and compare with the ghost side.
void check_ghost_identities(std::uint32_t p, const std::vector<IntPoly>& s,
                            const std::vector<IntPoly>& pr) {
  for (unsigned k = 0; k < s.size(); ++k) {
    IntPoly gs, gp;
    mpz_class pj = 1;
    for (unsigned j = 0; j <= k; ++j) {
      unsigned e = 1;
      for (unsigned t = j; t < k; ++t) e *= p;
      gs = gs + s[j].pow(e).scaled(pj);
      gp = gp + pr[j].pow(e).scaled(pj);
      pj *= p;
    }
    IntPoly wx = ghost_polynomial(p, k, false);
    IntPoly wy = ghost_polynomial(p, k, true);
    require(gs == wx + wy && gp == wx * wy, ErrorCode::OracleMismatch,
            "ghost identity fails at level " + std::to_string(k));
  }
}

WittStructure::Compiled compile(const std::vector<IntPoly>& polys, std::uint32_t p) {
  WittStructure::Compiled c;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> slot_of;
  mpz_class mp = p;
  for (const auto& poly : polys) {
    std::vector<WittStructure::Compiled::Term> terms;
    for (const auto& [mono, coef] : poly.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), coef.get_mpz_t(), mp.get_mpz_t());
      if (r == 0) continue;
      WittStructure::Compiled::Term t;
      t.coeff = static_cast<Coeff>(r.get_ui());
      for (std::uint32_t f : mono) {
        auto key = std::make_pair(f >> kExpBits, f & kExpMask);
        auto it = slot_of.find(key);
        if (it == slot_of.end()) {
          it = slot_of.emplace(key, static_cast<std::uint32_t>(c.slot_powers.size())).first;
          c.slot_powers.push_back(key);
        }
        t.slots.push_back(it->second);
      }
      terms.push_back(std::move(t));
    }
    c.comps.push_back(std::move(terms));
  }
  return c;
}

struct StructRegistry {
  std::mutex mu;
  std::map<std::uint32_t, Builder> builders;
  std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<WittStructure>> done;
};

StructRegistry& struct_registry() {
  static StructRegistry* r = new StructRegistry();
  return *r;
}

}  // namespace

void set_witt_precision_cap(unsigned cap) { g_cap = std::max(1U, cap); }
unsigned witt_precision_cap() { return g_cap; }

WittStructure::WittStructure(std::uint32_t p, unsigned m, std::vector<IntPoly> s,
                             std::vector<IntPoly> pr)
    : p_(p), m_(m), sum_(std::move(s)), prod_(std::move(pr)) {
  sum_plan_ = compile(sum_, p_);
  prod_plan_ = compile(prod_, p_);
}

const WittStructure& witt_structure(std::uint32_t p, unsigned m) {
  require(m >= 1, ErrorCode::BadShape, "Witt length must be at least 1");
  require(m <= g_cap, ErrorCode::PrecisionLimit,
          "precision " + std::to_string(m) + " exceeds cap " + std::to_string(g_cap.load()));
  require(is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  auto& reg = struct_registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(p, m);
  auto it = reg.done.find(key);
  if (it != reg.done.end()) return *it->second;
  Builder& b = reg.builders.try_emplace(p, Builder{p, {}, {}, {}, {}}).first->second;
  while (b.sum.size() < m) b.extend();
  std::vector<IntPoly> s(b.sum.begin(), b.sum.begin() + m);
  std::vector<IntPoly> pr(b.prod.begin(), b.prod.begin() + m);
  if (m <= 4) check_ghost_identities(p, s, pr);
  auto owned = std::unique_ptr<WittStructure>(new WittStructure(p, m, std::move(s), std::move(pr)));
  const WittStructure& ref = *owned;
  reg.done.emplace(key, std::move(owned));
  return ref;
}

// ---------------------------------------------------------------- vectors

WittVector::WittVector(Field f, unsigned m)
    : s_(&witt_structure(f->p(), m)), f_(f), c_(m, FFElement::zero(f)) {}

WittVector::WittVector(Field f, std::vector<FFElement> comps)
    : s_(&witt_structure(f->p(), static_cast<unsigned>(comps.size()))), f_(f), c_(std::move(comps)) {
  for (const auto& c : c_) {
    require(c.field() == f, ErrorCode::MismatchedStructure, "Witt component in a different field");
  }
}

WittVector WittVector::one(Field f, unsigned m) { return teichmuller(FFElement::one(f), m); }

WittVector WittVector::from_integer(Field f, unsigned m, long long v) {
  bool neg = v < 0;
  unsigned long long u = neg ? 0ULL - static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
  WittVector acc(f, m);
  WittVector base = one(f, m);
  while (u > 0) {
    if (u & 1ULL) acc = acc + base;
    u >>= 1U;
    if (u > 0) base = base + base;
  }
  return neg ? -acc : acc;
}

bool WittVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const FFElement& e) { return e.is_zero(); });
}

unsigned WittVector::valuation() const {
  for (unsigned i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return i;
  }
  return precision();
}

void WittVector::check_same(const WittVector& o) const {
  require(s_ == o.s_ && f_ == o.f_, ErrorCode::MismatchedStructure,
          "Witt vectors over different rings");
}

bool WittVector::operator<(const WittVector& o) const {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

std::string WittVector::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += '|';
    s += c_[i].str();
  }
  return s;
}

namespace {

std::vector<FFElement> slot_values(const WittStructure::Compiled& plan,
                                   const std::vector<FFElement>& x,
                                   const std::vector<FFElement>& y) {
  std::vector<FFElement> vals;
  vals.reserve(plan.slot_powers.size());
  for (auto [var, e] : plan.slot_powers) {
    const FFElement& base = (var & 1U) ? y[var >> 1U] : x[var >> 1U];
    vals.push_back(base.is_zero() ? base : base.pow(e));
  }
  return vals;
}

FFElement eval_comp(const WittStructure::Compiled& plan, unsigned k,
                    const std::vector<FFElement>& vals, Field f) {
  FFElement acc = FFElement::zero(f);
  for (const auto& t : plan.comps[k]) {
    bool zero = false;
    for (auto s : t.slots) {
      if (vals[s].is_zero()) {
        zero = true;
        break;
      }
    }
    if (zero) continue;
    FFElement term = vals[t.slots[0]];
    for (std::size_t i = 1; i < t.slots.size(); ++i) term *= vals[t.slots[i]];
    acc += t.coeff == 1 ? term : term.scaled(t.coeff);
  }
  return acc;
}

// Slots whose variable index exceeds the evaluated level are never touched
// by that level's terms, so padding unused inputs with zero is harmless.
std::vector<FFElement> eval_all(const WittStructure::Compiled& plan, const WittVector& a,
                                const WittVector& b) {
  auto vals = slot_values(plan, a.comps(), b.comps());
  std::vector<FFElement> out;
  out.reserve(a.precision());
  for (unsigned k = 0; k < a.precision(); ++k) out.push_back(eval_comp(plan, k, vals, a.field()));
  return out;
}

}  // namespace

WittVector WittVector::operator+(const WittVector& o) const {
  check_same(o);
  return WittVector(f_, eval_all(s_->sum_plan(), *this, o));
}

WittVector WittVector::operator*(const WittVector& o) const {
  check_same(o);
  return WittVector(f_, eval_all(s_->prod_plan(), *this, o));
}

WittVector WittVector::operator-() const {
  if (f_->p() != 2) {
    std::vector<FFElement> c = c_;
    for (auto& e : c) e = -e;
    return WittVector(f_, std::move(c));
  }
  // Solve S_k(a, b) = 0 for b_k in turn; S_k = a_k + b_k + (lower terms).
  std::vector<FFElement> b(c_.size(), FFElement::zero(f_));
  const auto& plan = s_->sum_plan();
  for (unsigned k = 0; k < c_.size(); ++k) {
    auto vals = slot_values(plan, c_, b);
    b[k] = -eval_comp(plan, k, vals, f_);
  }
  return WittVector(f_, std::move(b));
}

WittVector WittVector::operator-(const WittVector& o) const { return *this + (-o); }

WittVector witt_add(const WittVector& a, const WittVector& b) { return a + b; }
WittVector witt_mul(const WittVector& a, const WittVector& b) { return a * b; }
WittVector witt_neg(const WittVector& a) { return -a; }

WittVector sigma(const WittVector& a, long long t) {
  std::vector<FFElement> c = a.comps();
  for (auto& e : c) e = frobenius(e, t);
  return WittVector(a.field(), std::move(c));
}

WittVector verschiebung(const WittVector& a) {
  std::vector<FFElement> c(a.precision(), FFElement::zero(a.field()));
  for (unsigned i = 0; i + 1 < a.precision(); ++i) c[i + 1] = a[i];
  return WittVector(a.field(), std::move(c));
}

WittVector teichmuller(const FFElement& x, unsigned m) {
  std::vector<FFElement> c(m, FFElement::zero(x.field()));
  c[0] = x;
  return WittVector(x.field(), std::move(c));
}

WittVector times_p(const WittVector& a) { return verschiebung(sigma(a, 1)); }

WittVector divide_by_p(const WittVector& a) {
  require(a[0].is_zero(), ErrorCode::BadShape, "Witt vector not divisible by p");
  std::vector<FFElement> c(a.precision(), FFElement::zero(a.field()));
  for (unsigned i = 0; i + 1 < a.precision(); ++i) c[i] = frobenius(a[i + 1], -1);
  return WittVector(a.field(), std::move(c));
}

WittVector witt_inverse(const WittVector& a) {
  require(a.is_unit(), ErrorCode::BadShape, "Witt vector is not a unit");
  const unsigned m = a.precision();
  WittVector x = teichmuller(a[0].inverse(), m);
  const WittVector two = WittVector::from_integer(a.field(), m, 2);
  for (unsigned prec = 1; prec < m; prec *= 2) x = x * (two - a * x);
  require(a * x == WittVector::one(a.field(), m), ErrorCode::OracleMismatch,
          "Newton inverse failed to converge");
  return x;
}

WittVector truncate(const WittVector& a, unsigned m) {
  require(m >= 1 && m <= a.precision(), ErrorCode::BadShape, "bad truncation length");
  return WittVector(a.field(), std::vector<FFElement>(a.comps().begin(), a.comps().begin() + m));
}

WittVector parse_witt(Field f, unsigned m, const std::string& text) {
  std::vector<FFElement> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t bar = text.find('|', pos);
    if (bar == std::string::npos) bar = text.size();
    c.push_back(parse_element(f, text.substr(pos, bar - pos)));
    pos = bar + 1;
  }
  require(c.size() == m, ErrorCode::ParseError, "Witt vector needs " + std::to_string(m) + " components");
  return WittVector(f, std::move(c));
}

}  // namespace crystalkit
