#include "crystalkit/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>

#include "poly_fp.hpp"

namespace crystalkit {

using detail::Poly;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(const std::vector<Coeff>& monic, std::uint32_t p) {
  Poly f = monic;
  detail::trim(f);
  if (f.size() < 2) return false;
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  if (f[0] == 0) return false;
  // Distinct-degree search: a reducible f has a factor of degree <= n/2,
  // which divides x^{p^k} - x for that degree k.
  const Poly x{0, 1};
  Poly h = x;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    h = detail::powmod(h, p, f, p);
    Poly g = detail::gcd(detail::sub(h, x, p), f, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::optional<std::uint64_t> FieldDesc::order() const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n_; ++i) {
    if (q > ~0ULL / p_) return std::nullopt;
    q *= p_;
  }
  return q;
}

std::string FieldDesc::describe() const {
  std::ostringstream os;
  os << "F_" << p_ << "^" << n_ << " mod [";
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  os << "]";
  return os.str();
}

FieldDesc::FieldDesc(std::uint32_t p, std::vector<Coeff> modulus)
    : p_(p), n_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  frob_.resize(n_);
  Poly xp = detail::powmod(Poly{0, 1}, p_, modulus_, p_);
  Poly cur{1};
  for (unsigned k = 0; k < n_; ++k) {
    std::vector<Coeff> col(n_, 0);
    std::copy(cur.begin(), cur.end(), col.begin());
    frob_[k] = std::move(col);
    cur = detail::mulmod(cur, xp, modulus_, p_);
  }
}

namespace {

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, std::vector<Coeff>>, std::unique_ptr<FieldDesc>> fields;
  std::map<std::pair<std::uint32_t, unsigned>, Field> defaults;
};

Registry& registry() {
  static Registry* r = new Registry();  // immortal: elements may outlive statics
  return *r;
}

bool next_candidate(std::vector<Coeff>& c, std::uint32_t p) {
  // c holds the non-leading coefficients; increment as base-p integer.
  for (auto& d : c) {
    if (++d < p) return true;
    d = 0;
  }
  return false;
}

}  // namespace

Field make_field(std::uint32_t p, unsigned n, std::optional<std::vector<Coeff>> modulus) {
  require(is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  require(p < 65536, ErrorCode::BadShape, "characteristic must be below 65536");
  require(n >= 1, ErrorCode::BadShape, "field degree must be at least 1");
  auto& reg = registry();
  std::vector<Coeff> mod;
  if (modulus) {
    mod = *modulus;
    require(mod.size() == n + 1, ErrorCode::ReducibleModulus,
            "modulus must have degree " + std::to_string(n));
    for (auto& c : mod) c %= p;
    require(mod.back() == 1, ErrorCode::ReducibleModulus, "modulus must be monic");
    require(is_irreducible(mod, p), ErrorCode::ReducibleModulus, "modulus is reducible");
  } else {
    {
      std::lock_guard<std::mutex> lock(reg.mu);
      auto it = reg.defaults.find({p, n});
      if (it != reg.defaults.end()) return it->second;
    }
    std::vector<Coeff> low(n, 0);
    bool found = false;
    do {
      mod = low;
      mod.push_back(1);
      if (is_irreducible(mod, p)) {
        found = true;
        break;
      }
    } while (next_candidate(low, p));
    require(found, ErrorCode::ReducibleModulus, "no irreducible polynomial found");
  }
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(p, mod);
  auto it = reg.fields.find(key);
  Field f;
  if (it != reg.fields.end()) {
    f = it->second.get();
  } else {
    auto owned = std::unique_ptr<FieldDesc>(new FieldDesc(p, mod));
    f = owned.get();
    reg.fields.emplace(std::move(key), std::move(owned));
  }
  if (!modulus) reg.defaults.emplace(std::make_pair(p, n), f);
  return f;
}

// ---------------------------------------------------------------- elements

FFElement::FFElement(Field f) : f_(f), c_(f->degree(), 0) {}

FFElement::FFElement(Field f, std::vector<Coeff> coeffs) : f_(f), c_(std::move(coeffs)) {
  require(c_.size() <= f->degree(), ErrorCode::BadShape, "too many coefficients");
  c_.resize(f->degree(), 0);
  for (auto& c : c_) c %= f->p();
}

FFElement FFElement::one(Field f) {
  FFElement e(f);
  e.c_[0] = 1;
  return e;
}

FFElement FFElement::from_int(Field f, long long v) {
  FFElement e(f);
  long long r = v % static_cast<long long>(f->p());
  if (r < 0) r += f->p();
  e.c_[0] = static_cast<Coeff>(r);
  return e;
}

FFElement FFElement::generator(Field f) {
  if (f->degree() == 1) {
    // x is congruent to -c0 modulo a linear modulus.
    return from_int(f, -static_cast<long long>(f->modulus()[0]));
  }
  FFElement e(f);
  e.c_[1] = 1;
  return e;
}

FFElement FFElement::from_index(Field f, std::uint64_t idx) {
  FFElement e(f);
  for (unsigned i = 0; i < f->degree() && idx > 0; ++i) {
    e.c_[i] = static_cast<Coeff>(idx % f->p());
    idx /= f->p();
  }
  require(idx == 0, ErrorCode::BadShape, "element index out of range");
  return e;
}

bool FFElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](Coeff c) { return c == 0; });
}

bool FFElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](Coeff c) { return c == 0; });
}

std::uint64_t FFElement::index() const {
  auto q = f_->order();
  require(q.has_value(), ErrorCode::BadShape, "field too large for element indices");
  std::uint64_t idx = 0;
  for (std::size_t i = c_.size(); i-- > 0;) idx = idx * f_->p() + c_[i];
  return idx;
}

void FFElement::check_same(const FFElement& o) const {
  if (f_ != o.f_) {
    fail(ErrorCode::IncompatibleFields,
         "arithmetic across " + (f_ ? f_->describe() : std::string("null")) + " and " +
             (o.f_ ? o.f_->describe() : std::string("null")));
  }
}

FFElement FFElement::operator+(const FFElement& o) const {
  check_same(o);
  FFElement r(*this);
  const auto p = f_->p();
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = detail::addp(c_[i], o.c_[i], p);
  return r;
}

FFElement FFElement::operator-(const FFElement& o) const {
  check_same(o);
  FFElement r(*this);
  const auto p = f_->p();
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = detail::subp(c_[i], o.c_[i], p);
  return r;
}

FFElement FFElement::operator-() const {
  FFElement r(*this);
  const auto p = f_->p();
  for (auto& c : r.c_) c = c ? p - c : 0;
  return r;
}

FFElement FFElement::scaled(Coeff s) const {
  FFElement r(*this);
  const auto p = f_->p();
  s %= p;
  for (auto& c : r.c_) c = detail::mulp(c, s, p);
  return r;
}

FFElement FFElement::operator*(const FFElement& o) const {
  check_same(o);
  const unsigned n = f_->degree();
  const std::uint64_t p = f_->p();
  if (n == 1) {
    FFElement r(f_);
    r.c_[0] = static_cast<Coeff>(static_cast<std::uint64_t>(c_[0]) * o.c_[0] % p);
    return r;
  }
  // p < 2^16 keeps every accumulator below 2^32 * (2n) for n < 2^31.
  std::vector<std::uint64_t> acc(2 * n - 1, 0);
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t a = c_[i];
    if (a == 0) continue;
    for (unsigned j = 0; j < n; ++j) acc[i + j] += a * o.c_[j];
  }
  const auto& m = f_->modulus();
  for (unsigned k = 2 * n - 1; k-- > n;) {
    const std::uint64_t c = acc[k] % p;
    if (c == 0) continue;
    const unsigned base = k - n;
    for (unsigned j = 0; j < n; ++j) {
      if (m[j]) acc[base + j] += c * (p - m[j]);
    }
  }
  FFElement r(f_);
  for (unsigned i = 0; i < n; ++i) r.c_[i] = static_cast<Coeff>(acc[i] % p);
  return r;
}

FFElement FFElement::inverse() const {
  require(!is_zero(), ErrorCode::BadShape, "inverse of zero");
  const auto p = f_->p();
  Poly a(c_.begin(), c_.end());
  detail::trim(a);
  Poly b = f_->modulus();
  // Extended Euclid tracking the coefficient of a.
  Poly s0{1}, s1{};
  while (!b.empty()) {
    Poly q, r;
    detail::divrem(a, b, p, q, r);
    Poly s2 = detail::sub(s0, detail::mul(q, s1, p), p);
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // a is a nonzero constant.
  const Coeff inv = detail::invp(a[0], p);
  std::vector<Coeff> out(f_->degree(), 0);
  Poly s = detail::rem(s0, f_->modulus(), p);
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = detail::mulp(s[i], inv, p);
  return FFElement(f_, std::move(out));
}

FFElement FFElement::operator/(const FFElement& o) const {
  check_same(o);
  return *this * o.inverse();
}

FFElement FFElement::pow(std::uint64_t e) const {
  FFElement result = one(f_);
  FFElement base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

bool FFElement::operator<(const FFElement& o) const {
  check_same(o);
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

std::string FFElement::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s;
}

FFElement parse_element(Field f, const std::string& text) {
  std::vector<Coeff> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string tok = text.substr(pos, comma - pos);
    require(!tok.empty() && tok.size() <= 9 && tok.find_first_not_of("0123456789") == std::string::npos,
            ErrorCode::ParseError, "bad field element '" + text + "'");
    unsigned long v = std::stoul(tok);
    require(v < f->p(), ErrorCode::ParseError,
            "coefficient " + tok + " not reduced mod " + std::to_string(f->p()));
    c.push_back(static_cast<Coeff>(v));
    pos = comma + 1;
  }
  require(c.size() == f->degree(), ErrorCode::ParseError,
          "field element '" + text + "' needs " + std::to_string(f->degree()) + " coefficients");
  return FFElement(f, std::move(c));
}

namespace {

FFElement frobenius_once(const FFElement& x) {
  Field f = x.field();
  const unsigned n = f->degree();
  if (n == 1) return x;
  const std::uint64_t p = f->p();
  const auto& cols = f->frobenius_columns();
  std::vector<std::uint64_t> acc(n, 0);
  const auto& c = x.coeffs();
  for (unsigned k = 0; k < n; ++k) {
    const std::uint64_t a = c[k];
    if (a == 0) continue;
    const auto& col = cols[k];
    for (unsigned i = 0; i < n; ++i) acc[i] += a * col[i];
  }
  std::vector<Coeff> out(n);
  for (unsigned i = 0; i < n; ++i) out[i] = static_cast<Coeff>(acc[i] % p);
  return FFElement(f, std::move(out));
}

}  // namespace

FFElement frobenius(const FFElement& x, long long t) {
  const long long n = x.field()->degree();
  long long k = t % n;
  if (k < 0) k += n;
  FFElement r = x;
  for (long long i = 0; i < k; ++i) r = frobenius_once(r);
  return r;
}

Coeff trace(const FFElement& x) {
  FFElement acc = x;
  FFElement cur = x;
  for (unsigned i = 1; i < x.field()->degree(); ++i) {
    cur = frobenius_once(cur);
    acc += cur;
  }
  return acc.coeffs()[0];
}

std::vector<std::vector<Coeff>> multiplication_matrix(const FFElement& x) {
  Field f = x.field();
  const unsigned n = f->degree();
  std::vector<std::vector<Coeff>> m(n, std::vector<Coeff>(n, 0));
  FFElement basis = FFElement::one(f);
  FFElement gen(f);
  if (n > 1) gen = FFElement(f, {0, 1});
  for (unsigned k = 0; k < n; ++k) {
    FFElement col = x * basis;
    for (unsigned i = 0; i < n; ++i) m[i][k] = col.coeffs()[i];
    if (n > 1) basis *= gen;
  }
  return m;
}

std::vector<std::vector<Coeff>> frobenius_matrix(Field f) {
  const unsigned n = f->degree();
  std::vector<std::vector<Coeff>> m(n, std::vector<Coeff>(n, 0));
  for (unsigned k = 0; k < n; ++k) {
    for (unsigned i = 0; i < n; ++i) m[i][k] = f->frobenius_columns()[k][i];
  }
  return m;
}

std::vector<FFElement> all_elements(Field f) {
  auto q = f->order();
  require(q.has_value() && *q <= (1ULL << 24), ErrorCode::BadShape,
          "field too large to enumerate");
  std::vector<FFElement> out;
  out.reserve(*q);
  for (std::uint64_t i = 0; i < *q; ++i) out.push_back(FFElement::from_index(f, i));
  return out;
}

// ---------------------------------------------------------------- embedding

namespace {

using QPoly = std::vector<FFElement>;  // low-to-high over one field

void qtrim(QPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, FFElement::zero(a[0].field()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  qtrim(out);
  return out;
}

void qdivrem(const QPoly& a, const QPoly& m, QPoly& q, QPoly& r) {
  r = a;
  qtrim(r);
  q.clear();
  if (r.size() < m.size()) return;
  Field f = m.back().field();
  q.assign(r.size() - m.size() + 1, FFElement::zero(f));
  FFElement inv = m.back().inverse();
  for (std::size_t k = r.size(); k-- >= m.size();) {
    if (r[k].is_zero()) continue;
    FFElement c = r[k] * inv;
    const std::size_t shift = k - (m.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < m.size(); ++j) r[shift + j] -= c * m[j];
  }
  qtrim(r);
  qtrim(q);
}

QPoly qrem(const QPoly& a, const QPoly& m) {
  QPoly q, r;
  qdivrem(a, m, q, r);
  return r;
}

QPoly qgcd(QPoly a, QPoly b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    QPoly r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    FFElement inv = a.back().inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

QPoly qpowmod(QPoly base, std::uint64_t e, const QPoly& m) {
  Field f = m.back().field();
  QPoly result{FFElement::one(f)};
  base = qrem(base, m);
  while (e > 0) {
    if (e & 1U) result = qrem(qmul(result, base), m);
    e >>= 1U;
    if (e > 0) base = qrem(qmul(base, base), m);
  }
  return result;
}

// Roots of a squarefree g splitting into linear factors over its field,
// separated with trace maps x -> Tr(a x) evaluated modulo g.
void split_roots(const QPoly& g, std::vector<FFElement>& roots) {
  Field f = g.back().field();
  if (g.size() == 2) {
    roots.push_back(-(g[0] / g[1]));
    return;
  }
  const unsigned D = f->degree();
  const std::uint32_t p = f->p();
  // Low-index candidates can all have trace zero under a sparse modulus.
  std::mt19937_64 rng(f->degree() * 1000003ULL + p);
  std::uniform_int_distribution<Coeff> coef(0, p - 1);
  for (;;) {
    std::vector<Coeff> cs(D);
    for (auto& c : cs) c = coef(rng);
    FFElement a(f, cs);
    QPoly t{FFElement::zero(f), a};
    t = qrem(t, g);
    QPoly acc = t;
    QPoly h = t;
    for (unsigned i = 1; i < D; ++i) {
      h = qpowmod(h, p, g);
      acc.resize(std::max(acc.size(), h.size()), FFElement::zero(f));
      for (std::size_t j = 0; j < h.size(); ++j) acc[j] += h[j];
    }
    qtrim(acc);
    for (std::uint32_t c = 0; c < p; ++c) {
      QPoly shifted = acc;
      if (shifted.empty()) shifted.push_back(FFElement::zero(f));
      shifted[0] -= FFElement::from_int(f, c);
      qtrim(shifted);
      QPoly d = qgcd(shifted, g);
      if (d.size() > 1 && d.size() < g.size()) {
        QPoly q, r;
        qdivrem(g, d, q, r);
        split_roots(d, roots);
        split_roots(q, roots);
        return;
      }
    }
  }
}

struct EmbedCache {
  std::mutex mu;
  std::map<std::pair<Field, Field>, std::vector<FFElement>> powers;
};

EmbedCache& embed_cache() {
  static EmbedCache* c = new EmbedCache();
  return *c;
}

const std::vector<FFElement>& generator_powers(Field sub, Field super) {
  auto& cache = embed_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.powers.find({sub, super});
    if (it != cache.powers.end()) return it->second;
  }
  QPoly g;
  for (Coeff c : sub->modulus()) g.push_back(FFElement::from_int(super, c));
  std::vector<FFElement> roots;
  split_roots(g, roots);
  require(roots.size() == sub->degree(), ErrorCode::IncompatibleFields,
          "modulus does not split in the superfield");
  FFElement rho = *std::min_element(roots.begin(), roots.end());
  std::vector<FFElement> pw;
  FFElement cur = FFElement::one(super);
  for (unsigned k = 0; k < sub->degree(); ++k) {
    pw.push_back(cur);
    cur *= rho;
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  auto [it, inserted] = cache.powers.emplace(std::make_pair(sub, super), std::move(pw));
  return it->second;
}

}  // namespace

FFElement embed(const FFElement& x, Field super) {
  Field sub = x.field();
  if (sub == super) return x;
  require(sub->p() == super->p() && super->degree() % sub->degree() == 0,
          ErrorCode::IncompatibleFields,
          "cannot embed " + sub->describe() + " into " + super->describe());
  FFElement out = FFElement::zero(super);
  if (sub->degree() == 1) return FFElement::from_int(super, x.coeffs()[0]);
  const auto& pw = generator_powers(sub, super);
  for (unsigned k = 0; k < sub->degree(); ++k) {
    if (x.coeffs()[k]) out += pw[k].scaled(x.coeffs()[k]);
  }
  return out;
}

}  // namespace crystalkit
