#include "poly_fp.hpp"

#include <algorithm>

namespace crystalkit::detail {

Coeff invp(Coeff a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<Coeff>(t);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  const std::uint64_t lim = ~0ULL - static_cast<std::uint64_t>(p - 1) * (p - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t& s = acc[i + j];
      s += static_cast<std::uint64_t>(a[i]) * b[j];
      if (s >= lim) s %= p;
    }
  }
  Poly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<Coeff>(acc[i] % p);
  trim(out);
  return out;
}

void divrem(const Poly& a, const Poly& m, std::uint32_t p, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.clear();
  if (r.size() < m.size()) return;
  q.assign(r.size() - m.size() + 1, 0);
  const Coeff lead_inv = invp(m.back(), p);
  for (std::size_t k = r.size(); k-- >= m.size();) {
    Coeff c = r[k];
    if (c == 0) continue;
    c = mulp(c, lead_inv, p);
    const std::size_t shift = k - (m.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < m.size(); ++j) {
      r[shift + j] = subp(r[shift + j], mulp(c, m[j], p), p);
    }
  }
  trim(r);
  trim(q);
}

Poly rem(const Poly& a, const Poly& m, std::uint32_t p) {
  Poly q, r;
  divrem(a, m, p, q, r);
  return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  return rem(mul(a, b, p), m, p);
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  result = rem(result, m, p);
  base = rem(base, m, p);
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, m, p);
    e >>= 1U;
    if (e > 0) base = mulmod(base, base, m, p);
  }
  return result;
}

Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Coeff x = i < a.size() ? a[i] : 0;
    Coeff y = i < b.size() ? b[i] : 0;
    out[i] = subp(x, y, p);
  }
  trim(out);
  return out;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Coeff inv = invp(a.back(), p);
    for (auto& c : a) c = mulp(c, inv, p);
  }
  return a;
}

}  // namespace crystalkit::detail
