#pragma once

// Dense polynomials over F_p, low-to-high, always trimmed.

#include <cstdint>
#include <vector>

#include "crystalkit/field.hpp"

namespace crystalkit::detail {

using Poly = std::vector<Coeff>;

inline Coeff addp(Coeff a, Coeff b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline Coeff subp(Coeff a, Coeff b, std::uint32_t p) { return a >= b ? a - b : a + p - b; }
inline Coeff mulp(Coeff a, Coeff b, std::uint32_t p) {
  return static_cast<Coeff>(static_cast<std::uint64_t>(a) * b % p);
}
Coeff invp(Coeff a, std::uint32_t p);

void trim(Poly& a);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
// Remainder modulo a monic or general nonzero divisor.
Poly rem(const Poly& a, const Poly& m, std::uint32_t p);
void divrem(const Poly& a, const Poly& m, std::uint32_t p, Poly& q, Poly& r);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p);
Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
Poly sub(const Poly& a, const Poly& b, std::uint32_t p);

}  // namespace crystalkit::detail
