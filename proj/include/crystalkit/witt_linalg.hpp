#pragma once

// Matrices over the chain ring W_m(F_q).

#include <vector>

#include "crystalkit/linalg.hpp"
#include "crystalkit/witt.hpp"

namespace crystalkit {

using WMatrix = std::vector<std::vector<WittVector>>;
using WVector = std::vector<WittVector>;

WMatrix wzero(Field f, unsigned m, std::size_t rows, std::size_t cols);
WMatrix widentity(Field f, unsigned m, std::size_t n);
WMatrix wmatmul(const WMatrix& a, const WMatrix& b);
WMatrix wsub(const WMatrix& a, const WMatrix& b);
WVector wmatvec(const WMatrix& a, const WVector& x);
WMatrix wsigma(const WMatrix& a, long long t = 1);
// Reduction modulo p (first components).
FMatrix reduce_mod_p(const WMatrix& a);
WMatrix teichmuller_lift(const FMatrix& a, unsigned m);

// Exponents e of the elementary divisors p^e (precision() for zero
// divisors), ascending; one per min(rows, cols).
std::vector<unsigned> elementary_divisor_exponents(WMatrix a);

// Inverse of a square matrix invertible mod p, by Hensel lifting of the
// mod-p inverse; nullopt if singular mod p.
std::optional<WMatrix> winverse(const WMatrix& a);

}  // namespace crystalkit
