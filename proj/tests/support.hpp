#pragma once

// Random generators shared by the property tests.

#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "crystalkit/linalg.hpp"
#include "crystalkit/witt.hpp"

namespace ck_test {

using namespace crystalkit;

inline FFElement random_element(Field f, std::mt19937& rng) {
  std::uniform_int_distribution<Coeff> d(0, f->p() - 1);
  std::vector<Coeff> c(f->degree());
  for (auto& x : c) x = d(rng);
  return FFElement(f, c);
}

inline FFElement random_nonzero(Field f, std::mt19937& rng) {
  for (;;) {
    FFElement x = random_element(f, rng);
    if (!x.is_zero()) return x;
  }
}

inline WittVector random_witt(Field f, unsigned m, std::mt19937& rng) {
  std::vector<FFElement> c;
  for (unsigned i = 0; i < m; ++i) c.push_back(random_element(f, rng));
  return WittVector(f, c);
}

inline FMatrix random_matrix(Field f, std::size_t r, std::size_t c, std::mt19937& rng) {
  FMatrix a = zero_matrix(f, r, c);
  for (auto& row : a) {
    for (auto& e : row) e = random_element(f, rng);
  }
  return a;
}

inline FVector random_vector(Field f, std::size_t n, std::mt19937& rng) {
  FVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_element(f, rng));
  return v;
}

// Error code raised by f; nullopt when it returns normally.
inline std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Cycle decomposition of a permutation given as images of 1..d.
inline std::vector<std::vector<unsigned>> cycles_of(const std::vector<unsigned>& perm) {
  std::vector<std::vector<unsigned>> cs;
  std::vector<bool> seen(perm.size() + 1, false);
  for (unsigned i = 1; i <= perm.size(); ++i) {
    if (seen[i]) continue;
    std::vector<unsigned> c;
    for (unsigned j = i; !seen[j]; j = perm[j - 1]) {
      seen[j] = true;
      c.push_back(j);
    }
    cs.push_back(c);
  }
  return cs;
}

}  // namespace ck_test
