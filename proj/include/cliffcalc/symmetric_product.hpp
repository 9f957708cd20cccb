#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cliffcalc/multivector.hpp"
#include "cliffcalc/scalars.hpp"

namespace cliffcalc {

// Symmetrized product of k not-necessarily-commuting factors:
//   sym(a_1, ..., a_k) = (1/k!) * sum over permutations p of a_{p(1)}...a_{p(k)}.
// Works for any element type with an associative operator* (matrices,
// multivectors, multivector-coefficient polynomials).

inline void element_check_factors(const std::vector<Matrix>& f) {
  for (const Matrix& m : f) {
    if (m.rows() != m.cols() || m.size() == 0)
      throw std::invalid_argument("symmetric product: factors must be square matrices");
    if (m.rows() != f.front().rows())
      throw std::invalid_argument("symmetric product: factor dimensions disagree");
  }
}

template <typename T>
void element_check_factors(const std::vector<T>&) {}

/// Subset recursion: with S(M) the symmetrized product over the factor set M,
///   S(M) = (1/|M|) * sum_{j in M} S(M \ {j}) * a_j,
/// memoized over the 2^k subsets.  Cost O(2^k k) products instead of k!.
template <typename T>
T symmetric_product(const std::vector<T>& factors) {
  const int k = static_cast<int>(factors.size());
  if (k == 0) throw std::invalid_argument("symmetric product of an empty factor list");
  if (k > 20) throw std::invalid_argument("symmetric product: too many factors");
  element_check_factors(factors);

  std::vector<std::optional<T>> memo(std::size_t(1) << k);
  for (int j = 0; j < k; ++j) memo[std::size_t(1) << j] = factors[j];
  for (std::uint32_t mask = 1; mask < memo.size(); ++mask) {
    const int count = std::popcount(mask);
    if (count < 2) continue;
    std::optional<T> sum;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      T term = *memo[mask ^ (std::uint32_t(1) << j)] * factors[j];
      if (sum)
        *sum += term;
      else
        sum = std::move(term);
    }
    element_div(*sum, count);
    memo[mask] = std::move(*sum);
  }
  return *memo[memo.size() - 1];
}

/// Direct average over all k! permutations.  Exponential; intended as an
/// independent cross-check of the subset recursion for small k.
template <typename T>
T symmetric_product_naive(const std::vector<T>& factors) {
  const int k = static_cast<int>(factors.size());
  if (k == 0) throw std::invalid_argument("symmetric product of an empty factor list");
  if (k > 10) throw std::invalid_argument("symmetric product: too many factors for the permutation form");
  element_check_factors(factors);

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  int count = 1;
  for (int i = 2; i <= k; ++i) count *= i;

  std::optional<T> sum;
  do {
    T word = factors[perm[0]];
    for (int i = 1; i < k; ++i) word = word * factors[perm[i]];
    if (sum)
      *sum += word;
    else
      sum = std::move(word);
  } while (std::next_permutation(perm.begin(), perm.end()));
  element_div(*sum, count);
  return *sum;
}

}  // namespace cliffcalc
