#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cliffcalc {

using MultiIndex = std::vector<int>;
using BigInt = boost::multiprecision::cpp_int;

inline int mi_degree(const MultiIndex& alpha) {
  int d = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
    d += a;
  }
  return d;
}

inline BigInt factorial_exact(int k) {
  if (k < 0) throw std::invalid_argument("factorial of a negative number");
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// alpha! = prod_j (alpha_j!).
inline BigInt mi_factorial_exact(const MultiIndex& alpha) {
  BigInt f = 1;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
    f *= factorial_exact(a);
  }
  return f;
}

inline double mi_factorial(const MultiIndex& alpha) {
  return mi_factorial_exact(alpha).convert_to<double>();
}

/// All multi-indices over n slots with |alpha| = k, in ascending
/// lexicographic order, e.g. (n=2, k=2): (0,2), (1,1), (2,0).
inline std::vector<MultiIndex> multi_indices(int n, int k) {
  if (n < 1) throw std::invalid_argument("multi_indices: need at least one slot");
  if (k < 0) throw std::invalid_argument("multi_indices: degree must be nonnegative");
  std::vector<MultiIndex> out;
  MultiIndex alpha(n, 0);
  // Depth-first over slots, trying the smallest leading entries first.
  auto rec = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == n - 1) {
      alpha[slot] = remaining;
      out.push_back(alpha);
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      alpha[slot] = a;
      self(self, slot + 1, remaining - a);
    }
  };
  rec(rec, 0, k);
  return out;
}

/// All multi-indices with |alpha| <= max_degree, grouped by degree ascending,
/// lexicographic within each degree.
inline std::vector<MultiIndex> multi_indices_up_to(int n, int max_degree) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_degree; ++k) {
    auto layer = multi_indices(n, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

inline std::string mi_to_string(const MultiIndex& alpha) {
  std::string s = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(alpha[i]);
  }
  return s + ")";
}

}  // namespace cliffcalc
