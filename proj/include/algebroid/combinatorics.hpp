#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace algebroid {

struct SignedPermutation {
  std::vector<std::size_t> perm;
  int sign;
};

/// All permutations of {0..n-1} with their signs, in lexicographic order.
const std::vector<SignedPermutation>& permutations(std::size_t n);

/// Strictly increasing k-subsets of {0..n-1}, lexicographic.
std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, std::size_t k);

/// Sorts `idx` in place and returns the sign of the sorting permutation, or 0
/// when an index repeats.
int sort_with_sign(std::vector<std::size_t>& idx);

}  // namespace algebroid
