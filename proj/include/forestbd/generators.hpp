#pragma once

#include <cstdint>
#include <vector>

#include "forestbd/formula.hpp"

namespace forestbd {

/// r x r grid of variables (cell (i, j) is variable i*r + j + 1). Every grid
/// edge becomes a clause on its two endpoints; the extra variable r*r + 1
/// joins horizontal-edge clauses positively and vertical-edge clauses
/// negatively. Horizontal clauses come first, row-major.
Formula gen_grid(int r);

/// Weak-backdoor instance encoding hitting set: per set S_i, clauses
/// (z_i or z_i') and (S_i or not z_i or not z_i'). Elements keep their ids;
/// z_i = u + 2i - 1 and z_i' = u + 2i where u is the largest element.
Formula gen_hitting_set(const std::vector<std::vector<int>>& family);

/// m clauses over n variables, each with r distinct variables and uniform
/// polarities; a pure function of its arguments.
Formula gen_random_rcnf(int n, int m, int r, std::uint64_t seed);

}  // namespace forestbd
