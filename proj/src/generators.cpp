#include "forestbd/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "forestbd/errors.hpp"

namespace forestbd {

Formula gen_grid(int r) {
  if (r < 2) throw ContractError("grid size must be >= 2");
  auto cell = [r](int i, int j) { return i * r + j + 1; };
  const int x = r * r + 1;
  std::vector<Clause> clauses;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j + 1 < r; ++j) {
      clauses.emplace_back(std::vector<Literal>{{cell(i, j), true}, {cell(i, j + 1), true}, {x, true}});
    }
  }
  for (int i = 0; i + 1 < r; ++i) {
    for (int j = 0; j < r; ++j) {
      clauses.emplace_back(std::vector<Literal>{{cell(i, j), true}, {cell(i + 1, j), true}, {x, false}});
    }
  }
  return Formula::over_range(x, std::move(clauses));
}

Formula gen_hitting_set(const std::vector<std::vector<int>>& family) {
  if (family.empty()) throw ContractError("hitting set family must be nonempty");
  int u = 0;
  for (const auto& set : family) {
    if (set.empty()) throw ContractError("hitting set family contains an empty set");
    for (int e : set) {
      if (e < 1) throw ContractError("hitting set elements must be >= 1");
      u = std::max(u, e);
    }
  }
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const int z = u + 2 * static_cast<int>(i) + 1;
    const int z_prime = z + 1;
    clauses.emplace_back(std::vector<Literal>{{z, true}, {z_prime, true}});
    std::vector<Literal> wide;
    for (int e : family[i]) wide.push_back({e, true});
    wide.push_back({z, false});
    wide.push_back({z_prime, false});
    clauses.emplace_back(std::move(wide));
  }
  return Formula::over_range(u + 2 * static_cast<int>(family.size()), std::move(clauses));
}

Formula gen_random_rcnf(int n, int m, int r, std::uint64_t seed) {
  if (n < 0 || m < 0 || r < 0) throw ContractError("random CNF parameters must be >= 0");
  if (m > 0 && (r > n || r == 0)) {
    throw ContractError("random CNF needs 1 <= r <= n when m > 0");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 1);
  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) {
    // Partial Fisher-Yates; raw engine output keeps the stream portable.
    std::vector<Literal> lits;
    for (int i = 0; i < r; ++i) {
      std::size_t j = static_cast<std::size_t>(i) + rng() % static_cast<std::uint64_t>(n - i);
      std::swap(vars[static_cast<std::size_t>(i)], vars[j]);
      lits.push_back({vars[static_cast<std::size_t>(i)], (rng() & 1ULL) != 0});
    }
    clauses.emplace_back(std::move(lits));
  }
  return Formula::over_range(n, std::move(clauses));
}

}  // namespace forestbd
