#pragma once

#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "forestbd/errors.hpp"
#include "forestbd/formula.hpp"

namespace forestbd {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when a routine that requires a forest incidence graph gets a cycle.
class CyclicInputError : public ContractError {
 public:
  using ContractError::ContractError;
};

struct ModelCount {
  BigInt count;
  std::size_t universe_size = 0;
};

/// Satisfying assignment over universe(F) for an acyclic formula, or nullopt
/// if F is unsatisfiable. Throws CyclicInputError on a cyclic formula.
std::optional<Assignment> solve_acyclic_sat(const Formula& f);

/// Number of assignments of `universe` satisfying every clause of an acyclic
/// formula. Variables of `universe` absent from F contribute a factor 2 each.
ModelCount count_acyclic_models(const Formula& f, const VarSet& universe);
inline ModelCount count_acyclic_models(const Formula& f) {
  return count_acyclic_models(f, f.universe());
}

}  // namespace forestbd
