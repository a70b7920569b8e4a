#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace forestbd {

/// Variable identifier, always >= 1 (DIMACS numbering).
using Var = int;

/// Sorted, duplicate-free list of variables.
using VarSet = std::vector<Var>;

/// Partial truth assignment.
using Assignment = std::map<Var, bool>;

struct Literal {
  Var var = 0;
  bool positive = true;

  static Literal from_dimacs(int lit);
  int dimacs() const { return positive ? var : -var; }
  Literal negated() const { return {var, !positive}; }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// A disjunction of literals over pairwise distinct variables, kept sorted by
/// variable id.
class Clause {
 public:
  Clause() = default;

  /// Collapses duplicate literals; throws ParseError on a complementary pair
  /// or a zero / negative variable.
  explicit Clause(std::vector<Literal> literals);
  static Clause from_dimacs(std::span<const int> lits);

  const std::vector<Literal>& literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }

  /// Literal of `var` in this clause, or nullptr when absent.
  const Literal* find(Var var) const;
  bool contains(Literal lit) const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> literals_;
};

/// CNF formula: ordered clause list over an explicit variable universe.
/// Clause positions are the stable identifiers used by the graph layer.
class Formula {
 public:
  Formula() = default;

  /// Throws ContractError if a clause mentions a variable outside `universe`.
  Formula(std::vector<Clause> clauses, VarSet universe);

  /// Universe {1..n}.
  static Formula over_range(int n, std::vector<Clause> clauses);

  const std::vector<Clause>& clauses() const { return clauses_; }
  const VarSet& universe() const { return universe_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  std::size_t num_vars() const { return universe_.size(); }

  bool in_universe(Var v) const;
  /// Variables that occur in at least one clause.
  VarSet occurring_vars() const;
  /// Sum of clause sizes.
  std::size_t length() const;
  bool has_empty_clause() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::vector<Clause> clauses_;
  VarSet universe_;
};

Formula parse_dimacs(std::string_view text);
Formula parse_dimacs(std::istream& in);
std::string emit_dimacs(const Formula& f);

/// F[tau]: satisfied clauses dropped, falsified literals stripped, assigned
/// variables leave the universe. Empty clauses are kept.
Formula apply_assignment(const Formula& f, const Assignment& tau);

/// F - B: every occurrence of a B variable removed; clause count unchanged.
Formula delete_vars(const Formula& f, const VarSet& vars);

std::size_t max_clause_width(const Formula& f);

/// Whether `tau` satisfies every clause. Variables missing from `tau` count as
/// false.
bool satisfies(const Formula& f, const Assignment& tau);

// Small helpers on sorted variable sets.
VarSet make_varset(std::vector<Var> vars);
bool contains(const VarSet& set, Var v);
VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_difference(const VarSet& a, const VarSet& b);
bool is_subset(const VarSet& a, const VarSet& b);

}  // namespace forestbd
