#include "forestbd/detail/search.hpp"

namespace forestbd::detail {

std::string formula_key(const Formula& f) {
  std::string key;
  key.reserve(8 * (f.num_vars() + f.length()));
  for (Var v : f.universe()) {
    key += std::to_string(v);
    key += ' ';
  }
  key += '|';
  for (const Clause& c : f.clauses()) {
    for (const Literal& l : c.literals()) {
      key += std::to_string(l.dimacs());
      key += ' ';
    }
    key += '0';
  }
  return key;
}

}  // namespace forestbd::detail
