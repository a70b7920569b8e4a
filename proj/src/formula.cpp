#include "forestbd/formula.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

#include "forestbd/errors.hpp"

namespace forestbd {

Literal Literal::from_dimacs(int lit) {
  if (lit == 0) throw ParseError("literal 0 is reserved as clause terminator");
  return {lit > 0 ? lit : -lit, lit > 0};
}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (literals_[i].var < 1) throw ParseError("variable ids must be >= 1");
    if (i > 0 && literals_[i].var == literals_[i - 1].var) {
      throw ParseError("clause contains complementary literals of variable " +
                       std::to_string(literals_[i].var));
    }
  }
}

Clause Clause::from_dimacs(std::span<const int> lits) {
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (int l : lits) out.push_back(Literal::from_dimacs(l));
  return Clause(std::move(out));
}

const Literal* Clause::find(Var var) const {
  auto it = std::lower_bound(literals_.begin(), literals_.end(), Literal{var, false});
  if (it != literals_.end() && it->var == var) return &*it;
  return nullptr;
}

bool Clause::contains(Literal lit) const {
  const Literal* l = find(lit.var);
  return l != nullptr && l->positive == lit.positive;
}

Formula::Formula(std::vector<Clause> clauses, VarSet universe)
    : clauses_(std::move(clauses)), universe_(make_varset(std::move(universe))) {
  if (!universe_.empty() && universe_.front() < 1) {
    throw ContractError("variable ids must be >= 1");
  }
  for (const Clause& c : clauses_) {
    for (const Literal& l : c.literals()) {
      if (!in_universe(l.var)) {
        throw ContractError("clause variable " + std::to_string(l.var) +
                            " is outside the universe");
      }
    }
  }
}

Formula Formula::over_range(int n, std::vector<Clause> clauses) {
  VarSet universe(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) universe[i] = i + 1;
  return Formula(std::move(clauses), std::move(universe));
}

bool Formula::in_universe(Var v) const { return contains(universe_, v); }

VarSet Formula::occurring_vars() const {
  VarSet vars;
  for (const Clause& c : clauses_) {
    for (const Literal& l : c.literals()) vars.push_back(l.var);
  }
  return make_varset(std::move(vars));
}

std::size_t Formula::length() const {
  std::size_t total = 0;
  for (const Clause& c : clauses_) total += c.size();
  return total;
}

bool Formula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.empty(); });
}

namespace {

// Whitespace tokenizer over DIMACS text that skips comment lines.
class DimacsReader {
 public:
  explicit DimacsReader(std::string_view text) : text_(text) {}

  // Next non-comment line, trimmed of the newline. False at end of input.
  bool next_line(std::string_view& line) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      std::size_t first = line.find_first_not_of(" \t\r");
      if (first == std::string_view::npos) continue;
      line.remove_prefix(first);
      if (line.front() == 'c') continue;
      return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool to_int(std::string_view tok, long long& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

Formula parse_dimacs(std::string_view text) {
  DimacsReader reader(text);
  std::string_view line;
  if (!reader.next_line(line)) throw ParseError("missing 'p cnf' header");
  auto header = split_ws(line);
  long long n = 0, m = 0;
  if (header.size() != 4 || header[0] != "p" || header[1] != "cnf" ||
      !to_int(header[2], n) || !to_int(header[3], m) || n < 0 || m < 0 ||
      n > (1LL << 30)) {
    throw ParseError("malformed header on line " + std::to_string(reader.line_no()) +
                     ": expected 'p cnf <vars> <clauses>'");
  }

  std::vector<Clause> clauses;
  std::vector<int> pending;
  bool done = false;
  while (!done && reader.next_line(line)) {
    if (line.front() == '%') break;  // SATLIB end marker
    for (std::string_view tok : split_ws(line)) {
      long long value = 0;
      if (!to_int(tok, value)) {
        throw ParseError("line " + std::to_string(reader.line_no()) +
                         ": expected integer literal, got '" + std::string(tok) + "'");
      }
      if (value == 0) {
        if (static_cast<long long>(clauses.size()) == m) {
          throw ParseError("more clauses than declared in header");
        }
        clauses.push_back(Clause::from_dimacs(pending));
        pending.clear();
        continue;
      }
      if (value > n || value < -n) {
        throw ParseError("line " + std::to_string(reader.line_no()) + ": variable " +
                         std::to_string(value < 0 ? -value : value) +
                         " exceeds declared count " + std::to_string(n));
      }
      pending.push_back(static_cast<int>(value));
    }
  }
  if (!pending.empty()) throw ParseError("last clause is not terminated by 0");
  if (static_cast<long long>(clauses.size()) != m) {
    throw ParseError("header declares " + std::to_string(m) + " clauses, found " +
                     std::to_string(clauses.size()));
  }
  return Formula::over_range(static_cast<int>(n), std::move(clauses));
}

Formula parse_dimacs(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_dimacs(std::string_view(text));
}

std::string emit_dimacs(const Formula& f) {
  // DIMACS numbers variables 1..n, so the header carries the largest id.
  Var n = f.universe().empty() ? 0 : f.universe().back();
  std::ostringstream out;
  out << "p cnf " << n << ' ' << f.num_clauses() << '\n';
  for (const Clause& c : f.clauses()) {
    for (const Literal& l : c.literals()) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

Formula apply_assignment(const Formula& f, const Assignment& tau) {
  for (const auto& [v, value] : tau) {
    if (!f.in_universe(v)) {
      throw ContractError("assignment mentions variable " + std::to_string(v) +
                          " outside the universe");
    }
  }
  if (tau.empty()) return f;

  std::vector<Clause> out;
  out.reserve(f.num_clauses());
  for (const Clause& c : f.clauses()) {
    bool satisfied = false;
    std::vector<Literal> kept;
    kept.reserve(c.size());
    for (const Literal& l : c.literals()) {
      auto it = tau.find(l.var);
      if (it == tau.end()) {
        kept.push_back(l);
      } else if (it->second == l.positive) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.emplace_back(std::move(kept));
  }
  VarSet universe;
  universe.reserve(f.num_vars());
  for (Var v : f.universe()) {
    if (!tau.contains(v)) universe.push_back(v);
  }
  return Formula(std::move(out), std::move(universe));
}

Formula delete_vars(const Formula& f, const VarSet& vars) {
  VarSet removed = make_varset(vars);
  if (!is_subset(removed, f.universe())) {
    throw ContractError("deleted variables must belong to the universe");
  }
  std::vector<Clause> out;
  out.reserve(f.num_clauses());
  for (const Clause& c : f.clauses()) {
    std::vector<Literal> kept;
    for (const Literal& l : c.literals()) {
      if (!contains(removed, l.var)) kept.push_back(l);
    }
    out.emplace_back(std::move(kept));
  }
  return Formula(std::move(out), set_difference(f.universe(), removed));
}

std::size_t max_clause_width(const Formula& f) {
  std::size_t width = 0;
  for (const Clause& c : f.clauses()) width = std::max(width, c.size());
  return width;
}

bool satisfies(const Formula& f, const Assignment& tau) {
  for (const Clause& c : f.clauses()) {
    bool sat = false;
    for (const Literal& l : c.literals()) {
      auto it = tau.find(l.var);
      bool value = it != tau.end() && it->second;
      if (value == l.positive) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

VarSet make_varset(std::vector<Var> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool contains(const VarSet& set, Var v) {
  return std::binary_search(set.begin(), set.end(), v);
}

VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarSet set_difference(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const VarSet& a, const VarSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace forestbd
