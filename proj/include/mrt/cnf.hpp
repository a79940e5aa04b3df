#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mrt {

// Literals use the DIMACS convention: variable index v >= 1, literal +v or -v.
using Lit = int;

inline int var_of(Lit l) { return l < 0 ? -l : l; }
inline bool positive(Lit l) { return l > 0; }

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A clause: duplicate-free disjunction of literals, kept sorted by
/// (variable, sign) so that equality is canonical and resolution is linear.
/// The empty clause is a valid value and means "false".
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<Lit> lits);
  explicit Clause(std::vector<Lit> lits);

  const std::vector<Lit>& lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  bool contains(Lit l) const;
  bool contains_var(int v) const;
  /// Both polarities of some variable present.
  bool tautological() const;
  /// Set of variables, ascending.
  std::vector<int> support() const;

  bool subset_of(const Clause& other) const;
  int max_var() const;

  /// Union of literals, deduplicated.
  Clause union_with(const Clause& other) const;
  /// This clause with every literal over `v` removed.
  Clause without_var(int v) const;

  bool operator==(const Clause& other) const { return lits_ == other.lits_; }
  bool operator!=(const Clause& other) const { return lits_ != other.lits_; }
  bool operator<(const Clause& other) const { return lits_ < other.lits_; }

  std::string str() const;

 private:
  void canonicalize();
  std::vector<Lit> lits_;
};

/// Res(A or x, B or not-x) = A or B. The pivot must occur with opposite
/// polarities in the two premises; the result may be tautological (flagged
/// via Clause::tautological, never rejected here).
Clause resolve(const Clause& a, const Clause& b, int pivot);

/// True iff the resolvent of a and b over pivot is a merge: the premises
/// share a literal besides the pivot.
bool is_merge(const Clause& a, const Clause& b, int pivot);

/// A CNF formula: ordered clause list plus a variable bound.
class CnfFormula {
 public:
  CnfFormula() = default;
  CnfFormula(std::vector<Clause> clauses, int num_vars);

  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_.at(i); }
  std::size_t size() const { return clauses_.size(); }
  int num_vars() const { return num_vars_; }

  void add_clause(Clause c);
  /// Index of a clause equal to `c`, or -1.
  int find_clause(const Clause& c) const;

  bool operator==(const CnfFormula& other) const {
    return num_vars_ == other.num_vars_ && clauses_ == other.clauses_;
  }

 private:
  std::vector<Clause> clauses_;
  int num_vars_ = 0;
};

/// Partial assignment: variable -> {0, 1}; unmapped variables are free ("*").
class Restriction {
 public:
  Restriction() = default;

  void set(int var, bool value);
  std::optional<bool> value(int var) const;
  bool empty() const { return map_.empty(); }
  const std::unordered_map<int, bool>& map() const { return map_; }

  std::optional<bool> eval(Lit l) const;

 private:
  std::unordered_map<int, bool> map_;
};

/// Restricted clause: nullopt plays the role of the satisfied placeholder
/// "1" (always true, supported nowhere, never resolvable).
std::optional<Clause> apply_restriction(const Clause& c, const Restriction& rho);

/// Restricted formula: satisfied clauses dropped, falsified literals removed.
CnfFormula apply_restriction(const CnfFormula& f, const Restriction& rho);

CnfFormula parse_dimacs(const std::string& text);
CnfFormula parse_dimacs_file(const std::string& path);
std::string write_dimacs(const CnfFormula& f);

std::ostream& operator<<(std::ostream& os, const Clause& c);

}  // namespace mrt
