#include "mrt/cnf.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mrt {

namespace {
bool lit_less(Lit a, Lit b) {
  if (var_of(a) != var_of(b)) return var_of(a) < var_of(b);
  return a < b;  // negative polarity first within a variable
}
}  // namespace

Clause::Clause(std::initializer_list<Lit> lits) : lits_(lits) { canonicalize(); }
Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) { canonicalize(); }

void Clause::canonicalize() {
  for (Lit l : lits_)
    if (l == 0) throw error("literal 0 is not valid");
  std::sort(lits_.begin(), lits_.end(), lit_less);
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l, lit_less);
}

bool Clause::contains_var(int v) const { return contains(v) || contains(-v); }

bool Clause::tautological() const {
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (var_of(lits_[i]) == var_of(lits_[i - 1])) return true;
  return false;
}

std::vector<int> Clause::support() const {
  std::vector<int> vars;
  for (Lit l : lits_)
    if (vars.empty() || vars.back() != var_of(l)) vars.push_back(var_of(l));
  return vars;
}

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(),
                       lits_.end(), lit_less);
}

int Clause::max_var() const { return lits_.empty() ? 0 : var_of(lits_.back()); }

Clause Clause::union_with(const Clause& other) const {
  std::vector<Lit> merged;
  merged.reserve(lits_.size() + other.lits_.size());
  std::merge(lits_.begin(), lits_.end(), other.lits_.begin(), other.lits_.end(),
             std::back_inserter(merged), lit_less);
  Clause result;
  result.lits_ = std::move(merged);
  result.lits_.erase(std::unique(result.lits_.begin(), result.lits_.end()),
                     result.lits_.end());
  return result;
}

Clause Clause::without_var(int v) const {
  Clause result;
  for (Lit l : lits_)
    if (var_of(l) != v) result.lits_.push_back(l);
  return result;
}

std::string Clause::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

Clause resolve(const Clause& a, const Clause& b, int pivot) {
  if (pivot <= 0) throw error("pivot must be a positive variable index");
  bool a_pos = a.contains(pivot), a_neg = a.contains(-pivot);
  bool b_pos = b.contains(pivot), b_neg = b.contains(-pivot);
  bool ok = (a_pos && !a_neg && b_neg && !b_pos) ||
            (a_neg && !a_pos && b_pos && !b_neg);
  if (!ok)
    throw error("invalid resolution: pivot " + std::to_string(pivot) +
                " must occur positively in exactly one premise and negatively "
                "in the other");
  return a.without_var(pivot).union_with(b.without_var(pivot));
}

bool is_merge(const Clause& a, const Clause& b, int pivot) {
  bool a_pos = a.contains(pivot), a_neg = a.contains(-pivot);
  bool b_pos = b.contains(pivot), b_neg = b.contains(-pivot);
  bool ok = (a_pos && !a_neg && b_neg && !b_pos) ||
            (a_neg && !a_pos && b_pos && !b_neg);
  if (!ok)
    throw error("invalid resolution: pivot " + std::to_string(pivot) +
                " must occur positively in exactly one premise and negatively "
                "in the other");
  const Clause ra = a.without_var(pivot);
  for (Lit l : b.lits())
    if (var_of(l) != pivot && ra.contains(l)) return true;
  return false;
}

CnfFormula::CnfFormula(std::vector<Clause> clauses, int num_vars)
    : clauses_(std::move(clauses)), num_vars_(num_vars) {
  for (const Clause& c : clauses_)
    if (c.max_var() > num_vars_)
      throw error("clause literal exceeds declared variable count");
}

void CnfFormula::add_clause(Clause c) {
  if (c.max_var() > num_vars_) num_vars_ = c.max_var();
  clauses_.push_back(std::move(c));
}

int CnfFormula::find_clause(const Clause& c) const {
  for (std::size_t i = 0; i < clauses_.size(); ++i)
    if (clauses_[i] == c) return static_cast<int>(i);
  return -1;
}

void Restriction::set(int var, bool value) {
  if (var <= 0) throw error("restriction variable must be positive");
  map_[var] = value;
}

std::optional<bool> Restriction::value(int var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::optional<bool> Restriction::eval(Lit l) const {
  auto v = value(var_of(l));
  if (!v) return std::nullopt;
  return positive(l) ? *v : !*v;
}

std::optional<Clause> apply_restriction(const Clause& c, const Restriction& rho) {
  std::vector<Lit> kept;
  for (Lit l : c.lits()) {
    auto v = rho.eval(l);
    if (!v) {
      kept.push_back(l);
    } else if (*v) {
      return std::nullopt;  // satisfied
    }
    // falsified literal: dropped
  }
  return Clause(std::move(kept));
}

CnfFormula apply_restriction(const CnfFormula& f, const Restriction& rho) {
  CnfFormula out;
  for (const Clause& c : f.clauses()) {
    auto rc = apply_restriction(c, rho);
    if (rc) out.add_clause(std::move(*rc));
  }
  if (out.num_vars() < f.num_vars()) {
    out = CnfFormula(out.clauses(), f.num_vars());
  }
  return out;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  int num_vars = -1;
  long declared_clauses = -1;
  std::vector<Clause> clauses;
  std::vector<Lit> current;
  bool in_clause = false;

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == 'c') continue;
    std::istringstream ls(line);
    while (ls >> token) {
      if (token == "c") break;
      if (token == "p") {
        std::string fmt;
        if (!(ls >> fmt) || fmt != "cnf" || !(ls >> num_vars) ||
            !(ls >> declared_clauses) || num_vars < 0 || declared_clauses < 0)
          throw error("malformed DIMACS header");
        continue;
      }
      if (num_vars < 0) throw error("DIMACS literal before header");
      long lit;
      try {
        lit = std::stol(token);
      } catch (const std::exception&) {
        throw error("malformed DIMACS token: " + token);
      }
      if (lit == 0) {
        clauses.emplace_back(std::move(current));
        current.clear();
        in_clause = false;
      } else {
        if (lit > num_vars || lit < -num_vars)
          throw error("literal " + token + " out of range");
        current.push_back(static_cast<Lit>(lit));
        in_clause = true;
      }
    }
  }
  if (num_vars < 0) throw error("missing DIMACS header");
  if (in_clause) throw error("clause missing terminating 0");
  if (declared_clauses >= 0 &&
      static_cast<long>(clauses.size()) != declared_clauses)
    throw error("clause count does not match header");
  return CnfFormula(std::move(clauses), num_vars);
}

CnfFormula parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars() << " " << f.size() << "\n";
  for (const Clause& c : f.clauses()) {
    for (Lit l : c.lits()) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Clause& c) {
  os << "(";
  bool first = true;
  for (Lit l : c.lits()) {
    if (!first) os << " ";
    os << l;
    first = false;
  }
  return os << ")";
}

}  // namespace mrt
