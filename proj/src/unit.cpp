#include "mrt/unit.hpp"

#include <algorithm>

namespace mrt {

std::optional<bool> PropagationTrace::value(Lit l) const {
  auto it = assignment.find(var_of(l));
  if (it == assignment.end()) return std::nullopt;
  return positive(l) ? it->second : !it->second;
}

PropagationTrace unit_propagate(const CnfFormula& f,
                                const std::vector<Lit>& alpha) {
  PropagationTrace tr;
  for (Lit l : alpha) {
    auto v = tr.value(l);
    if (v && !*v) throw error("inconsistent initial assignment");
    tr.assignment[var_of(l)] = positive(l);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Clause& c = f.clause(i);
      Lit unit = 0;
      bool satisfied = false;
      int free = 0;
      for (Lit l : c.lits()) {
        auto v = tr.value(l);
        if (!v) {
          ++free;
          unit = l;
        } else if (*v) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      if (free == 0) {
        tr.conflict = true;
        tr.conflict_clause = static_cast<int>(i);
        return tr;
      }
      if (free == 1) {
        tr.assignment[var_of(unit)] = positive(unit);
        tr.propagated.emplace_back(unit, static_cast<int>(i));
        changed = true;
        break;  // rescan from the lowest index
      }
    }
  }
  return tr;
}

std::optional<Proof> input_derive(const CnfFormula& f, const Clause& c) {
  if (c.tautological()) throw error("input_derive: tautological target");
  std::vector<Lit> neg;
  for (Lit l : c.lits()) neg.push_back(-l);
  PropagationTrace tr = unit_propagate(f, neg);
  if (!tr.conflict) return std::nullopt;

  ProofBuilder b;
  int cur = b.add_axiom(f.clause(tr.conflict_clause));
  for (auto it = tr.propagated.rbegin(); it != tr.propagated.rend(); ++it) {
    auto [lit, ante] = *it;
    if (!b.clause(cur).contains(-lit)) continue;
    int ax = b.add_axiom(f.clause(ante));
    cur = b.add_resolution(ax, cur, var_of(lit));
  }
  return b.take();
}

EmpowermentResult is_empowering(const CnfFormula& f, const Clause& c) {
  if (c.empty()) throw error("is_empowering: empty clause");
  for (Lit l : c.lits()) {
    std::vector<Lit> alpha;
    bool consistent = true;
    for (Lit k : c.lits()) {
      if (k == l) continue;
      if (k == -l) {
        consistent = false;  // negation of c minus l would assign l
        break;
      }
      alpha.push_back(-k);
    }
    if (!consistent) continue;
    PropagationTrace tr = unit_propagate(f, alpha);
    if (tr.conflict) continue;
    auto v = tr.value(l);
    if (v && *v) continue;
    return {true, l};
  }
  return {false, 0};
}

bool cl_i_member(const CnfFormula& d, const Clause& c) {
  return input_derive(d, c).has_value();
}

}  // namespace mrt
