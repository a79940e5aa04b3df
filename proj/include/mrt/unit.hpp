#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mrt/cnf.hpp"
#include "mrt/proof.hpp"

namespace mrt {

/// Result of exhaustive unit propagation. `propagated` records each derived
/// literal with the index of its antecedent clause, in firing order; the
/// final assignment includes the initial literals.
struct PropagationTrace {
  std::vector<std::pair<Lit, int>> propagated;
  bool conflict = false;
  int conflict_clause = -1;  // index of the falsified clause
  std::unordered_map<int, bool> assignment;

  std::optional<bool> value(Lit l) const;
};

/// Deterministic BCP: clauses are scanned in index order, the lowest-index
/// unit fires first, and a falsified clause at a lower index than any unit
/// stops the run. `alpha` must be consistent.
PropagationTrace unit_propagate(const CnfFormula& f,
                                const std::vector<Lit>& alpha = {});

/// Input derivation of some C' subset of c from f, or nullopt when no such
/// derivation exists. Runs unit propagation under the negation of c and, on
/// conflict, resolves antecedents in reverse firing order. The output is
/// strongly regular with at most num_vars resolution steps.
std::optional<Proof> input_derive(const CnfFormula& f, const Clause& c);

struct EmpowermentResult {
  bool empowering = false;
  Lit witness = 0;  // a literal of c when empowering

  explicit operator bool() const { return empowering; }
};

/// 1-empowerment of c with respect to f: some literal l of c such that
/// propagating the negation of c minus l neither conflicts nor assigns l.
/// A clause that is not 1-empowering is absorbed.
EmpowermentResult is_empowering(const CnfFormula& f, const Clause& c);

/// Membership of c in the input closure of d: d derives some subclause of c
/// by input resolution.
bool cl_i_member(const CnfFormula& d, const Clause& c);

}  // namespace mrt
