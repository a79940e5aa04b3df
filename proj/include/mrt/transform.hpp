#pragma once

#include "mrt/cnf.hpp"
#include "mrt/proof.hpp"

namespace mrt {

/// Turns a tree-like derivation with no internal merge (the root may be one)
/// into an input derivation of a subclause of its root, of no greater
/// length. Intermediate clauses with opposite literals arise during the
/// rewrite; they are replaced by satisfied placeholders and cleaned up with
/// syntactic_equivalent.
Proof tree_to_input(const Proof& p);

/// Turns any tree-like derivation into one where every inference has a
/// premise that is an axiom or a merge, concluding a subclause of the root,
/// of no greater length. Induction on the number of merges: the lowest
/// merge-only subtree is converted to an input derivation, split at its
/// last merge, and the fragments are substituted back.
Proof tree_to_merge(const Proof& p);

/// Re-serializes a derivation satisfying the axiom-or-merge premise
/// condition into an input-structured sequence whose lemmas are exactly the
/// reusable merges; the result classifies as RML.
Proof decompose_input_structured(const Proof& p);

/// Res -> RML simulation. The output refutes f, classifies rml, and has
/// length at most (2n+1)L + n for n = f.num_vars() and L = stats(pi).length.
Proof simulate_rml(const Proof& pi, const CnfFormula& f);

/// Res -> LREML simulation: blocks are segments of strongly regular input
/// derivations cut at the first 1-empowering clause, so every lemma is a
/// merge, 1-empowering when learned, and each block strongly regular.
/// Same length budget as simulate_rml.
Proof simulate_lreml(const Proof& pi, const CnfFormula& f);

/// Strongly regular equivalent of an input derivation: re-derives the
/// conclusion from the derivation's own leaves by unit propagation. At most
/// one resolution per variable.
Proof regularize_input(const Proof& d);

}  // namespace mrt
