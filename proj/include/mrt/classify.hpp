#pragma once

#include <map>
#include <string>
#include <vector>

#include "mrt/cnf.hpp"
#include "mrt/proof.hpp"

namespace mrt {

/// Where each proof system's flag comes from:
///   - input_shaped: the whole proof is one input derivation
///   - rml: input-structured and every lemma is a merge
///   - rma_structured: input-structured and every non-final block contains
///     a merge
///   - rma_general: ignores lemma marks; every derived step with out-degree
///     above one has a merge among its ancestors (itself included)
///   - lrml / lrma: the locally regular refinements (every block strongly
///     regular)
///   - rel: every lemma is 1-empowering with respect to the axioms plus the
///     earlier lemmas
///   - lreml: lrml and rel
struct ClassificationReport {
  bool valid_resolution = false;
  bool tree_like = false;
  bool input_shaped = false;
  bool rml = false;
  bool rma_structured = false;
  bool rma_general = false;
  bool lrml = false;
  bool lrma = false;
  bool rel = false;
  bool lreml = false;
  /// flag name -> first violation, for flags that are false
  std::map<std::string, std::string> diagnostics;

  std::string str() const;
};

ClassificationReport classify(const Proof& p, const CnfFormula& f);

/// Checks the input-structured block decomposition induced by the lemma
/// marks: every block is an input derivation over the axioms and earlier
/// lemmas, non-lemma steps are never consumed outside their block, and a
/// marked step closes its block.
ValidityReport check_input_structured(const Proof& p);

/// Ids of the derived steps of each block, in order (axioms excluded).
/// Requires check_input_structured to pass.
std::vector<std::vector<int>> block_partition(const Proof& p);

/// Strong regularity of a single derivation: after each resolution step,
/// the pivot variable never occurs in a later clause of the sequence
/// (premises at their use position included).
bool check_strongly_regular(const Proof& p);

}  // namespace mrt
