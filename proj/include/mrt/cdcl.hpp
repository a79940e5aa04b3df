#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mrt/cnf.hpp"
#include "mrt/proof.hpp"

namespace mrt {

/// One trail position: an assigned literal together with the index of its
/// reason clause in the database, or -1 for a decision.
struct TrailEntry {
  Lit lit = 0;
  int reason = -1;

  bool decision() const { return reason < 0; }
};

/// A CDCL trail. Positions are 0-based; the prefix assignment alpha_{<i}
/// consists of the literals of entries 0..i-1.
struct Trail {
  std::vector<TrailEntry> entries;

  std::size_t size() const { return entries.size(); }
  /// Decision level at each position (number of decisions up to and
  /// including it).
  std::vector<int> decision_levels() const;
  /// Position of the last decision, or -1 when the trail has none.
  int last_decision() const;
  /// Value of l under the first `prefix` entries; nullopt when unassigned.
  std::optional<bool> value(Lit l, std::size_t prefix) const;
};

/// Trail validity: each propagated entry's reason clause, restricted by the
/// preceding assignment, is exactly the unit literal placed; and before
/// each decision, propagation is saturated (no clause of f is unit under
/// the preceding assignment with its literal missing from the trail). The
/// assignment must also be consistent.
ValidityReport validate_trail(const Trail& t, const CnfFormula& f);

/// The conflict derivation from a falsified clause: walk the trail
/// backward from the end to the last decision, resolving the running
/// clause with the reason of each position whose variable it contains.
/// Output is an input-shaped proof whose chain lists the distinct clauses
/// D_|tau|, ..., D_{i*} in walk order. Requires a valid trail; throws when
/// f.clause(falsified) is not falsified by the full assignment.
Proof conflict_derivation(const Trail& t, const CnfFormula& f, int falsified);

/// Asserting clause: unit under the assignment preceding the last
/// decision (exactly one literal unassigned, the rest false). With no
/// decision in the trail this degenerates to being a unit clause.
bool is_asserting(const Clause& c, const Trail& t);

struct UipResult {
  Clause clause;
  int step_id = 0;  // step of the conflict derivation producing the clause
};

/// The first asserting clause of a conflict derivation, scanning from the
/// conflict end (largest trail index first). Throws if none is asserting,
/// which cannot happen for derivations of valid trails with a decision.
UipResult first_uip(const Proof& d, const Trail& t);

struct Episode {
  Trail trail;
  int conflict = -1;     // falsified clause index, or -1
  bool exhausted = false;  // every variable assigned, no conflict
};

/// Deterministic decide-and-propagate run: saturate unit propagation
/// (lowest clause index first), then decide the lowest-index unassigned
/// variable with a polarity drawn from a splitmix64 stream seeded by
/// `seed`; stop at the first falsified clause. Conflicts at decision level
/// zero are reported like any other; callers filter them as needed.
Episode random_episode(const CnfFormula& f, std::uint64_t seed);

/// The splitmix64 generator used for episode polarities, exposed so that
/// the sequence is reproducible outside this module.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace mrt
