#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mrt/cdcl.hpp"
#include "mrt/classify.hpp"
#include "mrt/cnf.hpp"
#include "mrt/proof.hpp"
#include "mrt/unit.hpp"

using namespace mrt;

namespace {

bool merge_step(const Proof& p, const ProofStep& s) {
  return s.kind == StepKind::Resolution &&
         is_merge(p.step(s.premises[0]).clause, p.step(s.premises[1]).clause,
                  s.pivot);
}

Clause random_3clause(std::mt19937& rng, int nvars) {
  std::vector<Lit> lits;
  while (lits.size() < 3) {
    int v = 1 + static_cast<int>(rng() % nvars);
    Lit l = (rng() % 2) ? v : -v;
    bool dup = false;
    for (Lit k : lits)
      if (var_of(k) == v) dup = true;
    if (!dup) lits.push_back(l);
  }
  return Clause(std::move(lits));
}

}  // namespace

TEST_CASE("validate_trail accepts and rejects the basic shapes") {
  CnfFormula f({Clause{-1, 2}}, 3);
  Trail ok;
  ok.entries = {{1, -1}, {2, 0}};
  CHECK(validate_trail(ok, f).ok);

  Trail missed;  // 2 is propagatable before the second decision
  missed.entries = {{1, -1}, {3, -1}};
  ValidityReport r = validate_trail(missed, f);
  CHECK(!r.ok);
  CHECK(r.message.find("propagates") != std::string::npos);

  Trail inconsistent;
  inconsistent.entries = {{1, -1}, {2, 0}, {-2, -1}};
  CHECK(!validate_trail(inconsistent, f).ok);

  Trail wrong_reason;  // clause 0 does not propagate 3
  wrong_reason.entries = {{1, -1}, {3, 0}};
  CHECK(!validate_trail(wrong_reason, f).ok);

  Trail foreign;  // variable outside the formula
  foreign.entries = {{5, -1}};
  CHECK(!validate_trail(foreign, f).ok);
}

TEST_CASE("trail bookkeeping") {
  Trail t;
  t.entries = {{1, -1}, {2, 0}, {3, -1}, {4, 2}};
  CHECK(t.decision_levels() == std::vector<int>{1, 1, 2, 2});
  CHECK(t.last_decision() == 2);
  CHECK(t.value(1, 4) == true);
  CHECK(t.value(-1, 4) == false);
  CHECK(!t.value(3, 2).has_value());
  Trail empty;
  CHECK(empty.last_decision() == -1);
}

TEST_CASE("conflict analysis on the four-clause example") {
  CnfFormula f({Clause{-1, 2}, Clause{-1, -2, 3}, Clause{-3, 4},
                Clause{-3, -4}},
               4);
  Trail t;
  t.entries = {{1, -1}, {2, 0}, {3, 1}, {4, 2}};
  REQUIRE(validate_trail(t, f).ok);

  Proof d = conflict_derivation(t, f, 3);
  CHECK(check_valid(d, f).ok);
  CHECK(classify(d, f).input_shaped);
  // first resolution: conflict clause against the reason of 4, pivot 4
  bool found = false;
  for (const ProofStep& s : d.steps())
    if (s.kind == StepKind::Resolution) {
      CHECK(s.clause == Clause{-3});
      found = true;
      break;
    }
  CHECK(found);
  // the walk continues down to the decision
  CHECK(d.step(d.root_id()).clause == Clause{-1});

  UipResult uip = first_uip(d, t);
  CHECK(uip.clause == Clause{-3});
  const ProofStep& us = d.step(uip.step_id);
  CHECK(us.kind == StepKind::Resolution);
  CHECK(merge_step(d, us));
  CHECK(is_asserting(uip.clause, t));
  // every derived clause is falsified by the full assignment
  for (const ProofStep& s : d.steps())
    if (s.kind == StepKind::Resolution)
      for (Lit l : s.clause.lits()) CHECK(t.value(l, t.size()) == false);
}

TEST_CASE("conflict_derivation rejects non-falsified clauses") {
  CnfFormula f({Clause{-1, 2}, Clause{1, 2}}, 2);
  Trail t;
  t.entries = {{1, -1}, {2, 0}};
  CHECK_THROWS_AS(conflict_derivation(t, f, 1), error);
  CHECK_THROWS_AS(conflict_derivation(t, f, 7), error);
}

TEST_CASE("is_asserting corner cases") {
  Trail t;
  t.entries = {{1, -1}, {2, 0}, {3, -1}};  // i* = 2, prefix assigns 1, 2
  CHECK(is_asserting(Clause{-1, 4}, t));       // -1 false, 4 unassigned
  CHECK(!is_asserting(Clause{4, 5}, t));       // two unassigned
  CHECK(!is_asserting(Clause{2, 4}, t));       // satisfied by the prefix
  CHECK(!is_asserting(Clause{-1, -2}, t));     // fully falsified
  Trail nodecision;
  nodecision.entries = {{1, 0}};
  CHECK(is_asserting(Clause{5}, nodecision));  // degenerates to unit
  CHECK(!is_asserting(Clause{4, 5}, nodecision));
}

TEST_CASE("random_episode is deterministic and frozen") {
  CnfFormula f({Clause{1, 2, 3}, Clause{-1, 2}, Clause{-2, 3},
                Clause{-3, -1}, Clause{-3, 1, -2}},
               4);
  Episode e1 = random_episode(f, 1);
  CHECK(e1.conflict == 3);
  REQUIRE(e1.trail.size() == 3);
  CHECK(e1.trail.entries[0].lit == 1);
  CHECK(e1.trail.entries[0].reason == -1);
  CHECK(e1.trail.entries[1].lit == 2);
  CHECK(e1.trail.entries[1].reason == 1);
  CHECK(e1.trail.entries[2].lit == 3);
  CHECK(e1.trail.entries[2].reason == 2);

  Episode e2 = random_episode(f, 2);
  CHECK(e2.conflict == -1);
  CHECK(e2.exhausted);
  REQUIRE(e2.trail.size() == 4);
  CHECK(e2.trail.entries[0].lit == -1);
  CHECK(e2.trail.entries[2].lit == 3);
  CHECK(e2.trail.entries[2].reason == 0);
  CHECK(e2.trail.entries[3].lit == 4);

  // replay equality
  Episode e1b = random_episode(f, 1);
  REQUIRE(e1b.trail.size() == e1.trail.size());
  for (std::size_t i = 0; i < e1.trail.size(); ++i) {
    CHECK(e1b.trail.entries[i].lit == e1.trail.entries[i].lit);
    CHECK(e1b.trail.entries[i].reason == e1.trail.entries[i].reason);
  }
}

TEST_CASE("episode trails are valid and conflicts analyze cleanly") {
  std::mt19937 rng(71);
  int conflicts = 0;
  for (int iter = 0; iter < 4000 && conflicts < 1000; ++iter) {
    int nv = 8;
    CnfFormula f;
    for (int k = 0; k < 34; ++k) f.add_clause(random_3clause(rng, nv));
    f = CnfFormula(f.clauses(), nv);
    Episode ep = random_episode(f, rng());
    REQUIRE(validate_trail(ep.trail, f).ok);
    if (ep.conflict < 0) continue;
    if (ep.trail.last_decision() < 0) continue;  // level-zero conflict
    ++conflicts;

    Proof d = conflict_derivation(ep.trail, f, ep.conflict);
    CHECK(check_valid(d, f).ok);
    CHECK(classify(d, f).input_shaped);

    UipResult uip = first_uip(d, ep.trail);
    const ProofStep& us = d.step(uip.step_id);
    // the conflict clause itself is never asserting on a valid trail
    CHECK(us.kind == StepKind::Resolution);
    CHECK(merge_step(d, us));  // the 1UIP step is a merge

    // asserting clauses in the derivation are 1-empowering pre-learning
    for (const ProofStep& s : d.steps()) {
      if (s.kind != StepKind::Resolution) continue;
      if (is_asserting(s.clause, ep.trail))
        CHECK(is_empowering(f, s.clause).empowering);
    }
  }
  CHECK(conflicts >= 1000);
}
