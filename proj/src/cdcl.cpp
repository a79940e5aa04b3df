#include "mrt/cdcl.hpp"

#include <string>
#include <unordered_map>

namespace mrt {

namespace {

std::unordered_map<int, bool> prefix_assignment(const Trail& t,
                                                std::size_t prefix) {
  std::unordered_map<int, bool> alpha;
  for (std::size_t i = 0; i < prefix && i < t.entries.size(); ++i) {
    Lit l = t.entries[i].lit;
    alpha[var_of(l)] = positive(l);
  }
  return alpha;
}

// Restriction of c: nullopt when satisfied, otherwise the unassigned part.
std::optional<Clause> restrict_clause(
    const Clause& c, const std::unordered_map<int, bool>& alpha) {
  std::vector<Lit> rest;
  for (Lit l : c.lits()) {
    auto it = alpha.find(var_of(l));
    if (it == alpha.end()) {
      rest.push_back(l);
    } else if (it->second == positive(l)) {
      return std::nullopt;
    }
  }
  return Clause(std::move(rest));
}

}  // namespace

std::vector<int> Trail::decision_levels() const {
  std::vector<int> dl(entries.size());
  int level = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].decision()) ++level;
    dl[i] = level;
  }
  return dl;
}

int Trail::last_decision() const {
  for (int i = static_cast<int>(entries.size()) - 1; i >= 0; --i)
    if (entries[i].decision()) return i;
  return -1;
}

std::optional<bool> Trail::value(Lit l, std::size_t prefix) const {
  for (std::size_t i = 0; i < prefix && i < entries.size(); ++i)
    if (var_of(entries[i].lit) == var_of(l))
      return positive(entries[i].lit) == positive(l);
  return std::nullopt;
}

ValidityReport validate_trail(const Trail& t, const CnfFormula& f) {
  std::unordered_map<int, bool> alpha;
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const TrailEntry& e = t.entries[i];
    int v = var_of(e.lit);
    if (v == 0 || v > f.num_vars())
      return {false, static_cast<int>(i),
              "position " + std::to_string(i) + " assigns variable " +
                  std::to_string(v) + " outside the formula"};
    if (alpha.count(v))
      return {false, static_cast<int>(i),
              "position " + std::to_string(i) + " reassigns variable " +
                  std::to_string(v)};
    if (e.decision()) {
      for (std::size_t ci = 0; ci < f.size(); ++ci) {
        auto rest = restrict_clause(f.clause(ci), alpha);
        if (rest && rest->size() == 1)
          return {false, static_cast<int>(i),
                  "decision at position " + std::to_string(i) +
                      " while clause " + std::to_string(ci) +
                      " propagates " + std::to_string(rest->lits()[0])};
      }
    } else {
      if (e.reason >= static_cast<int>(f.size()))
        return {false, static_cast<int>(i),
                "position " + std::to_string(i) + " cites clause " +
                    std::to_string(e.reason) + " outside the database"};
      auto rest = restrict_clause(f.clause(e.reason), alpha);
      if (!rest || *rest != Clause{e.lit})
        return {false, static_cast<int>(i),
                "position " + std::to_string(i) + ": clause " +
                    std::to_string(e.reason) +
                    " does not propagate exactly " +
                    std::to_string(e.lit)};
    }
    alpha[v] = positive(e.lit);
  }
  return {};
}

Proof conflict_derivation(const Trail& t, const CnfFormula& f,
                          int falsified) {
  if (falsified < 0 || falsified >= static_cast<int>(f.size()))
    throw error("conflict_derivation: clause index out of range");
  const Clause& base = f.clause(falsified);
  auto alpha = prefix_assignment(t, t.entries.size());
  for (Lit l : base.lits()) {
    auto it = alpha.find(var_of(l));
    if (it == alpha.end() || it->second == positive(l))
      throw error("conflict_derivation: clause " +
                  std::to_string(falsified) +
                  " is not falsified by the trail");
  }
  ProofBuilder b;
  int cur = b.add_axiom(base);
  int stop = t.last_decision();
  for (int i = static_cast<int>(t.entries.size()) - 1; i > stop; --i) {
    const TrailEntry& e = t.entries[i];
    if (e.decision()) continue;
    if (!b.clause(cur).contains(-e.lit)) continue;
    cur = b.add_resolution(cur, b.add_axiom(f.clause(e.reason)),
                           var_of(e.lit));
  }
  return b.take();
}

bool is_asserting(const Clause& c, const Trail& t) {
  int istar = t.last_decision();
  std::size_t prefix = istar < 0 ? 0 : static_cast<std::size_t>(istar);
  int unassigned = 0;
  for (Lit l : c.lits()) {
    auto v = t.value(l, prefix);
    if (!v) {
      ++unassigned;
    } else if (*v) {
      return false;  // satisfied before the last decision
    }
  }
  return unassigned == 1;
}

UipResult first_uip(const Proof& d, const Trail& t) {
  // the chain lists D_|tau| (base axiom) then each distinct later D, in
  // decreasing trail-index order
  bool have_base = false;
  for (const ProofStep& s : d.steps()) {
    if (s.kind == StepKind::Axiom && !have_base) {
      have_base = true;  // the first axiom is the falsified clause
      if (is_asserting(s.clause, t)) return {s.clause, s.id};
    } else if (s.kind == StepKind::Resolution) {
      if (is_asserting(s.clause, t)) return {s.clause, s.id};
    }
  }
  throw error("first_uip: no asserting clause in the derivation");
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Episode random_episode(const CnfFormula& f, std::uint64_t seed) {
  Episode ep;
  std::unordered_map<int, bool> alpha;
  std::uint64_t state = seed;
  auto assign = [&](Lit l, int reason) {
    ep.trail.entries.push_back({l, reason});
    alpha[var_of(l)] = positive(l);
  };
  while (true) {
    // saturate: lowest-index falsified clause stops, lowest-index unit fires
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t ci = 0; ci < f.size(); ++ci) {
        auto rest = restrict_clause(f.clause(ci), alpha);
        if (!rest) continue;
        if (rest->empty()) {
          ep.conflict = static_cast<int>(ci);
          return ep;
        }
        if (rest->size() == 1) {
          assign(rest->lits()[0], static_cast<int>(ci));
          changed = true;
          break;
        }
      }
    }
    int next = 0;
    for (int v = 1; v <= f.num_vars(); ++v)
      if (!alpha.count(v)) {
        next = v;
        break;
      }
    if (next == 0) {
      ep.exhausted = true;
      return ep;
    }
    bool polarity = splitmix64(state) & 1;
    assign(polarity ? next : -next, -1);
  }
}

}  // namespace mrt
