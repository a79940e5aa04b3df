#include "mrt/proof.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mrt {

const ProofStep& Proof::step(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw error("unknown step id " + std::to_string(id));
  return steps_[it->second];
}

int Proof::root_id() const {
  if (steps_.empty()) throw error("empty proof has no root");
  return steps_.back().id;
}

void Proof::add_step(ProofStep step) {
  if (!steps_.empty() && step.id <= steps_.back().id)
    throw error("step ids must be strictly increasing (got " +
                std::to_string(step.id) + ")");
  for (int p : step.premises)
    if (p >= 0 && !has_step(p))
      throw error("step " + std::to_string(step.id) +
                  " references unknown premise " + std::to_string(p));
  switch (step.kind) {
    case StepKind::Axiom:
      if (step.num_premises() != 0) throw error("axiom step with premises");
      break;
    case StepKind::Resolution:
      if (step.premises[0] < 0 || step.premises[1] < 0)
        throw error("resolution step needs two premises");
      break;
    case StepKind::Weakening:
      if (step.premises[0] < 0 || step.premises[1] >= 0)
        throw error("weakening step needs exactly one premise");
      break;
    case StepKind::Satisfied:
      break;
  }
  index_[step.id] = steps_.size();
  steps_.push_back(std::move(step));
}

void Proof::mark_lemma(int id) {
  if (!has_step(id)) throw error("lemma mark on unknown id " + std::to_string(id));
  lemma_marks_.insert(id);
}

std::unordered_map<int, std::vector<int>> Proof::consumers() const {
  std::unordered_map<int, std::vector<int>> out;
  for (const ProofStep& s : steps_) out[s.id];
  for (const ProofStep& s : steps_)
    for (int p : s.premises)
      if (p >= 0) {
        auto& v = out[p];
        if (v.empty() || v.back() != s.id) v.push_back(s.id);
      }
  return out;
}

namespace {
std::string clause_key(const Clause& c) {
  std::string key;
  for (Lit l : c.lits()) {
    key += std::to_string(l);
    key += ' ';
  }
  return key;
}
}  // namespace

int ProofBuilder::add_axiom(const Clause& c) {
  auto key = clause_key(c);
  auto it = axiom_ids_.find(key);
  if (it != axiom_ids_.end()) return it->second;
  ProofStep s;
  s.id = next_id_++;
  s.kind = StepKind::Axiom;
  s.clause = c;
  proof_.add_step(s);
  axiom_ids_[key] = s.id;
  return s.id;
}

int ProofBuilder::add_resolution(int p1, int p2, int pivot) {
  ProofStep s;
  s.id = next_id_++;
  s.kind = StepKind::Resolution;
  s.premises = {p1, p2};
  s.pivot = pivot;
  s.clause = resolve(proof_.step(p1).clause, proof_.step(p2).clause, pivot);
  proof_.add_step(s);
  return s.id;
}

int ProofBuilder::add_resolution(int p1, int p2) {
  const Clause& a = proof_.step(p1).clause;
  const Clause& b = proof_.step(p2).clause;
  int pivot = 0;
  for (int v : a.support()) {
    bool clash = (a.contains(v) && b.contains(-v)) ||
                 (a.contains(-v) && b.contains(v));
    bool taut_side = a.contains_var(v) && a.contains(v) && a.contains(-v);
    if (clash && !taut_side && !(b.contains(v) && b.contains(-v))) {
      if (pivot != 0)
        throw error("ambiguous pivot between " + a.str() + " and " + b.str());
      pivot = v;
    }
  }
  if (pivot == 0)
    throw error("no pivot between " + a.str() + " and " + b.str());
  return add_resolution(p1, p2, pivot);
}

int ProofBuilder::add_weakening(int premise, const Clause& weakened) {
  if (!proof_.step(premise).clause.subset_of(weakened))
    throw error("weakening must be a superset of its premise");
  ProofStep s;
  s.id = next_id_++;
  s.kind = StepKind::Weakening;
  s.premises = {premise, -1};
  s.clause = weakened;
  proof_.add_step(s);
  return s.id;
}

bool clause_entails(const std::optional<Clause>& a,
                    const std::optional<Clause>& c) {
  if (!c || c->tautological()) return true;
  if (!a || a->tautological()) return false;
  return a->subset_of(*c);
}

ValidityReport check_valid(const Proof& p, const CnfFormula& f,
                           const CheckOptions& opts) {
  auto fail = [](int id, std::string msg) {
    return ValidityReport{false, id, std::move(msg)};
  };
  if (p.semantic())
    return fail(0, "semantic proof: use check_semantic");
  if (p.empty()) return fail(0, "empty proof");
  for (const ProofStep& s : p.steps()) {
    switch (s.kind) {
      case StepKind::Satisfied:
        return fail(s.id, "satisfied placeholder in syntactic proof");
      case StepKind::Axiom:
        if (f.find_clause(s.clause) < 0)
          return fail(s.id, "axiom " + s.clause.str() + " not in formula");
        break;
      case StepKind::Resolution: {
        const ProofStep& a = p.step(s.premises[0]);
        const ProofStep& b = p.step(s.premises[1]);
        if (a.kind == StepKind::Satisfied || b.kind == StepKind::Satisfied)
          return fail(s.id, "resolution with satisfied premise");
        if (s.pivot <= 0) return fail(s.id, "resolution without pivot");
        Clause expected;
        try {
          expected = resolve(a.clause, b.clause, s.pivot);
        } catch (const error& e) {
          return fail(s.id, e.what());
        }
        if (expected != s.clause)
          return fail(s.id, "clause mismatch: recorded " + s.clause.str() +
                                ", resolvent " + expected.str());
        if (!opts.allow_tautologies && s.clause.tautological())
          return fail(s.id, "tautological resolvent");
        break;
      }
      case StepKind::Weakening: {
        if (!opts.allow_weakening)
          return fail(s.id, "weakening not allowed");
        const ProofStep& a = p.step(s.premises[0]);
        if (a.kind == StepKind::Satisfied)
          return fail(s.id, "weakening of satisfied premise");
        if (!a.clause.subset_of(s.clause))
          return fail(s.id, "weakening is not a superset of its premise");
        break;
      }
    }
  }
  return {};
}

namespace {

std::optional<Clause> step_value(const ProofStep& s) {
  if (s.kind == StepKind::Satisfied) return std::nullopt;
  return s.clause;
}

}  // namespace

// A and B are restricted premise clauses (nullopt = satisfied), C the
// restricted conclusion. Decides (A and B) |= C: brute force over the joint
// support when it is small, otherwise by the equivalent closed-form rule
// (A|~C and B|~C jointly unsatisfiable iff one is empty or they are
// complementary units).
bool implied_by_premises(const std::optional<Clause>& a,
                         const std::optional<Clause>& b,
                         const std::optional<Clause>& c) {
  if (!c || c->tautological()) return true;
  std::vector<int> vars;
  auto collect = [&](const std::optional<Clause>& cl) {
    if (!cl) return;
    for (int v : cl->support()) vars.push_back(v);
  };
  collect(a);
  collect(b);
  collect(c);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.size() <= 16) {
    auto sat = [&](const std::optional<Clause>& cl, std::uint32_t bits) {
      if (!cl) return true;
      for (Lit l : cl->lits()) {
        auto it = std::lower_bound(vars.begin(), vars.end(), var_of(l));
        bool val = (bits >> (it - vars.begin())) & 1u;
        if (val == positive(l)) return true;
      }
      return false;
    };
    for (std::uint32_t bits = 0; bits < (1u << vars.size()); ++bits)
      if (sat(a, bits) && sat(b, bits) && !sat(c, bits)) return false;
    return true;
  }
  Restriction neg_c;
  for (Lit l : c->lits()) neg_c.set(var_of(l), !positive(l));
  auto ar = a ? apply_restriction(*a, neg_c) : std::nullopt;
  auto br = b ? apply_restriction(*b, neg_c) : std::nullopt;
  if (ar && ar->empty()) return true;
  if (br && br->empty()) return true;
  if (ar && br && ar->size() == 1 && br->size() == 1 &&
      ar->lits()[0] == -br->lits()[0])
    return true;
  return false;
}

ValidityReport check_semantic(const Proof& p, const CnfFormula& f) {
  auto fail = [](int id, std::string msg) {
    return ValidityReport{false, id, std::move(msg)};
  };
  if (p.empty()) return fail(0, "empty proof");
  for (const ProofStep& s : p.steps()) {
    switch (s.kind) {
      case StepKind::Satisfied:
        break;
      case StepKind::Axiom:
        if (f.find_clause(s.clause) < 0)
          return fail(s.id, "axiom " + s.clause.str() + " not in formula");
        break;
      case StepKind::Resolution: {
        auto a = step_value(p.step(s.premises[0]));
        auto b = step_value(p.step(s.premises[1]));
        if (!implied_by_premises(a, b, s.clause))
          return fail(s.id, "clause " + s.clause.str() +
                                " not implied by its premises");
        break;
      }
      case StepKind::Weakening: {
        auto a = step_value(p.step(s.premises[0]));
        if (!clause_entails(a, s.clause))
          return fail(s.id, "weakened clause not implied by premise");
        break;
      }
    }
  }
  return {};
}

bool is_refutation(const Proof& p) {
  if (p.empty()) return false;
  const ProofStep& root = p.steps().back();
  return root.kind != StepKind::Satisfied && root.clause.empty();
}

std::set<int> axiom_dependencies(const Proof& p, int id) {
  std::set<int> axioms;
  std::vector<int> stack{p.step(id).id};
  std::set<int> seen;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    const ProofStep& s = p.step(cur);
    if (s.kind == StepKind::Axiom) {
      axioms.insert(cur);
    } else {
      for (int q : s.premises)
        if (q >= 0) stack.push_back(q);
    }
  }
  return axioms;
}

Proof restrict_proof(const Proof& p, const Restriction& rho) {
  Proof out;
  for (const ProofStep& s : p.steps()) {
    ProofStep t = s;
    if (s.kind == StepKind::Satisfied) {
      out.add_step(t);
      continue;
    }
    auto rc = apply_restriction(s.clause, rho);
    if (!rc) {
      t.kind = StepKind::Satisfied;
      t.clause = Clause{};
    } else {
      t.clause = std::move(*rc);
    }
    out.add_step(t);
  }
  for (int id : p.lemma_marks()) out.mark_lemma(id);
  out.set_semantic(true);
  return out;
}

Proof syntactic_equivalent(const Proof& p) {
  Proof out;
  // For each original id: either the id of the step representing it in the
  // output, or "satisfied" (no representative).
  std::unordered_map<int, std::optional<int>> rep;
  std::unordered_map<std::string, int> axiom_ids;
  int next_id = 1;

  auto value_of = [&](const std::optional<int>& r) -> std::optional<Clause> {
    if (!r) return std::nullopt;
    return out.step(*r).clause;
  };

  for (const ProofStep& s : p.steps()) {
    if (s.kind == StepKind::Satisfied) {
      rep[s.id] = std::nullopt;
      continue;
    }
    if (s.kind == StepKind::Axiom) {
      auto key = clause_key(s.clause);
      auto it = axiom_ids.find(key);
      if (it != axiom_ids.end()) {
        rep[s.id] = it->second;
        continue;
      }
      ProofStep t;
      t.id = next_id++;
      t.kind = StepKind::Axiom;
      t.clause = s.clause;
      out.add_step(t);
      axiom_ids[key] = t.id;
      rep[s.id] = t.id;
      continue;
    }
    if (s.kind == StepKind::Weakening) {
      auto ra = rep.at(s.premises[0]);
      if (!clause_entails(value_of(ra), s.clause))
        throw error("not a semantic derivation: weakening at step " +
                    std::to_string(s.id));
      rep[s.id] = ra;
      continue;
    }
    // Resolution.
    auto ra = rep.at(s.premises[0]);
    auto rb = rep.at(s.premises[1]);
    auto va = value_of(ra);
    auto vb = value_of(rb);
    if (clause_entails(va, s.clause)) {
      rep[s.id] = ra;
      continue;
    }
    if (clause_entails(vb, s.clause)) {
      rep[s.id] = rb;
      continue;
    }
    if (!va || !vb)
      throw error("not a semantic derivation: step " + std::to_string(s.id) +
                  " not implied by its premises");
    // Neither image implies the conclusion: they must be resolvable.
    int pivot = 0;
    auto clashes = [&](int v) {
      return (va->contains(v) && vb->contains(-v)) ||
             (va->contains(-v) && vb->contains(v));
    };
    if (s.pivot > 0 && clashes(s.pivot) &&
        !(va->contains(s.pivot) && va->contains(-s.pivot)) &&
        !(vb->contains(s.pivot) && vb->contains(-s.pivot))) {
      pivot = s.pivot;
    } else {
      for (int v : va->support()) {
        if (clashes(v) && !(va->contains(v) && va->contains(-v)) &&
            !(vb->contains(v) && vb->contains(-v))) {
          pivot = v;
          break;
        }
      }
    }
    if (pivot == 0)
      throw error("syntactic equivalent: premises of step " +
                  std::to_string(s.id) + " cannot be resolved");
    Clause resolvent = resolve(*va, *vb, pivot);
    if (!clause_entails(resolvent, s.clause))
      throw error("syntactic equivalent: resolvent does not imply step " +
                  std::to_string(s.id));
    ProofStep t;
    t.id = next_id++;
    t.kind = StepKind::Resolution;
    t.premises = {*ra, *rb};
    t.pivot = pivot;
    t.clause = std::move(resolvent);
    out.add_step(t);
    rep[s.id] = t.id;
  }
  // Keep only the derivation of the input root's image, renumbered.
  std::optional<int> root_rep;
  if (!p.empty()) root_rep = rep.at(p.root_id());
  Proof pruned;
  if (!root_rep) return pruned;
  std::set<int> keep;
  std::vector<int> stack{*root_rep};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    if (!keep.insert(cur).second) continue;
    for (int q : out.step(cur).premises)
      if (q >= 0) stack.push_back(q);
  }
  std::unordered_map<int, int> renum;
  int next = 1;
  for (const ProofStep& s : out.steps()) {
    if (!keep.count(s.id)) continue;
    ProofStep t = s;
    t.id = next++;
    for (int& q : t.premises)
      if (q >= 0) q = renum.at(q);
    renum[s.id] = t.id;
    pruned.add_step(t);
  }
  return pruned;
}

ProofStats stats(const Proof& p) {
  ProofStats st;
  st.lemma_count = p.lemma_marks().size();
  auto cons = p.consumers();
  for (const ProofStep& s : p.steps()) {
    if (s.kind == StepKind::Satisfied) continue;
    ++st.length;
    st.width = std::max(st.width, s.clause.size());
    st.max_out_degree = std::max(st.max_out_degree, cons[s.id].size());
    if (s.kind == StepKind::Resolution && s.pivot > 0) {
      const ProofStep& a = p.step(s.premises[0]);
      const ProofStep& b = p.step(s.premises[1]);
      if (a.kind != StepKind::Satisfied && b.kind != StepKind::Satisfied) {
        try {
          if (is_merge(a.clause, b.clause, s.pivot)) ++st.num_merges;
        } catch (const error&) {
          // semantic step; not a countable merge
        }
      }
    }
  }
  return st;
}

Proof parse_trace(const std::string& text) {
  Proof out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool any_satisfied = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    auto bad = [&](const std::string& msg) {
      return error("trace line " + std::to_string(lineno) + ": " + msg);
    };
    if (tag == "c") continue;
    if (tag == "L") {
      int id;
      if (!(ls >> id)) throw bad("malformed lemma mark");
      out.mark_lemma(id);
      continue;
    }
    if (tag == "s") {
      ProofStep s;
      if (!(ls >> s.id)) throw bad("malformed satisfied line");
      s.kind = StepKind::Satisfied;
      out.add_step(s);
      any_satisfied = true;
      continue;
    }
    ProofStep s;
    if (!(ls >> s.id)) throw bad("missing id");
    std::vector<Lit> lits;
    auto read_lits = [&]() {
      long v;
      bool terminated = false;
      while (ls >> v) {
        if (v == 0) {
          terminated = true;
          break;
        }
        lits.push_back(static_cast<Lit>(v));
      }
      if (!terminated) throw bad("missing terminating 0");
    };
    if (tag == "a") {
      s.kind = StepKind::Axiom;
      read_lits();
    } else if (tag == "r") {
      s.kind = StepKind::Resolution;
      if (!(ls >> s.premises[0] >> s.premises[1])) throw bad("missing premises");
      read_lits();
    } else if (tag == "w") {
      s.kind = StepKind::Weakening;
      if (!(ls >> s.premises[0])) throw bad("missing premise");
      read_lits();
    } else {
      throw bad("unknown tag '" + tag + "'");
    }
    s.clause = Clause(std::move(lits));
    if (s.kind == StepKind::Resolution) {
      const ProofStep& a = out.step(s.premises[0]);
      const ProofStep& b = out.step(s.premises[1]);
      if (a.kind != StepKind::Satisfied && b.kind != StepKind::Satisfied) {
        int pivot = 0;
        for (int v : a.clause.support()) {
          bool clash = (a.clause.contains(v) && b.clause.contains(-v)) ||
                       (a.clause.contains(-v) && b.clause.contains(v));
          if (clash && !(a.clause.contains(v) && a.clause.contains(-v)) &&
              !(b.clause.contains(v) && b.clause.contains(-v))) {
            if (pivot != 0) throw bad("ambiguous pivot");
            pivot = v;
          }
        }
        if (pivot == 0) throw bad("no pivot between premises");
        s.pivot = pivot;
      }
    }
    try {
      out.add_step(std::move(s));
    } catch (const error& e) {
      throw bad(e.what());
    }
  }
  if (any_satisfied) out.set_semantic(true);
  return out;
}

Proof parse_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_trace(ss.str());
}

std::string write_trace(const Proof& p) {
  std::ostringstream os;
  for (const ProofStep& s : p.steps()) {
    switch (s.kind) {
      case StepKind::Axiom:
        os << "a " << s.id;
        break;
      case StepKind::Resolution:
        os << "r " << s.id << " " << s.premises[0] << " " << s.premises[1];
        break;
      case StepKind::Weakening:
        os << "w " << s.id << " " << s.premises[0];
        break;
      case StepKind::Satisfied:
        os << "s " << s.id << "\n";
        continue;
    }
    for (Lit l : s.clause.lits()) os << " " << l;
    os << " 0\n";
    if (p.is_lemma(s.id)) os << "L " << s.id << "\n";
  }
  return os.str();
}

}  // namespace mrt
