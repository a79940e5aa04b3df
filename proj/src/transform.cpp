#include "mrt/transform.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>

#include "mrt/classify.hpp"
#include "mrt/unit.hpp"

namespace mrt {

namespace {

bool step_is_merge(const Proof& p, const ProofStep& s) {
  if (s.kind != StepKind::Resolution || s.pivot <= 0) return false;
  return is_merge(p.step(s.premises[0]).clause, p.step(s.premises[1]).clause,
                  s.pivot);
}

// ---------------------------------------------------------------- trees --

struct TNode {
  Clause clause;
  int pivot = 0;                    // 0 = leaf
  std::unique_ptr<TNode> pos, neg;  // premise with +pivot / with -pivot

  bool leaf() const { return pivot == 0; }
};
using TPtr = std::unique_ptr<TNode>;

TPtr make_leaf(Clause c) {
  auto t = std::make_unique<TNode>();
  t->clause = std::move(c);
  return t;
}

TPtr make_node(Clause c, int pivot, TPtr pos, TPtr neg) {
  auto t = std::make_unique<TNode>();
  t->clause = std::move(c);
  t->pivot = pivot;
  t->pos = std::move(pos);
  t->neg = std::move(neg);
  return t;
}

TPtr clone(const TNode* t) {
  if (t->leaf()) return make_leaf(t->clause);
  return make_node(t->clause, t->pivot, clone(t->pos.get()),
                   clone(t->neg.get()));
}

bool node_is_merge(const TNode* t) {
  if (t->leaf()) return false;
  for (Lit l : t->pos->clause.lits())
    if (var_of(l) != t->pivot && t->neg->clause.contains(l)) return true;
  return false;
}

int count_merges(const TNode* t) {
  if (t->leaf()) return 0;
  return (node_is_merge(t) ? 1 : 0) + count_merges(t->pos.get()) +
         count_merges(t->neg.get());
}

bool contains_node(const TNode* t, const TNode* e) {
  if (t == e) return true;
  if (t->leaf()) return false;
  return contains_node(t->pos.get(), e) || contains_node(t->neg.get(), e);
}

void validate_tree_input(const Proof& p, bool reject_internal_merges,
                         const char* who) {
  auto cons = p.consumers();
  for (const ProofStep& s : p.steps()) {
    if (s.kind == StepKind::Weakening || s.kind == StepKind::Satisfied)
      throw error(std::string(who) + ": step " + std::to_string(s.id) +
                  " is not an axiom or resolution");
    if (s.clause.tautological())
      throw error(std::string(who) + ": tautological step " +
                  std::to_string(s.id));
    if (s.kind != StepKind::Axiom && cons[s.id].size() > 1)
      throw error(std::string(who) + ": not tree-like, step " +
                  std::to_string(s.id) + " is reused");
    if (reject_internal_merges && s.kind == StepKind::Resolution &&
        s.id != p.root_id() && step_is_merge(p, s))
      throw error(std::string(who) + ": internal merge at step " +
                  std::to_string(s.id));
  }
}

TPtr build_tree(const Proof& p, int id) {
  const ProofStep& s = p.step(id);
  if (s.kind == StepKind::Axiom) return make_leaf(s.clause);
  const ProofStep& a = p.step(s.premises[0]);
  int pos_id = a.clause.contains(s.pivot) ? s.premises[0] : s.premises[1];
  int neg_id = pos_id == s.premises[0] ? s.premises[1] : s.premises[0];
  return make_node(s.clause, s.pivot, build_tree(p, pos_id),
                   build_tree(p, neg_id));
}

// -------------------------------------------------- input conversion --

struct ChainStep {
  Clause side;  // axiom used at this step; contains `lit`
  Lit lit;      // the current clause loses -lit
};

struct Chain {
  Clause start;
  std::vector<ChainStep> steps;
  Clause conclusion;
};

Clause remove_lit(const Clause& c, Lit l) {
  std::vector<Lit> lits;
  for (Lit k : c.lits())
    if (k != l) lits.push_back(k);
  return Clause(std::move(lits));
}

// One loose resolution step: literals other than the clashing pair survive,
// so the result may contain opposite literals.
Clause loose_step(const Clause& cur, const Clause& side, Lit lit) {
  return remove_lit(cur, -lit).union_with(remove_lit(side, lit));
}

// The recursive construction: an input derivation of a subclause of t's
// root whose first (topmost) clause is the leaf e.
Chain aux(const TNode* t, const TNode* e) {
  if (t->leaf()) {
    if (t != e) throw error("tree_to_input: lost the topmost axiom");
    return {t->clause, {}, t->clause};
  }
  bool in_pos = contains_node(t->pos.get(), e);
  const TNode* eta1 = in_pos ? t->pos.get() : t->neg.get();
  const TNode* eta2 = in_pos ? t->neg.get() : t->pos.get();
  Lit lx1 = in_pos ? t->pivot : -t->pivot;  // literal on e's side
  Lit lx2 = -lx1;                           // literal on the other side

  Chain c4 = aux(eta1, e);
  if (!c4.conclusion.contains(lx1)) return c4;  // pivot already gone

  // unique path of lx2-carrying clauses down to an axiom D ∨ lx2
  TPtr eta3 = clone(eta2);
  TNode* node = eta3.get();
  while (!node->leaf()) {
    node->clause = remove_lit(node->clause, lx2);
    TNode* nxt = node->pos->clause.contains(lx2) ? node->pos.get()
                                                 : node->neg.get();
    if (!nxt->clause.contains(lx2))
      throw error("tree_to_input: broken literal path");
    node = nxt;
  }
  Clause d_original = node->clause;  // D ∨ lx2, used as the joining axiom
  node->clause = remove_lit(node->clause, lx2);

  Chain c5 = aux(eta3.get(), node);

  Chain out;
  out.start = c4.start;
  out.steps = c4.steps;
  out.steps.push_back({d_original, lx2});
  out.steps.insert(out.steps.end(), c5.steps.begin(), c5.steps.end());
  Clause cur = loose_step(c4.conclusion, d_original, lx2);
  for (const ChainStep& s : c5.steps) cur = loose_step(cur, s.side, s.lit);
  out.conclusion = std::move(cur);
  return out;
}

// Chain -> loose proof -> placeholders for opposite-literal clauses ->
// syntactic equivalent. The result is a strict input derivation.
Proof clean_chain(const Chain& c) {
  Proof loose;
  int id = 1;
  ProofStep start;
  start.id = id++;
  start.kind = StepKind::Axiom;
  start.clause = c.start;
  loose.add_step(start);
  int cur_id = 1;
  Clause cur = c.start;
  for (const ChainStep& s : c.steps) {
    ProofStep ax;
    ax.id = id++;
    ax.kind = StepKind::Axiom;
    ax.clause = s.side;
    loose.add_step(ax);
    cur = loose_step(cur, s.side, s.lit);
    ProofStep r;
    r.id = id++;
    r.kind = StepKind::Resolution;
    r.premises = {cur_id, ax.id};
    r.pivot = var_of(s.lit);
    r.clause = cur;
    loose.add_step(r);
    cur_id = r.id;
  }
  Proof sem;
  for (const ProofStep& s : loose.steps()) {
    ProofStep t = s;
    if (t.clause.tautological()) {
      t.kind = StepKind::Satisfied;
      t.clause = Clause{};
    }
    sem.add_step(t);
  }
  sem.set_semantic(true);
  Proof out = syntactic_equivalent(sem);
  if (out.empty()) throw error("tree_to_input: conclusion vanished");
  return out;
}

const TNode* leftmost_leaf(const TNode* t) {
  while (!t->leaf()) t = t->pos.get();
  return t;
}

Proof tree_to_input_tree(const TNode* t) {
  if (t->leaf()) {
    Proof out;
    out.add_step({1, StepKind::Axiom, {-1, -1}, 0, t->clause});
    return out;
  }
  return clean_chain(aux(t, leftmost_leaf(t)));
}

// ------------------------------------------------------ tree_to_merge --

// Rebuild an input-shaped proof as a left-deep tree.
TPtr chain_proof_to_tree(const Proof& q, int from_id, int to_id,
                         const Clause* base) {
  // base, when given, replaces the chain start (used to cut at D)
  TPtr cur;
  for (const ProofStep& s : q.steps()) {
    if (s.kind != StepKind::Resolution) continue;
    if (s.id <= from_id || s.id > to_id) continue;
    const ProofStep& a = q.step(s.premises[0]);
    const ProofStep& b = q.step(s.premises[1]);
    auto side_tree = [&](const ProofStep& ps) -> TPtr {
      if (ps.kind != StepKind::Axiom && ps.id == from_id && base)
        return make_leaf(*base);
      return make_leaf(ps.clause);
    };
    TPtr ta = (a.kind == StepKind::Axiom || (base && a.id == from_id))
                  ? side_tree(a)
                  : std::move(cur);
    TPtr tb = (b.kind == StepKind::Axiom || (base && b.id == from_id))
                  ? side_tree(b)
                  : std::move(cur);
    if (!ta || !tb) throw error("chain conversion: broken chain");
    if (!ta->clause.contains(s.pivot)) std::swap(ta, tb);
    cur = make_node(s.clause, s.pivot, std::move(ta), std::move(tb));
  }
  if (!cur) {
    // no resolutions in range: the derivation is a bare clause
    if (base) return make_leaf(*base);
    for (const ProofStep& s : q.steps())
      if (s.kind == StepKind::Axiom) return make_leaf(s.clause);
    throw error("chain conversion: empty derivation");
  }
  return cur;
}

// Bottom-up strict recomputation with subsumption bypass: premises that
// lost their pivot literal replace the whole step.
TPtr fix_tree(TPtr t) {
  if (t->leaf()) return t;
  t->pos = fix_tree(std::move(t->pos));
  t->neg = fix_tree(std::move(t->neg));
  if (!t->pos->clause.contains(t->pivot)) return std::move(t->pos);
  if (!t->neg->clause.contains(-t->pivot)) return std::move(t->neg);
  t->clause = remove_lit(t->pos->clause, t->pivot)
                  .union_with(remove_lit(t->neg->clause, -t->pivot));
  return t;
}

// Lowest merge-only subtree, post-order.
TNode* find_min_merge(TNode* t) {
  if (t->leaf()) return nullptr;
  if (TNode* r = find_min_merge(t->pos.get())) return r;
  if (TNode* r = find_min_merge(t->neg.get())) return r;
  return node_is_merge(t) ? t : nullptr;
}

TPtr* find_owner(TPtr& t, TNode* target) {
  if (t.get() == target) return &t;
  if (t->leaf()) return nullptr;
  if (TPtr* r = find_owner(t->pos, target)) return r;
  return find_owner(t->neg, target);
}

void substitute_leaves(TPtr& t, const Clause& d, const TNode* w) {
  if (t->leaf()) {
    if (t->clause == d) t = clone(w);
    return;
  }
  substitute_leaves(t->pos, d, w);
  substitute_leaves(t->neg, d, w);
}

TPtr ttm(TPtr t, const std::set<Clause>& axioms) {
  if (t->leaf()) return t;
  if (count_merges(t.get()) == 0) {
    Proof q = tree_to_input_tree(t.get());
    return chain_proof_to_tree(q, -1, q.root_id(), nullptr);
  }
  TNode* psi = find_min_merge(t.get());
  Proof q = tree_to_input_tree(psi);
  int d_id = -1;
  Clause d_clause;
  for (const ProofStep& s : q.steps())
    if (s.kind == StepKind::Resolution && step_is_merge(q, s)) {
      d_id = s.id;
      d_clause = s.clause;
    }
  TPtr replacement;
  if (d_id < 0) {
    replacement = chain_proof_to_tree(q, -1, q.root_id(), nullptr);
  } else if (d_id == q.root_id()) {
    replacement = make_leaf(d_clause);
  } else {
    replacement = chain_proof_to_tree(q, d_id, q.root_id(), &d_clause);
  }
  TPtr* owner = find_owner(t, psi);
  if (!owner) throw error("tree_to_merge: lost the selected merge");
  *owner = std::move(replacement);
  t = fix_tree(std::move(t));
  TPtr done = ttm(std::move(t), axioms);
  // a split clause that is itself an axiom needs no derivation on top
  if (d_id >= 0 && !axioms.count(d_clause)) {
    TPtr omega_prime = chain_proof_to_tree(q, -1, d_id, nullptr);
    substitute_leaves(done, d_clause, omega_prime.get());
  }
  return done;
}

int emit_tree(ProofBuilder& b, const TNode* t) {
  if (t->leaf()) return b.add_axiom(t->clause);
  int pa = emit_tree(b, t->pos.get());
  int pb = emit_tree(b, t->neg.get());
  return b.add_resolution(pa, pb, t->pivot);
}

}  // namespace

Proof tree_to_input(const Proof& p) {
  if (p.empty()) throw error("tree_to_input: empty proof");
  validate_tree_input(p, true, "tree_to_input");
  TPtr t = build_tree(p, p.root_id());
  Proof out = tree_to_input_tree(t.get());
  if (!out.step(out.root_id()).clause.subset_of(p.step(p.root_id()).clause))
    throw error("tree_to_input: subclause contract violated");
  return out;
}

Proof tree_to_merge(const Proof& p) {
  if (p.empty()) throw error("tree_to_merge: empty proof");
  validate_tree_input(p, false, "tree_to_merge");
  std::set<Clause> axioms;
  for (const ProofStep& s : p.steps())
    if (s.kind == StepKind::Axiom) axioms.insert(s.clause);
  TPtr t = build_tree(p, p.root_id());
  t = ttm(std::move(t), axioms);
  ProofBuilder b;
  int root = emit_tree(b, t.get());
  Proof out = b.take();
  if (!out.step(root).clause.subset_of(p.step(p.root_id()).clause))
    throw error("tree_to_merge: subclause contract violated");
  return out;
}

Proof decompose_input_structured(const Proof& p) {
  if (p.empty()) throw error("decompose: empty proof");
  auto cons = p.consumers();
  for (const ProofStep& s : p.steps()) {
    if (s.kind == StepKind::Weakening || s.kind == StepKind::Satisfied)
      throw error("decompose: step " + std::to_string(s.id) +
                  " is not an axiom or resolution");
    if (s.kind != StepKind::Resolution) continue;
    const ProofStep& a = p.step(s.premises[0]);
    const ProofStep& b = p.step(s.premises[1]);
    bool ok = a.kind == StepKind::Axiom || b.kind == StepKind::Axiom ||
              step_is_merge(p, a) || step_is_merge(p, b);
    if (!ok)
      throw error("decompose: step " + std::to_string(s.id) +
                  " has no axiom or merge premise");
    if (!step_is_merge(p, s) && s.id != p.root_id() && cons[s.id].size() > 1)
      throw error("decompose: non-merge step " + std::to_string(s.id) +
                  " is reused");
  }
  if (p.step(p.root_id()).kind == StepKind::Axiom) {
    Proof out;
    out.add_step({1, StepKind::Axiom, {-1, -1}, 0, p.step(p.root_id()).clause});
    return out;
  }

  std::vector<int> targets;
  for (const ProofStep& s : p.steps())
    if (s.kind == StepKind::Resolution && step_is_merge(p, s))
      targets.push_back(s.id);
  if (targets.empty() || targets.back() != p.root_id())
    targets.push_back(p.root_id());

  Proof out;
  int next = 1;
  std::unordered_map<int, int> newid;
  std::map<Clause, int> ax_ids;
  auto map_axiom = [&](const Clause& c) {
    auto it = ax_ids.find(c);
    if (it != ax_ids.end()) return it->second;
    int id = next++;
    out.add_step({id, StepKind::Axiom, {-1, -1}, 0, c});
    ax_ids.emplace(c, id);
    return id;
  };
  for (int m : targets) {
    std::vector<int> chain;
    int cur = m;
    while (true) {
      chain.push_back(cur);
      int down = -1;
      for (int q : p.step(cur).premises) {
        const ProofStep& ps = p.step(q);
        if (ps.kind == StepKind::Axiom || newid.count(q)) continue;
        down = q;
      }
      if (down < 0) break;
      cur = down;
    }
    std::reverse(chain.begin(), chain.end());
    for (int id : chain) {
      ProofStep t = p.step(id);
      for (int& q : t.premises) {
        const ProofStep& ps = p.step(q);
        q = ps.kind == StepKind::Axiom ? map_axiom(ps.clause) : newid.at(q);
      }
      t.id = next++;
      out.add_step(t);
      newid[id] = t.id;
    }
    if (m != p.root_id()) out.mark_lemma(newid.at(m));
  }
  return out;
}

namespace {

// Shared assembly state for the two simulations: the growing output proof,
// the clause database f + learned lemmas, and the clause -> step maps.
struct Assembler {
  explicit Assembler(const CnfFormula& f) : db(f), f_size(f.size()) {}

  Proof out;
  CnfFormula db;
  std::size_t f_size;
  int next = 1;
  std::map<Clause, int> ax_ids;
  std::map<Clause, int> lemma_ids;

  int leaf_id(const Clause& c) {
    int idx = db.find_clause(c);
    if (idx >= 0 && static_cast<std::size_t>(idx) < f_size) {
      auto it = ax_ids.find(c);
      if (it != ax_ids.end()) return it->second;
      int id = next++;
      out.add_step({id, StepKind::Axiom, {-1, -1}, 0, c});
      ax_ids.emplace(c, id);
      return id;
    }
    auto it = lemma_ids.find(c);
    if (it == lemma_ids.end())
      throw error("simulation: untracked database clause " + c.str());
    return it->second;
  }

  // Appends the derived steps of q listed in `keep`, then marks `marks`
  // (ids of q) as lemmas and learns their clauses.
  void append(const Proof& q, const std::set<int>& keep,
              const std::vector<int>& marks) {
    std::unordered_map<int, int> remap;
    for (const ProofStep& s : q.steps()) {
      if (s.kind == StepKind::Axiom || !keep.count(s.id)) continue;
      ProofStep t = s;
      for (int& pr : t.premises) {
        const ProofStep& ps = q.step(pr);
        if (ps.kind == StepKind::Axiom) {
          pr = leaf_id(ps.clause);
        } else if (auto it = remap.find(pr); it != remap.end()) {
          pr = it->second;
        } else {
          auto lit = lemma_ids.find(ps.clause);
          if (lit == lemma_ids.end())
            throw error("simulation: dangling premise in block");
          pr = lit->second;
        }
      }
      t.id = next++;
      out.add_step(t);
      remap[s.id] = t.id;
    }
    for (int m : marks) {
      int id = remap.at(m);
      out.mark_lemma(id);
      lemma_ids.emplace(q.step(m).clause, id);
      db.add_clause(q.step(m).clause);
    }
  }
};

std::set<int> all_derived(const Proof& q) {
  std::set<int> keep;
  for (const ProofStep& s : q.steps())
    if (s.kind != StepKind::Axiom) keep.insert(s.id);
  return keep;
}

void validate_simulation_input(const Proof& pi, const CnfFormula& f,
                               const char* who) {
  ValidityReport v = check_valid(pi, f);
  if (!v.ok)
    throw error(std::string(who) + ": invalid input proof at step " +
                std::to_string(v.step_id) + ": " + v.message);
  if (!is_refutation(pi))
    throw error(std::string(who) + ": input proof is not a refutation");
  for (const ProofStep& s : pi.steps())
    if (s.clause.tautological())
      throw error(std::string(who) + ": tautological step " +
                  std::to_string(s.id));
}

Proof join_proofs(const Proof& ppos, const Proof& pneg, int pivot) {
  Proof out;
  int next = 1;
  std::unordered_map<int, int> remap;
  int last_pos = -1, last_neg = -1;
  for (const Proof* q : {&ppos, &pneg}) {
    remap.clear();
    for (const ProofStep& s : q->steps()) {
      ProofStep t = s;
      for (int& pr : t.premises)
        if (pr >= 0) pr = remap.at(pr);
      t.id = next++;
      out.add_step(t);
      remap[s.id] = t.id;
    }
    (q == &ppos ? last_pos : last_neg) = remap.at(q->root_id());
  }
  ProofStep r;
  r.id = next++;
  r.kind = StepKind::Resolution;
  r.premises = {last_pos, last_neg};
  r.pivot = pivot;
  r.clause = resolve(out.step(last_pos).clause, out.step(last_neg).clause,
                     pivot);
  out.add_step(r);
  return out;
}

}  // namespace

Proof simulate_rml(const Proof& pi, const CnfFormula& f) {
  validate_simulation_input(pi, f, "simulate_rml");
  Assembler st(f);
  for (const ProofStep& s : pi.steps()) {
    if (s.kind != StepKind::Resolution) continue;
    if (cl_i_member(st.db, s.clause)) continue;
    const Clause& a = pi.step(s.premises[0]).clause;
    auto pa = input_derive(st.db, pi.step(s.premises[0]).clause);
    auto pb = input_derive(st.db, pi.step(s.premises[1]).clause);
    if (!pa || !pb)
      throw error("simulate_rml: premise left the input closure");
    const Proof& ppos = a.contains(s.pivot) ? *pa : *pb;
    const Proof& pneg = a.contains(s.pivot) ? *pb : *pa;
    if (!ppos.step(ppos.root_id()).clause.contains(s.pivot) ||
        !pneg.step(pneg.root_id()).clause.contains(-s.pivot))
      throw error("simulate_rml: derived premises cannot be resolved");
    Proof dec = decompose_input_structured(
        tree_to_merge(join_proofs(ppos, pneg, s.pivot)));

    std::vector<int> marks(dec.lemma_marks().begin(),
                           dec.lemma_marks().end());
    bool root_merge = step_is_merge(dec, dec.step(dec.root_id()));
    if (root_merge) marks.push_back(dec.root_id());
    // ancestors of the lemmas; the final block is dropped unless its
    // conclusion is itself a merge worth learning
    std::set<int> keep;
    std::vector<int> stack = marks;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      const ProofStep& cs = dec.step(cur);
      if (cs.kind == StepKind::Axiom || !keep.insert(cur).second) continue;
      for (int q : cs.premises)
        if (q >= 0) stack.push_back(q);
    }
    if (marks.empty())
      throw error("simulate_rml: block produced no learnable merge");
    st.append(dec, keep, marks);
    if (!cl_i_member(st.db, s.clause))
      throw error("simulate_rml: closure invariant failed");
  }
  auto pe = input_derive(st.db, Clause{});
  if (!pe) throw error("simulate_rml: final conflict not reachable");
  st.append(*pe, all_derived(*pe), {});
  return st.out;
}

Proof simulate_lreml(const Proof& pi, const CnfFormula& f) {
  validate_simulation_input(pi, f, "simulate_lreml");
  Assembler st(f);
  for (const ProofStep& s : pi.steps()) {
    if (s.kind != StepKind::Resolution) continue;
    if (cl_i_member(st.db, s.clause)) continue;
    for (int side : {0, 1}) {
      const Clause& prem = pi.step(s.premises[side]).clause;
      auto pd = input_derive(st.db, prem);
      if (!pd)
        throw error("simulate_lreml: premise left the input closure");
      std::vector<int> derived;
      for (const ProofStep& q : pd->steps())
        if (q.kind == StepKind::Resolution) derived.push_back(q.id);
      std::size_t pos = 0;
      for (std::size_t i = 0; i < derived.size(); ++i) {
        const Clause& cc = pd->step(derived[i]).clause;
        if (cc.empty()) break;
        if (!is_empowering(st.db, cc).empowering) continue;
        std::set<int> keep(derived.begin() + pos, derived.begin() + i + 1);
        st.append(*pd, keep, {derived[i]});
        pos = i + 1;
      }
      // the absorbed tail is already in the closure; drop it
    }
    if (!cl_i_member(st.db, s.clause))
      throw error("simulate_lreml: closure invariant failed");
  }
  auto pe = input_derive(st.db, Clause{});
  if (!pe) throw error("simulate_lreml: final conflict not reachable");
  st.append(*pe, all_derived(*pe), {});
  return st.out;
}

Proof regularize_input(const Proof& d) {
  if (d.empty()) throw error("regularize_input: empty derivation");
  int chain_tip = -1;
  for (const ProofStep& s : d.steps()) {
    if (s.kind == StepKind::Axiom) continue;
    if (s.kind != StepKind::Resolution)
      throw error("regularize_input: step " + std::to_string(s.id) +
                  " is not a resolution");
    bool used_tip = false, ok = true;
    for (int q : s.premises) {
      if (d.step(q).kind == StepKind::Axiom) continue;
      if (q == chain_tip)
        used_tip = true;
      else
        ok = false;
    }
    if (!ok || (chain_tip >= 0 && !used_tip))
      throw error("regularize_input: not input-shaped at step " +
                  std::to_string(s.id));
    chain_tip = s.id;
  }
  if (check_strongly_regular(d)) return d;
  CnfFormula leaves;
  for (const ProofStep& s : d.steps())
    if (s.kind == StepKind::Axiom && leaves.find_clause(s.clause) < 0)
      leaves.add_clause(s.clause);
  const Clause& goal = d.step(d.root_id()).clause;
  auto p = input_derive(leaves, goal);
  if (!p) throw error("regularize_input: rederivation failed");
  return *p;
}

}  // namespace mrt
