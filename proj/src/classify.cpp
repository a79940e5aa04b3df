#include "mrt/classify.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "mrt/unit.hpp"

namespace mrt {

namespace {

struct Decomposition {
  bool ok = true;
  int bad_id = 0;
  std::string message;
  std::vector<std::vector<int>> blocks;  // derived ids per block
  std::vector<int> marks;                // sorted lemma ids

  int block_of(int id) const {
    return static_cast<int>(
        std::lower_bound(marks.begin(), marks.end(), id) - marks.begin());
  }
};

Decomposition decompose(const Proof& p) {
  Decomposition d;
  d.marks.assign(p.lemma_marks().begin(), p.lemma_marks().end());
  d.blocks.assign(d.marks.size() + 1, {});
  auto fail = [&](int id, std::string msg) {
    d.ok = false;
    d.bad_id = id;
    d.message = std::move(msg);
    return d;
  };
  std::vector<int> prev(d.marks.size() + 1, -1);  // chain tip per block
  for (const ProofStep& s : p.steps()) {
    if (s.kind == StepKind::Weakening || s.kind == StepKind::Satisfied)
      return fail(s.id, "weakening or placeholder step breaks input structure");
    if (s.kind == StepKind::Axiom) continue;
    int k = d.block_of(s.id);
    bool used_prev = false;
    for (int q : s.premises) {
      const ProofStep& ps = p.step(q);
      if (ps.kind == StepKind::Axiom) continue;
      if (q == prev[k]) {
        used_prev = true;
        continue;
      }
      if (p.is_lemma(q) && d.block_of(q) < k) continue;
      return fail(s.id, "step " + std::to_string(s.id) +
                            " consumes step " + std::to_string(q) +
                            " which is neither a lemma nor the chain tip");
    }
    if (prev[k] >= 0 && !used_prev)
      return fail(s.id, "block " + std::to_string(k) +
                            " branches at step " + std::to_string(s.id));
    prev[k] = s.id;
    d.blocks[k].push_back(s.id);
  }
  for (std::size_t k = 0; k < d.marks.size(); ++k) {
    const ProofStep& m = p.step(d.marks[k]);
    if (m.kind == StepKind::Axiom) {
      if (!d.blocks[k].empty())
        return fail(d.marks[k],
                    "axiom lemma " + std::to_string(d.marks[k]) +
                        " closes a block with derived steps");
    } else if (d.blocks[k].empty() || d.blocks[k].back() != d.marks[k]) {
      return fail(d.marks[k], "lemma " + std::to_string(d.marks[k]) +
                                  " is not the conclusion of its block");
    }
  }
  return d;
}

bool step_is_merge(const Proof& p, const ProofStep& s) {
  if (s.kind != StepKind::Resolution || s.pivot <= 0) return false;
  const ProofStep& a = p.step(s.premises[0]);
  const ProofStep& b = p.step(s.premises[1]);
  if (a.kind == StepKind::Satisfied || b.kind == StepKind::Satisfied)
    return false;
  return is_merge(a.clause, b.clause, s.pivot);
}

// Strong regularity of one derivation listed as a clause sequence: out-of-
// block premises appear at their position of use.
bool sequence_strongly_regular(const Proof& p, const std::vector<int>& block) {
  std::unordered_set<int> in_block(block.begin(), block.end());
  std::vector<Clause> seq;
  std::vector<std::pair<std::size_t, int>> pivots;  // position, pivot var
  for (int id : block) {
    const ProofStep& s = p.step(id);
    for (int q : s.premises)
      if (q >= 0 && !in_block.count(q)) seq.push_back(p.step(q).clause);
    if (s.kind == StepKind::Resolution && s.pivot > 0)
      pivots.emplace_back(seq.size(), s.pivot);
    seq.push_back(s.clause);
  }
  for (auto [pos, v] : pivots)
    for (std::size_t j = pos; j < seq.size(); ++j)
      if (seq[j].contains_var(v)) return false;
  return true;
}

}  // namespace

ValidityReport check_input_structured(const Proof& p) {
  Decomposition d = decompose(p);
  if (d.ok) return {};
  return {false, d.bad_id, d.message};
}

std::vector<std::vector<int>> block_partition(const Proof& p) {
  Decomposition d = decompose(p);
  if (!d.ok) throw error("not input-structured: " + d.message);
  return d.blocks;
}

bool check_strongly_regular(const Proof& p) {
  std::vector<int> derived;
  for (const ProofStep& s : p.steps())
    if (s.kind != StepKind::Axiom) derived.push_back(s.id);
  return sequence_strongly_regular(p, derived);
}

ClassificationReport classify(const Proof& p, const CnfFormula& f) {
  ClassificationReport r;
  auto diag = [&](const char* flag, const std::string& msg) {
    r.diagnostics.emplace(flag, msg);
  };

  ValidityReport v = check_valid(p, f);
  r.valid_resolution = v.ok;
  if (!v.ok)
    diag("valid_resolution",
         "step " + std::to_string(v.step_id) + ": " + v.message);

  auto cons = p.consumers();
  r.tree_like = true;
  for (const ProofStep& s : p.steps()) {
    if (s.kind == StepKind::Axiom) continue;
    if (cons[s.id].size() > 1) {
      r.tree_like = false;
      diag("tree_like", "step " + std::to_string(s.id) + " is reused");
      break;
    }
  }

  r.input_shaped = true;
  int chain_tip = -1;
  for (const ProofStep& s : p.steps()) {
    if (s.kind == StepKind::Axiom) continue;
    if (s.kind != StepKind::Resolution) {
      r.input_shaped = false;
      diag("input_shaped",
           "step " + std::to_string(s.id) + " is not a resolution");
      break;
    }
    bool used_tip = false;
    bool ok = true;
    for (int q : s.premises) {
      if (p.step(q).kind == StepKind::Axiom) continue;
      if (q == chain_tip) {
        used_tip = true;
        continue;
      }
      ok = false;
    }
    if (!ok || (chain_tip >= 0 && !used_tip)) {
      r.input_shaped = false;
      diag("input_shaped", "step " + std::to_string(s.id) +
                               " breaks the input chain");
      break;
    }
    chain_tip = s.id;
  }

  // generalized RMA on the raw DAG
  r.rma_general = true;
  std::unordered_map<int, bool> merge_anc;
  for (const ProofStep& s : p.steps()) {
    bool m = step_is_merge(p, s);
    for (int q : s.premises)
      if (q >= 0 && merge_anc[q]) m = true;
    merge_anc[s.id] = m;
    if (s.kind != StepKind::Axiom && cons[s.id].size() > 1 && !m &&
        r.rma_general) {
      r.rma_general = false;
      diag("rma_general", "step " + std::to_string(s.id) +
                              " is reused without a merge ancestor");
    }
  }

  Decomposition d = decompose(p);
  if (!d.ok) {
    std::string msg =
        "step " + std::to_string(d.bad_id) + ": " + d.message;
    for (const char* flag :
         {"rml", "rma_structured", "lrml", "lrma", "rel", "lreml"})
      diag(flag, msg);
    return r;
  }

  r.rml = true;
  for (int m : d.marks) {
    if (!step_is_merge(p, p.step(m))) {
      r.rml = false;
      diag("rml", "lemma " + std::to_string(m) + " is not a merge");
      break;
    }
  }

  // non-final blocks are those closed by a lemma; a trailing empty block is
  // not a block at all
  std::size_t num_blocks = d.blocks.size();
  if (num_blocks > 0 && d.blocks.back().empty()) --num_blocks;
  r.rma_structured = true;
  for (std::size_t k = 0; k + 1 < num_blocks; ++k) {
    bool has_merge = false;
    for (int id : d.blocks[k])
      if (step_is_merge(p, p.step(id))) has_merge = true;
    if (!has_merge) {
      r.rma_structured = false;
      diag("rma_structured",
           "block " + std::to_string(k) + " contains no merge");
      break;
    }
  }

  bool locally_regular = true;
  for (std::size_t k = 0; k < d.blocks.size(); ++k) {
    if (!sequence_strongly_regular(p, d.blocks[k])) {
      locally_regular = false;
      std::string msg = "block " + std::to_string(k) + " is irregular";
      diag("lrml", msg);
      diag("lrma", msg);
      break;
    }
  }
  r.lrml = r.rml && locally_regular;
  r.lrma = r.rma_structured && locally_regular;
  if (!r.rml && locally_regular) diag("lrml", "not rml");
  if (!r.rma_structured && locally_regular) diag("lrma", "not rma");

  r.rel = true;
  CnfFormula acc = f;
  for (int m : d.marks) {
    const Clause& c = p.step(m).clause;
    if (c.empty() || !is_empowering(acc, c).empowering) {
      r.rel = false;
      diag("rel", "lemma " + std::to_string(m) + " is absorbed");
      break;
    }
    acc.add_clause(c);
  }

  r.lreml = r.lrml && r.rel;
  if (!r.lreml)
    diag("lreml", !r.lrml ? "not lrml" : "not rel");
  return r;
}

std::string ClassificationReport::str() const {
  std::ostringstream os;
  auto put = [&](const char* k, bool v) {
    os << k << "=" << (v ? "true" : "false") << "\n";
  };
  put("valid_resolution", valid_resolution);
  put("tree_like", tree_like);
  put("input_shaped", input_shaped);
  put("rml", rml);
  put("rma_structured", rma_structured);
  put("rma_general", rma_general);
  put("lrml", lrml);
  put("lrma", lrma);
  put("rel", rel);
  put("lreml", lreml);
  for (const auto& [k, v] : diagnostics) os << "diag_" << k << "=" << v << "\n";
  return os.str();
}

}  // namespace mrt
