#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mrt/cnf.hpp"

namespace mrt {

enum class StepKind { Axiom, Resolution, Weakening, Satisfied };

struct ProofStep {
  int id = 0;
  StepKind kind = StepKind::Axiom;
  std::array<int, 2> premises{-1, -1};  // -1 = unused
  int pivot = 0;                        // 0 = none / not inferable
  Clause clause;                        // unused for Satisfied

  int num_premises() const {
    return (premises[0] >= 0 ? 1 : 0) + (premises[1] >= 0 ? 1 : 0);
  }
};

/// A resolution derivation as a DAG of steps with strictly increasing ids,
/// plus the lemma marks that delimit its input-structured block view.
/// Proofs produced by applying a restriction are flagged `semantic`:
/// their steps are implied by, not resolvents of, their premises.
class Proof {
 public:
  Proof() = default;

  const std::vector<ProofStep>& steps() const { return steps_; }
  const ProofStep& step(int id) const;
  bool has_step(int id) const { return index_.count(id) > 0; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }

  int root_id() const;
  const std::set<int>& lemma_marks() const { return lemma_marks_; }
  bool is_lemma(int id) const { return lemma_marks_.count(id) > 0; }

  bool semantic() const { return semantic_; }
  void set_semantic(bool v) { semantic_ = v; }

  void add_step(ProofStep step);
  void mark_lemma(int id);
  void clear_lemma_marks() { lemma_marks_.clear(); }

  /// Ids of the distinct steps that consume each step (keyed by id).
  std::unordered_map<int, std::vector<int>> consumers() const;

 private:
  std::vector<ProofStep> steps_;
  std::unordered_map<int, std::size_t> index_;
  std::set<int> lemma_marks_;
  bool semantic_ = false;
};

/// Incremental construction helper used by the generators and transforms.
class ProofBuilder {
 public:
  ProofBuilder() = default;

  /// Adds an axiom step; identical axioms are shared.
  int add_axiom(const Clause& c);
  int add_resolution(int p1, int p2, int pivot);
  /// Infers the pivot (must be unique) from the premise clauses.
  int add_resolution(int p1, int p2);
  int add_weakening(int premise, const Clause& weakened);
  void mark_lemma(int id) { proof_.mark_lemma(id); }

  const Clause& clause(int id) const { return proof_.step(id).clause; }
  const Proof& proof() const { return proof_; }
  Proof take() { return std::move(proof_); }

 private:
  Proof proof_;
  int next_id_ = 1;
  std::unordered_map<std::string, int> axiom_ids_;
};

struct CheckOptions {
  bool allow_weakening = false;
  bool allow_tautologies = true;
};

struct ValidityReport {
  bool ok = true;
  int step_id = 0;
  std::string message;
};

/// Syntactic validity: axioms occur in f, resolutions are exact resolvents,
/// weakenings are supersets of their premise (when allowed). Semantic proofs
/// are rejected; use check_semantic for those.
ValidityReport check_valid(const Proof& p, const CnfFormula& f,
                           const CheckOptions& opts = {});

/// Relaxed check for semantic derivations: every step's clause must be
/// implied by the conjunction of its (at most two) premises.
ValidityReport check_semantic(const Proof& p, const CnfFormula& f);

bool is_refutation(const Proof& p);

/// Axiom steps with a directed path to `id` (an axiom depends on itself).
std::set<int> axiom_dependencies(const Proof& p, int id);

/// Applies rho to every step clause, keeping ids; satisfied clauses become
/// Satisfied placeholder steps. The result is a semantic derivation.
Proof restrict_proof(const Proof& p, const Restriction& rho);

/// The syntactic equivalent s(eta) of a semantic derivation: each step is
/// mapped to a premise's image when that image already implies it, and to an
/// actual resolvent otherwise. Output is a syntactic proof (ids renumbered).
Proof syntactic_equivalent(const Proof& p);

/// Single-clause entailment, placeholder-aware: nullopt is the always-true
/// clause. a |= c iff c is true everywhere a is.
bool clause_entails(const std::optional<Clause>& a,
                    const std::optional<Clause>& c);

struct ProofStats {
  std::size_t length = 0;  // steps, satisfied placeholders excluded
  std::size_t num_merges = 0;
  std::size_t max_out_degree = 0;
  std::size_t width = 0;
  std::size_t lemma_count = 0;
};

ProofStats stats(const Proof& p);

Proof parse_trace(const std::string& text);
Proof parse_trace_file(const std::string& path);
std::string write_trace(const Proof& p);

}  // namespace mrt
