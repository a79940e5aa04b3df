#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "mrt/cnf.hpp"
#include "mrt/proof.hpp"

namespace mrt {

/// The benchmark family F(l,m,n) and its three variants. The base formula
/// has variables x_i (i in [m*l-1]) and w_{j,k} (j in [l], k in [n]), with
/// the boundary values x_0 = 1 and x_{m*l} = 0 folded in by dropping those
/// literals at generation time. Each variant adds a constant number of
/// redundant clauses per block j in [l], counted as part of the W axioms.
enum class FamilyVariant { base, v1, v2, v3 };

struct FamilyParams {
  int l = 1;
  int m = 1;
  int n = 2;
  FamilyVariant variant = FamilyVariant::base;
};

/// Role tag of one generated clause.
///   w_axiom:        B_{j,k,b} = (w_{j,k} = w_{j,k+1}) expanded; block=j,
///                   rung=k, sign=b
///   x_axiom:        A_{i,b}; block=i, sign=b
///   variant_clause: the extra clause number `rung` (1-based) of block j
struct ClauseRole {
  enum Kind { w_axiom, x_axiom, variant_clause };
  Kind kind = w_axiom;
  int block = 0;
  int rung = 0;
  int sign = 0;
};

/// Role of one variable index.
struct VarRole {
  enum Kind { x, w, z, y };
  Kind kind = x;
  int i = 0;  // x/z/y index, or block j for w
  int k = 0;  // rung for w
};

/// Variable numbering and clause-role bookkeeping for a generated family
/// instance. Variables: x_i at index i for i in [m*l-1], then w_{j,k} at
/// (m*l-1) + (j-1)*n + k in row-major order, then the auxiliaries z_1..z_l
/// followed by y_1..y_l for variants v1/v2.
class FamilyLayout {
 public:
  FamilyLayout() = default;
  explicit FamilyLayout(const FamilyParams& p);

  const FamilyParams& params() const { return params_; }
  int num_vars() const;
  std::size_t num_clauses() const { return roles_.size(); }

  int x_var(int i) const;
  int w_var(int j, int k) const;
  int z_var(int i) const;  // v1/v2 only
  int y_var(int i) const;  // v1/v2 only

  /// Canonical form of i modulo l, in [l].
  int i_hat(int i) const;

  VarRole var_role(int v) const;
  bool is_w_var(int v) const;
  bool is_x_var(int v) const;

  const ClauseRole& role(std::size_t clause_index) const;
  /// Clause indices by role; throw when absent.
  std::size_t find_w_axiom(int j, int k, int b) const;
  std::size_t find_x_axiom(int i, int b) const;
  std::size_t find_variant_clause(int j, int number) const;

  /// Substitution that maps the redundant variables back into the base
  /// formula: v1 sends z_i to w_{i,1} and y_i to -w_{i,1}; v3 identifies
  /// w_{i,2} with w_{i,1} (collapsing each block to n-1 rungs). Empty for
  /// base and v2.
  std::map<int, Lit> aux_substitution() const;
  /// Assignment that recovers the base formula for v2 (z_i = y_i = 1);
  /// empty otherwise. Satisfied copies of existing clauses are kept, not
  /// deduplicated.
  Restriction aux_assignment() const;

  void record_role(ClauseRole r) { roles_.push_back(r); }

 private:
  FamilyParams params_;
  std::vector<ClauseRole> roles_;
};

/// Generates the family instance together with its layout. Requires
/// l, m >= 1 and n >= 2 (n >= 3 for v3). The base instance has
/// (m*l-1) + l*n variables and 2*l*(n-1) + 2*m*l clauses, emitted as all
/// W axioms (j, k ascending, sign 1 then 0), all X axioms (i ascending,
/// sign 1 then 0), then the variant clauses.
std::pair<CnfFormula, FamilyLayout> gen_family(const FamilyParams& p);

/// G = (F or z) and not-z: every clause of the base instance weakened by a
/// fresh literal z, plus the unit clause {-z}.
CnfFormula gen_weakening_formula(const FamilyParams& p);
int weakening_var(const FamilyParams& p);

/// The short refutation: derives both clauses of w_{j,1} = w_{j,n} once
/// per block and reuses them for every position i. Length is exactly
/// res_ub_length(p), which is at most 6 * l * (m + n).
Proof build_res_ub(const FamilyParams& p);

/// The tree-like merge-lemma refutation: the equality clauses are not
/// merges, so they are rederived at every position instead of reused.
/// Classifies as tree-like and rml; length is exactly r1_length(p).
Proof build_rml_r1(const FamilyParams& p);

/// The reuse-friendly merge-lemma refutation: each equality clause is
/// derived with a merge as its last step (by substituting, at positions
/// congruent to its block, the step-clause derivation with one that
/// carries the equality literals) and then reused as a lemma at every
/// position. Requires m >= 2 and n >= 3; length is exactly r3_length(p).
Proof build_rml_r3(const FamilyParams& p);

/// Derivation of the unit clause {z} from gen_weakening_formula(p),
/// replaying build_res_ub with z carried through every clause; every
/// resolution step is a merge.
Proof build_weakening_derivation(const FamilyParams& p);

/// Exact lengths of the refutations above (axioms included), as closed
/// forms in (l, m, n).
std::size_t res_ub_length(const FamilyParams& p);
std::size_t r1_length(const FamilyParams& p);
std::size_t r3_length(const FamilyParams& p);

enum class TargetSystem { rma, rml, lrma, lrml };

/// A standalone derivation of the equality clause of block j with sign b
/// (b = 1: w_{j,1} or -w_{j,n}; b = 0: -w_{j,1} or w_{j,n}) from the
/// variant clauses, ending in a lemma that satisfies the target system's
/// lemma discipline. Supported pairs: (v1, rma), (v2, rml), (v2, lrma),
/// (v3, lrml). The system argument disambiguates the two distinct v2
/// constructions.
Proof build_variant_lemma_block(const FamilyParams& p, TargetSystem system,
                                int j, int b);

/// Full refutation of a variant instance: the 2*l equality lemma blocks
/// for the target system followed by the shared tail over the X axioms.
Proof build_variant_refutation(const FamilyParams& p, TargetSystem system);

/// Text sidecar recording the layout: a `family l m n variant` line
/// followed by `x <i> <var>` / `w <j> <k> <var>` / `z|y <i> <var>`
/// variable lines and `clause <index> <kind> <block> <rung> <sign>` role
/// lines. parse_layout rebuilds the layout from the family line and
/// verifies every listed mapping, throwing on any mismatch.
std::string write_layout(const FamilyLayout& lay);
FamilyLayout parse_layout(const std::string& text);
FamilyLayout parse_layout_file(const std::string& path);

}  // namespace mrt
