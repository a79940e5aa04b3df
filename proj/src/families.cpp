#include "mrt/families.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace mrt {

namespace {

void validate(const FamilyParams& p) {
  if (p.l < 1 || p.m < 1 || p.n < 2)
    throw error("gen_family: need l >= 1, m >= 1, n >= 2");
  if (p.variant == FamilyVariant::v3 && p.n < 3)
    throw error("gen_family: variant v3 needs n >= 3");
}

int positions(const FamilyParams& p) { return p.m * p.l; }

Clause w_axiom_clause(const FamilyLayout& lay, int j, int k, int b) {
  int a = lay.w_var(j, k);
  int c = lay.w_var(j, k + 1);
  return b == 1 ? Clause{a, -c} : Clause{-a, c};
}

Clause x_axiom_clause(const FamilyLayout& lay, int i, int b) {
  const FamilyParams& p = lay.params();
  int j = lay.i_hat(i);
  std::vector<Lit> lits;
  int w1 = lay.w_var(j, 1);
  int wn = lay.w_var(j, p.n);
  if (b == 1) {
    lits = {w1, wn};
  } else {
    lits = {-w1, -wn};
  }
  if (i >= 2) lits.push_back(-lay.x_var(i - 1));
  if (i <= positions(p) - 1) lits.push_back(lay.x_var(i));
  return Clause(std::move(lits));
}

Clause variant_clause(const FamilyLayout& lay, int j, int num) {
  const FamilyParams& p = lay.params();
  int w1 = lay.w_var(j, 1);
  int w2 = lay.w_var(j, 2);
  switch (p.variant) {
    case FamilyVariant::v1: {
      int z = lay.z_var(j);
      int y = lay.y_var(j);
      switch (num) {
        case 1: return Clause{-w1, w2, -z};
        case 2: return Clause{-w2, z};
        case 3: return Clause{w1, -w2, -y};
        case 4: return Clause{w2, y};
      }
      break;
    }
    case FamilyVariant::v2: {
      int z = lay.z_var(j);
      int y = lay.y_var(j);
      switch (num) {
        case 1: return Clause{z, -w1, w2};
        case 2: return Clause{-z, -w1, w2};
        case 3: return Clause{y, w1, -w2};
        case 4: return Clause{-y, w1, -w2};
      }
      break;
    }
    case FamilyVariant::v3: {
      int w3 = lay.w_var(j, 3);
      switch (num) {
        case 1: return Clause{-w1, -w2, w3};
        case 2: return Clause{w1, w2, -w3};
      }
      break;
    }
    case FamilyVariant::base:
      break;
  }
  throw error("variant_clause: no clause " + std::to_string(num) +
              " for this variant");
}

int variant_clause_count(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::v1:
    case FamilyVariant::v2:
      return 4;
    case FamilyVariant::v3:
      return 2;
    case FamilyVariant::base:
      break;
  }
  return 0;
}

/// Shared emission state for the refutation builders. `extra`, when
/// nonzero, is a literal appended to every axiom (and therefore carried
/// through every resolvent), used to replay a refutation over the
/// weakened formula.
struct Emitter {
  const FamilyLayout& lay;
  Lit extra = 0;
  ProofBuilder b;

  const FamilyParams& p() const { return lay.params(); }
  int M() const { return positions(lay.params()); }

  Clause with_extra(Clause c) const {
    return extra == 0 ? c : c.union_with(Clause{extra});
  }
  int axw(int j, int k, int bb) {
    return b.add_axiom(with_extra(w_axiom_clause(lay, j, k, bb)));
  }
  int axx(int i, int bb) {
    return b.add_axiom(with_extra(x_axiom_clause(lay, i, bb)));
  }
  int axv(int j, int num) {
    return b.add_axiom(with_extra(variant_clause(lay, j, num)));
  }
  int res(int p1, int p2, int pivot) { return b.add_resolution(p1, p2, pivot); }
  void mark(int id) { b.mark_lemma(id); }
};

/// The equality-clause ladder for block j: rungs 1..n-1 resolved into
/// w_{j,1} or -w_{j,n} (b = 1) respectively -w_{j,1} or w_{j,n} (b = 0).
/// For n = 2 this is the single rung axiom itself.
int eq_chain(Emitter& e, int j, int bb) {
  int tip = e.axw(j, 1, bb);
  for (int k = 2; k < e.p().n; ++k)
    tip = e.res(tip, e.axw(j, k, bb), e.lay.w_var(j, k));
  return tip;
}

/// The shared ending of every refutation here: given both equality clauses
/// per block (as axiom or lemma step ids), resolve each position's pair of
/// X axioms down to its step clause -x_{i-1} or x_i, then chain those into
/// the empty clause.
void tail(Emitter& e, const std::vector<int>& eq1, const std::vector<int>& eq0) {
  int M = e.M();
  std::vector<int> step(M + 1, -1);
  for (int i = 1; i <= M; ++i) {
    int j = e.lay.i_hat(i);
    int a = e.res(eq1[j], e.axx(i, 1), e.lay.w_var(j, e.p().n));
    e.mark(a);
    int t = e.res(eq0[j], e.axx(i, 0), e.lay.w_var(j, e.p().n));
    step[i] = e.res(t, a, e.lay.w_var(j, 1));
    if (M > 1) e.mark(step[i]);
  }
  if (M > 1) {
    int tip = step[1];
    for (int i = 2; i <= M; ++i)
      tip = e.res(tip, step[i], e.lay.x_var(i - 1));
  }
}

Proof emit_res_ub(const FamilyParams& p, Lit extra) {
  FamilyLayout lay(p);
  Emitter e{lay, extra};
  std::vector<int> eq1(p.l + 1, -1), eq0(p.l + 1, -1);
  for (int j = 1; j <= p.l; ++j) {
    eq1[j] = eq_chain(e, j, 1);
    if (p.n > 2) e.mark(eq1[j]);
    eq0[j] = eq_chain(e, j, 0);
    if (p.n > 2) e.mark(eq0[j]);
  }
  tail(e, eq1, eq0);
  return e.b.take();
}

void require_base(const FamilyParams& p, const char* who) {
  validate(p);
  if (p.variant != FamilyVariant::base)
    throw error(std::string(who) + ": base family required");
}

/// Rederives the step clause -x_{i-1} or x_i of one position from scratch
/// (ladders included) and marks it; both intermediate lemmas are merges.
int step_lemma(Emitter& e, int i) {
  int j = e.lay.i_hat(i);
  int tip1 = eq_chain(e, j, 1);
  int a = e.res(tip1, e.axx(i, 1), e.lay.w_var(j, e.p().n));
  e.mark(a);
  int tip0 = eq_chain(e, j, 0);
  int t = e.res(tip0, e.axx(i, 0), e.lay.w_var(j, e.p().n));
  int s = e.res(t, a, e.lay.w_var(j, 1));
  e.mark(s);
  return s;
}

/// The substituted step clause of a position congruent to its own block:
/// carries the equality literals instead of eliminating them, so that the
/// block's equality clause survives to the end of the outer chain. For
/// b = 1 the result is w_{j,2} or -w_{j,n} or -x_{i-1} or x_i.
int carrier_lemma(Emitter& e, int i, int j, int bb) {
  int tip = e.axw(j, 2, bb);
  for (int k = 3; k < e.p().n; ++k)
    tip = e.res(tip, e.axw(j, k, bb), e.lay.w_var(j, k));
  int u = e.res(tip, e.axx(i, bb), e.lay.w_var(j, e.p().n));
  int L = e.res(u, e.axx(i, 1 - bb), e.lay.w_var(j, 1));
  e.mark(L);
  return L;
}

/// Derives the equality clause of block j with a merge as its last step:
/// every position's step clause is derived as in the tree-like refutation,
/// except that positions congruent to j use the carrier form; the outer
/// chain then closes with the block's first rung, a merge because the
/// carrier literals of two different congruent positions meet there.
int derive_eq_r3(Emitter& e, int j, int bb) {
  int M = e.M();
  int i0 = j + (e.p().m - 1) * e.p().l;  // last position congruent to j
  std::vector<int> lem(M + 1, -1);
  for (int i = 1; i <= M; ++i)
    lem[i] = e.lay.i_hat(i) == j ? carrier_lemma(e, i, j, bb)
                                 : step_lemma(e, i);
  int rung1 = e.axw(j, 1, bb);
  int tip = -1;
  for (int i = 1; i <= M; ++i) {
    bool own = e.lay.i_hat(i) == j;
    if (i == 1) {
      tip = own ? e.res(lem[1], rung1, e.lay.w_var(j, 2)) : lem[1];
      continue;
    }
    tip = e.res(tip, lem[i], e.lay.x_var(i - 1));
    if (own && i != i0) tip = e.res(tip, rung1, e.lay.w_var(j, 2));
  }
  int eq = e.res(tip, rung1, e.lay.w_var(j, 2));
  e.mark(eq);
  return eq;
}

struct VariantSupport {
  FamilyVariant variant;
  TargetSystem system;
};

void require_variant_pair(const FamilyParams& p, TargetSystem s,
                          const char* who) {
  validate(p);
  static const VariantSupport supported[] = {
      {FamilyVariant::v1, TargetSystem::rma},
      {FamilyVariant::v2, TargetSystem::rml},
      {FamilyVariant::v2, TargetSystem::lrma},
      {FamilyVariant::v3, TargetSystem::lrml},
  };
  for (const VariantSupport& vs : supported)
    if (vs.variant == p.variant && vs.system == s) return;
  throw error(std::string(who) + ": unsupported variant/system pair");
}

/// Emits one variant equality block and returns the id of its final
/// (marked) step.
int variant_eq_block(Emitter& e, TargetSystem system, int j, int bb) {
  const FamilyParams& p = e.p();
  const FamilyLayout& lay = e.lay;
  int n = p.n;
  int tip = -1;
  switch (p.variant) {
    case FamilyVariant::v1: {
      // Re-obtain the first rung as a merge via the redundant clauses,
      // then ladder up; the lemma has the merge as an ancestor.
      if (bb == 1) {
        tip = e.res(e.axw(j, 1, 1), e.axv(j, 4), lay.w_var(j, 2));
        tip = e.res(tip, e.axv(j, 3), lay.y_var(j));
      } else {
        tip = e.res(e.axw(j, 1, 0), e.axv(j, 2), lay.w_var(j, 2));
        tip = e.res(tip, e.axv(j, 1), lay.z_var(j));
      }
      for (int k = 2; k < n; ++k)
        tip = e.res(tip, e.axw(j, k, bb), lay.w_var(j, k));
      break;
    }
    case FamilyVariant::v2: {
      if (system == TargetSystem::lrma) {
        // One merge over the fresh variable, then the plain ladder; the
        // block is strongly regular.
        tip = bb == 1 ? e.res(e.axv(j, 3), e.axv(j, 4), lay.y_var(j))
                      : e.res(e.axv(j, 1), e.axv(j, 2), lay.z_var(j));
        for (int k = 2; k < n; ++k)
          tip = e.res(tip, e.axw(j, k, bb), lay.w_var(j, k));
      } else {
        // Ladder from the top down to rung 2, pass through both redundant
        // clauses, then ladder again so the last step merges over the
        // far-end literal.
        if (n == 2) {
          tip = bb == 1 ? e.res(e.axv(j, 3), e.axv(j, 4), lay.y_var(j))
                        : e.res(e.axv(j, 1), e.axv(j, 2), lay.z_var(j));
          break;
        }
        tip = e.axw(j, n - 1, bb);
        for (int k = n - 2; k >= 2; --k)
          tip = e.res(tip, e.axw(j, k, bb), lay.w_var(j, k + 1));
        if (bb == 1) {
          tip = e.res(tip, e.axv(j, 3), lay.w_var(j, 2));
          tip = e.res(tip, e.axv(j, 4), lay.y_var(j));
        } else {
          tip = e.res(tip, e.axv(j, 1), lay.w_var(j, 2));
          tip = e.res(tip, e.axv(j, 2), lay.z_var(j));
        }
        for (int k = 2; k < n; ++k)
          tip = e.res(tip, e.axw(j, k, bb), lay.w_var(j, k));
      }
      break;
    }
    case FamilyVariant::v3: {
      // Start from the three-rung clause, ladder from rung 3 up, then
      // close with rung 1; the last step merges over the first rung.
      tip = e.axv(j, bb == 1 ? 2 : 1);
      for (int k = 3; k < n; ++k)
        tip = e.res(tip, e.axw(j, k, bb), lay.w_var(j, k));
      tip = e.res(tip, e.axw(j, 1, bb), lay.w_var(j, 2));
      break;
    }
    case FamilyVariant::base:
      throw error("variant_eq_block: base family has no variant blocks");
  }
  e.mark(tip);
  return tip;
}

}  // namespace

FamilyLayout::FamilyLayout(const FamilyParams& p) : params_(p) { validate(p); }

int FamilyLayout::num_vars() const {
  int base = (positions(params_) - 1) + params_.l * params_.n;
  if (params_.variant == FamilyVariant::v1 ||
      params_.variant == FamilyVariant::v2)
    base += 2 * params_.l;
  return base;
}

int FamilyLayout::x_var(int i) const {
  if (i < 1 || i > positions(params_) - 1)
    throw error("x_var: index " + std::to_string(i) + " out of range");
  return i;
}

int FamilyLayout::w_var(int j, int k) const {
  if (j < 1 || j > params_.l || k < 1 || k > params_.n)
    throw error("w_var: (" + std::to_string(j) + "," + std::to_string(k) +
                ") out of range");
  return (positions(params_) - 1) + (j - 1) * params_.n + k;
}

int FamilyLayout::z_var(int i) const {
  if (params_.variant != FamilyVariant::v1 &&
      params_.variant != FamilyVariant::v2)
    throw error("z_var: this variant has no auxiliary variables");
  if (i < 1 || i > params_.l) throw error("z_var: index out of range");
  return (positions(params_) - 1) + params_.l * params_.n + i;
}

int FamilyLayout::y_var(int i) const {
  return z_var(i) + params_.l;
}

int FamilyLayout::i_hat(int i) const {
  return (i - 1) % params_.l + 1;
}

VarRole FamilyLayout::var_role(int v) const {
  int M = positions(params_);
  if (v >= 1 && v <= M - 1) return {VarRole::x, v, 0};
  int w0 = M - 1;
  if (v > w0 && v <= w0 + params_.l * params_.n) {
    int off = v - w0 - 1;
    return {VarRole::w, off / params_.n + 1, off % params_.n + 1};
  }
  int z0 = w0 + params_.l * params_.n;
  if (params_.variant == FamilyVariant::v1 ||
      params_.variant == FamilyVariant::v2) {
    if (v > z0 && v <= z0 + params_.l) return {VarRole::z, v - z0, 0};
    if (v > z0 + params_.l && v <= z0 + 2 * params_.l)
      return {VarRole::y, v - z0 - params_.l, 0};
  }
  throw error("var_role: variable " + std::to_string(v) +
              " outside the layout");
}

bool FamilyLayout::is_w_var(int v) const {
  int w0 = positions(params_) - 1;
  return v > w0 && v <= w0 + params_.l * params_.n;
}

bool FamilyLayout::is_x_var(int v) const {
  return v >= 1 && v <= positions(params_) - 1;
}

const ClauseRole& FamilyLayout::role(std::size_t clause_index) const {
  if (clause_index >= roles_.size())
    throw error("role: clause index out of range");
  return roles_[clause_index];
}

std::size_t FamilyLayout::find_w_axiom(int j, int k, int b) const {
  if (j < 1 || j > params_.l || k < 1 || k > params_.n - 1 ||
      (b != 0 && b != 1))
    throw error("find_w_axiom: out of range");
  return static_cast<std::size_t>(
      ((j - 1) * (params_.n - 1) + (k - 1)) * 2 + (b == 1 ? 0 : 1));
}

std::size_t FamilyLayout::find_x_axiom(int i, int b) const {
  if (i < 1 || i > positions(params_) || (b != 0 && b != 1))
    throw error("find_x_axiom: out of range");
  return static_cast<std::size_t>(2 * params_.l * (params_.n - 1) +
                                  (i - 1) * 2 + (b == 1 ? 0 : 1));
}

std::size_t FamilyLayout::find_variant_clause(int j, int number) const {
  int per_block = variant_clause_count(params_.variant);
  if (per_block == 0)
    throw error("find_variant_clause: base family has no variant clauses");
  if (j < 1 || j > params_.l || number < 1 || number > per_block)
    throw error("find_variant_clause: out of range");
  return static_cast<std::size_t>(2 * params_.l * (params_.n - 1) +
                                  2 * positions(params_) +
                                  (j - 1) * per_block + (number - 1));
}

std::map<int, Lit> FamilyLayout::aux_substitution() const {
  std::map<int, Lit> sub;
  if (params_.variant == FamilyVariant::v1) {
    for (int i = 1; i <= params_.l; ++i) {
      sub[z_var(i)] = w_var(i, 1);
      sub[y_var(i)] = -w_var(i, 1);
    }
  } else if (params_.variant == FamilyVariant::v3) {
    for (int i = 1; i <= params_.l; ++i) sub[w_var(i, 2)] = w_var(i, 1);
  }
  return sub;
}

Restriction FamilyLayout::aux_assignment() const {
  Restriction rho;
  if (params_.variant == FamilyVariant::v2) {
    for (int i = 1; i <= params_.l; ++i) {
      rho.set(z_var(i), true);
      rho.set(y_var(i), true);
    }
  }
  return rho;
}

std::pair<CnfFormula, FamilyLayout> gen_family(const FamilyParams& p) {
  validate(p);
  FamilyLayout lay(p);
  CnfFormula f;
  for (int j = 1; j <= p.l; ++j)
    for (int k = 1; k < p.n; ++k)
      for (int b : {1, 0}) {
        f.add_clause(w_axiom_clause(lay, j, k, b));
        lay.record_role({ClauseRole::w_axiom, j, k, b});
      }
  for (int i = 1; i <= positions(p); ++i)
    for (int b : {1, 0}) {
      f.add_clause(x_axiom_clause(lay, i, b));
      lay.record_role({ClauseRole::x_axiom, i, 0, b});
    }
  for (int j = 1; j <= p.l; ++j)
    for (int num = 1; num <= variant_clause_count(p.variant); ++num) {
      f.add_clause(variant_clause(lay, j, num));
      lay.record_role({ClauseRole::variant_clause, j, num, 0});
    }
  return {CnfFormula(f.clauses(), lay.num_vars()), std::move(lay)};
}

CnfFormula gen_weakening_formula(const FamilyParams& p) {
  auto [f, lay] = gen_family(p);
  int z = lay.num_vars() + 1;
  CnfFormula g;
  for (const Clause& c : f.clauses()) g.add_clause(c.union_with(Clause{z}));
  g.add_clause(Clause{-z});
  return CnfFormula(g.clauses(), z);
}

int weakening_var(const FamilyParams& p) {
  return FamilyLayout(p).num_vars() + 1;
}

Proof build_res_ub(const FamilyParams& p) {
  require_base(p, "build_res_ub");
  return emit_res_ub(p, 0);
}

Proof build_weakening_derivation(const FamilyParams& p) {
  require_base(p, "build_weakening_derivation");
  return emit_res_ub(p, weakening_var(p));
}

Proof build_rml_r1(const FamilyParams& p) {
  require_base(p, "build_rml_r1");
  FamilyLayout lay(p);
  Emitter e{lay, 0};
  int M = positions(p);
  std::vector<int> step(M + 1, -1);
  for (int i = 1; i <= M; ++i) {
    int j = lay.i_hat(i);
    int tip1 = eq_chain(e, j, 1);
    int a = e.res(tip1, e.axx(i, 1), lay.w_var(j, p.n));
    e.mark(a);
    int tip0 = eq_chain(e, j, 0);
    int t = e.res(tip0, e.axx(i, 0), lay.w_var(j, p.n));
    step[i] = e.res(t, a, lay.w_var(j, 1));
    if (M > 1) e.mark(step[i]);
  }
  if (M > 1) {
    int tip = step[1];
    for (int i = 2; i <= M; ++i)
      tip = e.res(tip, step[i], lay.x_var(i - 1));
  }
  return e.b.take();
}

Proof build_rml_r3(const FamilyParams& p) {
  require_base(p, "build_rml_r3");
  if (p.m < 2 || p.n < 3)
    throw error("build_rml_r3: needs m >= 2 and n >= 3");
  FamilyLayout lay(p);
  Emitter e{lay, 0};
  std::vector<int> eq1(p.l + 1, -1), eq0(p.l + 1, -1);
  for (int j = 1; j <= p.l; ++j) {
    eq1[j] = derive_eq_r3(e, j, 1);
    eq0[j] = derive_eq_r3(e, j, 0);
  }
  tail(e, eq1, eq0);
  return e.b.take();
}

std::size_t res_ub_length(const FamilyParams& p) {
  std::size_t l = p.l, m = p.m, n = p.n, M = m * l;
  std::size_t axioms = 2 * l * (n - 1) + 2 * M;
  return axioms + 2 * l * (n - 2) + 3 * M + (M > 1 ? M - 1 : 0);
}

std::size_t r1_length(const FamilyParams& p) {
  std::size_t l = p.l, m = p.m, n = p.n, M = m * l;
  std::size_t axioms = 2 * l * (n - 1) + 2 * M;
  return axioms + M * (2 * (n - 2) + 3) + (M > 1 ? M - 1 : 0);
}

std::size_t r3_length(const FamilyParams& p) {
  std::size_t l = p.l, m = p.m, n = p.n, M = m * l;
  std::size_t axioms = 2 * l * (n - 1) + 2 * M;
  std::size_t per_eq =
      (M - m) * (2 * n - 1) + m * (n - 1) + (M + m - 1);
  return axioms + 2 * l * per_eq + 4 * M - 1;
}

Proof build_variant_lemma_block(const FamilyParams& p, TargetSystem system,
                                int j, int b) {
  require_variant_pair(p, system, "build_variant_lemma_block");
  if (j < 1 || j > p.l || (b != 0 && b != 1))
    throw error("build_variant_lemma_block: block or sign out of range");
  FamilyLayout lay(p);
  Emitter e{lay, 0};
  variant_eq_block(e, system, j, b);
  return e.b.take();
}

Proof build_variant_refutation(const FamilyParams& p, TargetSystem system) {
  require_variant_pair(p, system, "build_variant_refutation");
  FamilyLayout lay(p);
  Emitter e{lay, 0};
  std::vector<int> eq1(p.l + 1, -1), eq0(p.l + 1, -1);
  for (int j = 1; j <= p.l; ++j) {
    eq1[j] = variant_eq_block(e, system, j, 1);
    eq0[j] = variant_eq_block(e, system, j, 0);
  }
  tail(e, eq1, eq0);
  return e.b.take();
}

namespace {

const char* variant_name(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::base: return "base";
    case FamilyVariant::v1: return "v1";
    case FamilyVariant::v2: return "v2";
    default: return "v3";
  }
}

FamilyVariant variant_from_name(const std::string& s) {
  if (s == "base") return FamilyVariant::base;
  if (s == "v1") return FamilyVariant::v1;
  if (s == "v2") return FamilyVariant::v2;
  if (s == "v3") return FamilyVariant::v3;
  throw error("parse_layout: unknown variant '" + s + "'");
}

const char* role_name(ClauseRole::Kind k) {
  switch (k) {
    case ClauseRole::w_axiom: return "w_axiom";
    case ClauseRole::x_axiom: return "x_axiom";
    default: return "variant_clause";
  }
}

}  // namespace

std::string write_layout(const FamilyLayout& lay) {
  const FamilyParams& p = lay.params();
  std::ostringstream os;
  os << "family " << p.l << ' ' << p.m << ' ' << p.n << ' '
     << variant_name(p.variant) << '\n';
  for (int i = 1; i <= p.m * p.l - 1; ++i)
    os << "x " << i << ' ' << lay.x_var(i) << '\n';
  for (int j = 1; j <= p.l; ++j)
    for (int k = 1; k <= p.n; ++k)
      os << "w " << j << ' ' << k << ' ' << lay.w_var(j, k) << '\n';
  if (p.variant == FamilyVariant::v1 || p.variant == FamilyVariant::v2)
    for (int i = 1; i <= p.l; ++i)
      os << "z " << i << ' ' << lay.z_var(i) << '\n'
         << "y " << i << ' ' << lay.y_var(i) << '\n';
  for (std::size_t ci = 0; ci < lay.num_clauses(); ++ci) {
    const ClauseRole& r = lay.role(ci);
    os << "clause " << ci << ' ' << role_name(r.kind) << ' ' << r.block
       << ' ' << r.rung << ' ' << r.sign << '\n';
  }
  return os.str();
}

FamilyLayout parse_layout(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  bool have_family = false;
  FamilyLayout lay;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "family") {
      FamilyParams p;
      std::string vname;
      if (!(ls >> p.l >> p.m >> p.n >> vname))
        throw error("parse_layout: malformed family line");
      p.variant = variant_from_name(vname);
      lay = FamilyLayout(gen_family(p).second);
      have_family = true;
      continue;
    }
    if (!have_family)
      throw error("parse_layout: '" + tag + "' line before the family line");
    if (tag == "x" || tag == "z" || tag == "y") {
      int i = 0, v = 0;
      if (!(ls >> i >> v))
        throw error("parse_layout: malformed " + tag + " line");
      int want = tag == "x"   ? lay.x_var(i)
                 : tag == "z" ? lay.z_var(i)
                              : lay.y_var(i);
      if (v != want)
        throw error("parse_layout: " + tag + " " + std::to_string(i) +
                    " maps to variable " + std::to_string(want) + ", not " +
                    std::to_string(v));
    } else if (tag == "w") {
      int j = 0, k = 0, v = 0;
      if (!(ls >> j >> k >> v))
        throw error("parse_layout: malformed w line");
      if (v != lay.w_var(j, k))
        throw error("parse_layout: w " + std::to_string(j) + " " +
                    std::to_string(k) + " maps to variable " +
                    std::to_string(lay.w_var(j, k)) + ", not " +
                    std::to_string(v));
    } else if (tag == "clause") {
      std::size_t ci = 0;
      std::string kind;
      int block = 0, rung = 0, sign = 0;
      if (!(ls >> ci >> kind >> block >> rung >> sign))
        throw error("parse_layout: malformed clause line");
      if (ci >= lay.num_clauses())
        throw error("parse_layout: clause index " + std::to_string(ci) +
                    " out of range");
      const ClauseRole& r = lay.role(ci);
      if (kind != role_name(r.kind) || block != r.block || rung != r.rung ||
          sign != r.sign)
        throw error("parse_layout: clause " + std::to_string(ci) +
                    " role mismatch");
    } else {
      throw error("parse_layout: unknown line tag '" + tag + "'");
    }
  }
  if (!have_family) throw error("parse_layout: missing family line");
  return lay;
}

FamilyLayout parse_layout_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("parse_layout_file: cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_layout(os.str());
}

}  // namespace mrt
