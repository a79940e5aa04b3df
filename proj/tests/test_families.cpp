#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "mrt/classify.hpp"
#include "mrt/cnf.hpp"
#include "mrt/families.hpp"
#include "mrt/proof.hpp"
#include "mrt/unit.hpp"

using namespace mrt;

namespace {

FamilyParams params(int l, int m, int n,
                    FamilyVariant v = FamilyVariant::base) {
  FamilyParams p;
  p.l = l;
  p.m = m;
  p.n = n;
  p.variant = v;
  return p;
}

bool merge_step(const Proof& p, const ProofStep& s) {
  return s.kind == StepKind::Resolution &&
         is_merge(p.step(s.premises[0]).clause, p.step(s.premises[1]).clause,
                  s.pivot);
}

/// The W-side clauses of an instance: all rung axioms plus the variant
/// clauses, which count as part of the W gadgets.
CnfFormula w_side(const CnfFormula& f, const FamilyLayout& lay) {
  CnfFormula w;
  for (std::size_t ci = 0; ci < f.size(); ++ci)
    if (lay.role(ci).kind != ClauseRole::x_axiom) w.add_clause(f.clause(ci));
  return CnfFormula(w.clauses(), f.num_vars());
}

struct ChainSample {
  std::vector<Clause> sequence;  // premises at use plus each resolvent
  std::vector<bool> merges;      // per resolvent
  std::vector<Clause> resolvents;
};

/// A random input derivation from the given axioms; when `regular` is set
/// the chain is strongly regular (used pivot variables never reappear).
/// Tautological resolvents are never produced.
ChainSample random_chain(const CnfFormula& axioms, std::mt19937& rng,
                         int max_steps, bool regular) {
  ChainSample out;
  Clause tip = axioms.clause(rng() % axioms.size());
  out.sequence.push_back(tip);
  std::set<int> used;
  for (int step = 0; step < max_steps; ++step) {
    struct Cand {
      Clause axiom;
      int pivot;
    };
    std::vector<Cand> cands;
    for (const Clause& c : axioms.clauses()) {
      if (regular) {
        bool touches = false;
        for (int v : c.support())
          if (used.count(v)) touches = true;
        if (touches) continue;
      }
      for (Lit l : tip.lits())
        if (c.contains(-l) &&
            !resolve(tip, c, var_of(l)).tautological())
          cands.push_back({c, var_of(l)});
    }
    if (cands.empty()) break;
    const Cand& pick = cands[rng() % cands.size()];
    Clause next = resolve(tip, pick.axiom, pick.pivot);
    out.merges.push_back(is_merge(tip, pick.axiom, pick.pivot));
    out.sequence.push_back(pick.axiom);
    out.sequence.push_back(next);
    out.resolvents.push_back(next);
    used.insert(pick.pivot);
    tip = next;
  }
  return out;
}

int clash_pairs(const Clause& a, const Clause& b) {
  int count = 0;
  for (Lit l : a.lits())
    if (b.contains(-l)) ++count;
  return count;
}

}  // namespace

TEST_CASE("generated sizes and the tiny instance") {
  auto [f, lay] = gen_family(params(2, 2, 3));
  CHECK(f.num_vars() == 9);
  CHECK(f.size() == 16);
  CHECK(lay.num_vars() == 9);
  CHECK(lay.num_clauses() == 16);

  auto [f0, lay0] = gen_family(params(1, 1, 2));
  CHECK(f0.num_vars() == 2);
  REQUIRE(f0.size() == 4);
  CHECK(f0.clause(0) == Clause{1, -2});
  CHECK(f0.clause(1) == Clause{-1, 2});
  CHECK(f0.clause(2) == Clause{1, 2});
  CHECK(f0.clause(3) == Clause{-1, -2});

  auto [f1, lay1] = gen_family(params(2, 2, 3, FamilyVariant::v1));
  CHECK(f1.num_vars() == 9 + 4);
  CHECK(f1.size() == 16 + 8);
  auto [f3, lay3] = gen_family(params(2, 2, 3, FamilyVariant::v3));
  CHECK(f3.num_vars() == 9);
  CHECK(f3.size() == 16 + 4);
}

TEST_CASE("layout lookups") {
  auto [f, lay] = gen_family(params(2, 2, 3));
  CHECK(lay.x_var(1) == 1);
  CHECK(lay.x_var(3) == 3);
  CHECK(lay.w_var(1, 1) == 4);
  CHECK(lay.w_var(2, 3) == 9);
  CHECK(lay.i_hat(3) == 1);
  CHECK(lay.i_hat(4) == 2);
  // A_{3,1} = w_{1,1} or w_{1,3} or -x_2 or x_3
  CHECK(f.clause(lay.find_x_axiom(3, 1)) == Clause{4, 6, -2, 3});
  CHECK(f.clause(lay.find_w_axiom(2, 1, 0)) == Clause{-7, 8});
  for (std::size_t ci = 0; ci < f.size(); ++ci) {
    const ClauseRole& r = lay.role(ci);
    if (r.kind == ClauseRole::w_axiom)
      CHECK(lay.find_w_axiom(r.block, r.rung, r.sign) == ci);
    else if (r.kind == ClauseRole::x_axiom)
      CHECK(lay.find_x_axiom(r.block, r.sign) == ci);
  }
  VarRole xr = lay.var_role(2);
  CHECK(xr.kind == VarRole::x);
  CHECK(xr.i == 2);
  VarRole wr = lay.var_role(8);
  CHECK(wr.kind == VarRole::w);
  CHECK(wr.i == 2);
  CHECK(wr.k == 2);
  CHECK(lay.is_w_var(4));
  CHECK(!lay.is_w_var(3));
  CHECK(lay.is_x_var(3));
  CHECK_THROWS_AS(lay.var_role(10), error);
  CHECK_THROWS_AS(lay.x_var(4), error);
  CHECK_THROWS_AS(lay.z_var(1), error);

  auto [fv, layv] = gen_family(params(2, 1, 3, FamilyVariant::v1));
  CHECK(layv.z_var(1) == 1 + 6 + 1);
  CHECK(layv.y_var(2) == 1 + 6 + 2 + 2);
  auto sub = layv.aux_substitution();
  CHECK(sub.at(layv.z_var(1)) == layv.w_var(1, 1));
  CHECK(sub.at(layv.y_var(2)) == -layv.w_var(2, 1));
  auto [fv2, layv2] = gen_family(params(2, 1, 3, FamilyVariant::v2));
  Restriction rho = layv2.aux_assignment();
  CHECK(rho.value(layv2.z_var(2)) == true);
  CHECK(rho.value(layv2.y_var(1)) == true);
  auto [fv3, layv3] = gen_family(params(2, 1, 3, FamilyVariant::v3));
  auto sub3 = layv3.aux_substitution();
  CHECK(sub3.at(layv3.w_var(1, 2)) == layv3.w_var(1, 1));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(gen_family(params(0, 1, 2)), error);
  CHECK_THROWS_AS(gen_family(params(1, 0, 2)), error);
  CHECK_THROWS_AS(gen_family(params(1, 1, 1)), error);
  CHECK_THROWS_AS(gen_family(params(1, 1, 2, FamilyVariant::v3)), error);
  CHECK_THROWS_AS(build_res_ub(params(2, 2, 3, FamilyVariant::v1)), error);
}

TEST_CASE("res_ub is a valid refutation with the predicted length") {
  for (int l : {1, 2, 3})
    for (int m : {1, 2, 3})
      for (int n : {2, 3, 4, 5}) {
        FamilyParams p = params(l, m, n);
        auto [f, lay] = gen_family(p);
        Proof pr = build_res_ub(p);
        CAPTURE(l); CAPTURE(m); CAPTURE(n);
        CHECK(check_valid(pr, f).ok);
        CHECK(is_refutation(pr));
        CHECK(stats(pr).length == res_ub_length(p));
      }
  CHECK(res_ub_length(params(1, 1, 2)) == 7);
  CHECK(res_ub_length(params(2, 2, 3)) == 35);
  // scaling with (m + n) at fixed l
  double ratio = static_cast<double>(res_ub_length(params(4, 8, 8))) /
                 static_cast<double>(res_ub_length(params(4, 4, 4)));
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}

TEST_CASE("the tree-like merge-lemma refutation") {
  for (int l : {1, 2, 3})
    for (int m : {1, 2})
      for (int n : {2, 3, 4}) {
        FamilyParams p = params(l, m, n);
        auto [f, lay] = gen_family(p);
        Proof pr = build_rml_r1(p);
        CAPTURE(l); CAPTURE(m); CAPTURE(n);
        CHECK(check_valid(pr, f).ok);
        CHECK(is_refutation(pr));
        CHECK(stats(pr).length == r1_length(p));
        ClassificationReport r = classify(pr, f);
        CHECK(r.valid_resolution);
        CHECK(r.tree_like);
        CHECK(r.rml);
      }
  // rederiving the equality clauses costs a factor that grows with n
  double r8 = static_cast<double>(r1_length(params(4, 8, 8))) /
              static_cast<double>(res_ub_length(params(4, 8, 8)));
  double r32 = static_cast<double>(r1_length(params(4, 32, 32))) /
               static_cast<double>(res_ub_length(params(4, 32, 32)));
  CHECK(r32 >= 3.0 * r8 * 0.999);
  CHECK(r32 / r8 >= 3.0);
}

TEST_CASE("the reusable merge-lemma refutation") {
  for (int l : {1, 2})
    for (int m : {2, 3})
      for (int n : {3, 4}) {
        FamilyParams p = params(l, m, n);
        auto [f, lay] = gen_family(p);
        Proof pr = build_rml_r3(p);
        CAPTURE(l); CAPTURE(m); CAPTURE(n);
        CHECK(check_valid(pr, f).ok);
        CHECK(is_refutation(pr));
        CHECK(stats(pr).length == r3_length(p));
        ClassificationReport r = classify(pr, f);
        CHECK(r.valid_resolution);
        CHECK(r.rml);
        CHECK(!r.tree_like);  // the equality lemmas are reused

        // both equality clauses of every block are lemmas with a merge as
        // their last step, reused once per congruent position
        auto cons = pr.consumers();
        for (int j = 1; j <= l; ++j)
          for (int b : {1, 0}) {
            Clause eq = b == 1
                            ? Clause{lay.w_var(j, 1), -lay.w_var(j, n)}
                            : Clause{-lay.w_var(j, 1), lay.w_var(j, n)};
            int found = -1;
            for (const ProofStep& s : pr.steps())
              if (s.kind == StepKind::Resolution && s.clause == eq &&
                  pr.is_lemma(s.id))
                found = s.id;
            REQUIRE(found >= 0);
            CHECK(merge_step(pr, pr.step(found)));
            CHECK(cons[found].size() == static_cast<std::size_t>(m));
          }
      }
  CHECK(r3_length(params(2, 2, 3)) == 107);
  CHECK_THROWS_AS(build_rml_r3(params(2, 1, 3)), error);
  CHECK_THROWS_AS(build_rml_r3(params(2, 2, 2)), error);
}

TEST_CASE("W-only derivations have no merges and stay two-literal") {
  auto [f, lay] = gen_family(params(3, 2, 4));
  CnfFormula w = w_side(f, lay);
  std::mt19937 rng(501);
  int samples = 0;
  for (int iter = 0; iter < 2500; ++iter) {
    ChainSample s = random_chain(w, rng, 8, false);
    if (s.resolvents.empty()) continue;
    ++samples;
    for (bool m : s.merges) CHECK(!m);
    for (const Clause& c : s.resolvents) {
      REQUIRE(c.size() == 2);
      int pos = 0, neg = 0, block = -1;
      bool same_block = true;
      for (Lit l : c.lits()) {
        (positive(l) ? pos : neg)++;
        REQUIRE(lay.is_w_var(var_of(l)));
        VarRole vr = lay.var_role(var_of(l));
        if (block < 0) block = vr.i;
        if (vr.i != block) same_block = false;
      }
      CHECK(pos == 1);
      CHECK(neg == 1);
      CHECK(same_block);
    }
  }
  CHECK(samples >= 2000);
}

TEST_CASE("W-supported clauses with X dependencies depend on every position") {
  FamilyParams p = params(2, 2, 3);
  auto [f, lay] = gen_family(p);
  int M = p.m * p.l;
  std::vector<Proof> outputs;
  outputs.push_back(build_res_ub(p));
  outputs.push_back(build_rml_r1(p));
  outputs.push_back(build_rml_r3(p));
  for (const Proof& pr : outputs) {
    for (const ProofStep& s : pr.steps()) {
      if (s.kind != StepKind::Resolution || s.clause.empty()) continue;
      bool w_supported = true;
      for (int v : s.clause.support())
        if (!lay.is_w_var(v)) w_supported = false;
      if (!w_supported) continue;
      std::set<int> covered;
      bool uses_x = false;
      for (int ax : axiom_dependencies(pr, s.id)) {
        int ci = f.find_clause(pr.step(ax).clause);
        REQUIRE(ci >= 0);
        const ClauseRole& role = lay.role(static_cast<std::size_t>(ci));
        if (role.kind == ClauseRole::x_axiom) {
          uses_x = true;
          covered.insert(role.block);
        }
      }
      if (!uses_x) continue;
      CHECK(covered.size() == static_cast<std::size_t>(M));
    }
  }
  Proof r3 = build_rml_r3(p);
  int eq_like = 0;
  for (const ProofStep& s : r3.steps())
    if (s.kind == StepKind::Resolution && r3.is_lemma(s.id) &&
        s.clause.size() == 2 && lay.is_w_var(var_of(s.clause.lits()[0])))
      ++eq_like;
  CHECK(eq_like == 2 * p.l);
}

TEST_CASE("variant lemma blocks") {
  FamilyParams p1 = params(2, 2, 3, FamilyVariant::v1);
  auto [f1, lay1] = gen_family(p1);
  Proof b1 = build_variant_lemma_block(p1, TargetSystem::rma, 1, 1);
  CHECK(check_valid(b1, f1).ok);
  CHECK(b1.step(b1.root_id()).clause ==
        Clause{lay1.w_var(1, 1), -lay1.w_var(1, 3)});
  CHECK(b1.is_lemma(b1.root_id()));
  bool has_merge = false;
  for (const ProofStep& s : b1.steps())
    if (merge_step(b1, s)) has_merge = true;
  CHECK(has_merge);  // the re-obtained first rung is the merge ancestor
  CHECK(!merge_step(b1, b1.step(b1.root_id())));

  FamilyParams p2 = params(2, 2, 4, FamilyVariant::v2);
  auto [f2, lay2] = gen_family(p2);
  for (int b : {1, 0}) {
    Proof rml_block = build_variant_lemma_block(p2, TargetSystem::rml, 1, b);
    CHECK(check_valid(rml_block, f2).ok);
    const ProofStep& last = rml_block.step(rml_block.root_id());
    Clause eq = b == 1 ? Clause{lay2.w_var(1, 1), -lay2.w_var(1, 4)}
                       : Clause{-lay2.w_var(1, 1), lay2.w_var(1, 4)};
    CHECK(last.clause == eq);
    CHECK(merge_step(rml_block, last));
    // the merge is over the far-end literal w_{1,n}
    Lit far = b == 1 ? -lay2.w_var(1, 4) : lay2.w_var(1, 4);
    CHECK(rml_block.step(last.premises[0]).clause.contains(far));
    CHECK(rml_block.step(last.premises[1]).clause.contains(far));

    Proof lrma_block =
        build_variant_lemma_block(p2, TargetSystem::lrma, 1, b);
    CHECK(check_valid(lrma_block, f2).ok);
    CHECK(lrma_block.step(lrma_block.root_id()).clause == eq);
    CHECK(check_strongly_regular(lrma_block));
    bool m = false;
    for (const ProofStep& s : lrma_block.steps())
      if (merge_step(lrma_block, s)) m = true;
    CHECK(m);
  }

  FamilyParams p3 = params(2, 2, 4, FamilyVariant::v3);
  auto [f3, lay3] = gen_family(p3);
  Proof b3 = build_variant_lemma_block(p3, TargetSystem::lrml, 2, 0);
  CHECK(check_valid(b3, f3).ok);
  CHECK(b3.step(b3.root_id()).clause ==
        Clause{-lay3.w_var(2, 1), lay3.w_var(2, 4)});
  CHECK(check_strongly_regular(b3));
  CHECK(merge_step(b3, b3.step(b3.root_id())));

  CHECK_THROWS_AS(build_variant_lemma_block(p1, TargetSystem::rml, 1, 1),
                  error);
  CHECK_THROWS_AS(build_variant_lemma_block(p3, TargetSystem::rma, 1, 1),
                  error);
}

TEST_CASE("variant refutations classify as claimed") {
  FamilyParams p1 = params(2, 2, 4, FamilyVariant::v1);
  auto [f1, lay1] = gen_family(p1);
  ClassificationReport r1 = classify(build_variant_refutation(p1, TargetSystem::rma), f1);
  CHECK(r1.valid_resolution);
  CHECK(r1.rma_structured);
  CHECK(!r1.rml);
  CHECK(!r1.lrma);

  FamilyParams p2 = params(2, 2, 4, FamilyVariant::v2);
  auto [f2, lay2] = gen_family(p2);
  ClassificationReport rml_r =
      classify(build_variant_refutation(p2, TargetSystem::rml), f2);
  CHECK(rml_r.valid_resolution);
  CHECK(rml_r.rml);
  CHECK(!rml_r.lrml);
  ClassificationReport lrma_r =
      classify(build_variant_refutation(p2, TargetSystem::lrma), f2);
  CHECK(lrma_r.valid_resolution);
  CHECK(lrma_r.lrma);
  CHECK(!lrma_r.rml);

  FamilyParams p3 = params(2, 2, 4, FamilyVariant::v3);
  auto [f3, lay3] = gen_family(p3);
  ClassificationReport r3 =
      classify(build_variant_refutation(p3, TargetSystem::lrml), f3);
  CHECK(r3.valid_resolution);
  CHECK(r3.lrml);
  CHECK(!r3.rel);

  CHECK_THROWS_AS(build_variant_refutation(p1, TargetSystem::lrml), error);
}

TEST_CASE("no-reuse falsification attempts fail on the variants") {
  std::mt19937 rng(811);

  // v1: strongly regular derivations from the W side never contain a merge
  auto [f1, lay1] = gen_family(params(2, 2, 4, FamilyVariant::v1));
  CnfFormula w1 = w_side(f1, lay1);
  int done = 0;
  for (int iter = 0; iter < 2500 && done < 2000; ++iter) {
    ChainSample s = random_chain(w1, rng, 8, true);
    if (s.resolvents.empty()) continue;
    ++done;
    for (bool m : s.merges) CHECK(!m);
    // clauses with two clashing pairs never share a regular derivation
    for (std::size_t a = 0; a < s.sequence.size(); ++a)
      for (std::size_t b = a + 1; b < s.sequence.size(); ++b)
        CHECK(clash_pairs(s.sequence[a], s.sequence[b]) < 2);
  }
  CHECK(done >= 1000);

  // v2: merges in strongly regular W-side derivations only rederive
  // clauses the formula already contains
  auto [f2, lay2] = gen_family(params(2, 2, 4, FamilyVariant::v2));
  CnfFormula w2 = w_side(f2, lay2);
  done = 0;
  int merges_seen = 0;
  for (int iter = 0; iter < 2500 && done < 2000; ++iter) {
    ChainSample s = random_chain(w2, rng, 8, true);
    if (s.resolvents.empty()) continue;
    ++done;
    for (std::size_t k = 0; k < s.merges.size(); ++k)
      if (s.merges[k]) {
        ++merges_seen;
        CHECK(w2.find_clause(s.resolvents[k]) >= 0);
      }
  }
  CHECK(done >= 1000);
  CHECK(merges_seen > 0);

  // v3: every clause derivable from the W side is absorbed, because any
  // single assignment propagates the whole block
  auto [f3, lay3] = gen_family(params(2, 2, 4, FamilyVariant::v3));
  CnfFormula w3 = w_side(f3, lay3);
  done = 0;
  for (int iter = 0; iter < 1200 && done < 1000; ++iter) {
    ChainSample s = random_chain(w3, rng, 6, false);
    if (s.resolvents.empty()) continue;
    ++done;
    for (const Clause& c : s.resolvents) {
      REQUIRE(!c.empty());
      CHECK(!is_empowering(w3, c).empowering);
    }
  }
  CHECK(done >= 1000);
}

TEST_CASE("weakened formula and the derivation of its slack literal") {
  const std::vector<std::array<int, 3>> grid = {
      {1, 1, 2}, {2, 2, 3}, {2, 3, 4}};
  for (auto [l, m, n] : grid) {
    FamilyParams p = params(l, m, n);
    auto [f, lay] = gen_family(p);
    CnfFormula g = gen_weakening_formula(p);
    int z = weakening_var(p);
    CAPTURE(l); CAPTURE(m); CAPTURE(n);
    CHECK(g.num_vars() == f.num_vars() + 1);
    CHECK(g.size() == f.size() + 1);
    for (const Clause& c : g.clauses())
      if (c.size() > 1) CHECK(c.contains(z));
    CHECK(g.clause(g.size() - 1) == Clause{-z});

    Proof d = build_weakening_derivation(p);
    CheckOptions opts;
    opts.allow_weakening = true;
    CHECK(check_valid(d, g, opts).ok);
    CHECK(d.step(d.root_id()).clause == Clause{z});
    for (const ProofStep& s : d.steps())
      if (s.kind == StepKind::Resolution) CHECK(merge_step(d, s));
    CHECK(stats(d).length <= 8 * static_cast<std::size_t>(f.num_vars()));

    Restriction kill;
    kill.set(z, false);
    CnfFormula restricted = apply_restriction(g, kill);
    CHECK(restricted.clauses() == f.clauses());
  }
}

TEST_CASE("layout sidecar round trip") {
  for (FamilyVariant v : {FamilyVariant::base, FamilyVariant::v1,
                          FamilyVariant::v2, FamilyVariant::v3}) {
    auto [f, lay] = gen_family(params(2, 2, 3, v));
    std::string text = write_layout(lay);
    FamilyLayout back = parse_layout(text);
    CHECK(back.params().l == 2);
    CHECK(back.params().m == 2);
    CHECK(back.params().n == 3);
    CHECK(back.params().variant == v);
    CHECK(back.num_vars() == lay.num_vars());
    CHECK(back.num_clauses() == lay.num_clauses());
    CHECK(back.w_var(2, 3) == lay.w_var(2, 3));
  }
  CHECK_THROWS_AS(parse_layout(""), error);
  CHECK_THROWS_AS(parse_layout("x 1 1\n"), error);
  CHECK_THROWS_AS(parse_layout("family 2 2 3 base\nx 1 9\n"), error);
  CHECK_THROWS_AS(parse_layout("family 2 2 3 base\nw 1 1 1\n"), error);
  CHECK_THROWS_AS(parse_layout("family 2 2 3 v9\n"), error);
  CHECK_THROWS_AS(parse_layout("family 2 2 3 base\nclause 0 x_axiom 1 0 1\n"),
                  error);
  CHECK_THROWS_AS(parse_layout_file("/nonexistent.layout"), error);
}
