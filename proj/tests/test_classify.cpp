#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mrt/classify.hpp"
#include "mrt/cnf.hpp"
#include "mrt/proof.hpp"
#include "mrt/unit.hpp"

using namespace mrt;

namespace {

void check_closure(const ClassificationReport& r) {
  if (r.lreml) CHECK((r.lrml && r.rel));
  if (r.lrml) CHECK((r.rml && r.lrma));
  if (r.lrma) CHECK(r.rma_structured);
  if (r.rml) CHECK(r.rma_structured);
  if (r.rel) CHECK(r.rma_structured);
  if (r.rma_structured) CHECK(r.rma_general);
  if (r.input_shaped) CHECK(r.tree_like);
}

Clause random_clause(std::mt19937& rng, int nvars) {
  std::vector<Lit> lits;
  for (int v = 1; v <= nvars; ++v) {
    int r = rng() % 3;
    if (r == 1) lits.push_back(v);
    if (r == 2) lits.push_back(-v);
  }
  return Clause(std::move(lits));
}

}  // namespace

TEST_CASE("trivial refutation classifies everywhere") {
  CnfFormula f;
  f.add_clause(Clause{1});
  f.add_clause(Clause{-1});
  ProofBuilder b;
  b.add_resolution(b.add_axiom(Clause{1}), b.add_axiom(Clause{-1}), 1);
  ClassificationReport r = classify(b.take(), f);
  CHECK(r.valid_resolution);
  CHECK(r.tree_like);
  CHECK(r.input_shaped);
  CHECK(r.rml);
  CHECK(r.rma_structured);
  CHECK(r.rma_general);
  CHECK(r.lrml);
  CHECK(r.lrma);
  CHECK(r.rel);
  CHECK(r.lreml);
  check_closure(r);
}

TEST_CASE("merge lemma with empowerment") {
  CnfFormula f;
  f.add_clause(Clause{1, 2});
  f.add_clause(Clause{-1, 2});
  f.add_clause(Clause{-2, 3});
  ProofBuilder b;
  int r1 = b.add_resolution(b.add_axiom(Clause{1, 2}),
                            b.add_axiom(Clause{-1, 2}), 1);
  b.mark_lemma(r1);
  b.add_resolution(r1, b.add_axiom(Clause{-2, 3}), 2);
  ClassificationReport r = classify(b.take(), f);
  CHECK(r.valid_resolution);
  CHECK(r.rml);
  CHECK(r.lrml);
  CHECK(r.rel);
  CHECK(r.lreml);
  check_closure(r);
}

TEST_CASE("absorbed lemma fails rel but not rml") {
  // with the unit [-2] among the axioms the lemma [2] is absorbed
  CnfFormula f;
  f.add_clause(Clause{1, 2});
  f.add_clause(Clause{-1, 2});
  f.add_clause(Clause{-2});
  ProofBuilder b;
  int r1 = b.add_resolution(b.add_axiom(Clause{1, 2}),
                            b.add_axiom(Clause{-1, 2}), 1);
  b.mark_lemma(r1);
  b.add_resolution(r1, b.add_axiom(Clause{-2}), 2);
  ClassificationReport r = classify(b.take(), f);
  CHECK(r.valid_resolution);
  CHECK(r.rml);
  CHECK(r.lrml);
  CHECK(!r.rel);
  CHECK(!r.lreml);
  CHECK(r.diagnostics.count("rel"));
  check_closure(r);
}

TEST_CASE("non-merge lemma fails rml and rma_structured") {
  CnfFormula f;
  f.add_clause(Clause{1, 2});
  f.add_clause(Clause{-1, 3});
  f.add_clause(Clause{-2, 4});
  ProofBuilder b;
  int r1 = b.add_resolution(b.add_axiom(Clause{1, 2}),
                            b.add_axiom(Clause{-1, 3}), 1);
  b.mark_lemma(r1);
  b.add_resolution(r1, b.add_axiom(Clause{-2, 4}), 2);
  ClassificationReport r = classify(b.take(), f);
  CHECK(r.valid_resolution);
  CHECK(!r.rml);
  CHECK(!r.rma_structured);
  CHECK(r.diagnostics.at("rml").find("lemma") != std::string::npos);
  check_closure(r);
}

TEST_CASE("axiom marked as lemma fails rml") {
  CnfFormula f;
  f.add_clause(Clause{1});
  f.add_clause(Clause{-1});
  ProofBuilder b;
  int a1 = b.add_axiom(Clause{1});
  b.mark_lemma(a1);
  b.add_resolution(a1, b.add_axiom(Clause{-1}), 1);
  ClassificationReport r = classify(b.take(), f);
  CHECK(r.valid_resolution);
  CHECK(!r.rml);
  check_closure(r);
}

TEST_CASE("reused non-merge without merge ancestor fails rma_general") {
  CnfFormula f;
  f.add_clause(Clause{1, 2});
  f.add_clause(Clause{-1, 3});
  f.add_clause(Clause{-2, 4});
  f.add_clause(Clause{-2, 5});
  ProofBuilder b;
  int r1 = b.add_resolution(b.add_axiom(Clause{1, 2}),
                            b.add_axiom(Clause{-1, 3}), 1);
  b.add_resolution(r1, b.add_axiom(Clause{-2, 4}), 2);
  b.add_resolution(r1, b.add_axiom(Clause{-2, 5}), 2);
  Proof p = b.take();
  ClassificationReport r = classify(p, f);
  CHECK(!r.rma_general);
  CHECK(r.diagnostics.at("rma_general").find(std::to_string(r1)) !=
        std::string::npos);
  CHECK(!r.tree_like);
  check_closure(r);
}

TEST_CASE("reused merge passes rma_general") {
  CnfFormula f;
  f.add_clause(Clause{1, 2});
  f.add_clause(Clause{-1, 2});
  f.add_clause(Clause{-2, 4});
  f.add_clause(Clause{-2, 5});
  ProofBuilder b;
  int r1 = b.add_resolution(b.add_axiom(Clause{1, 2}),
                            b.add_axiom(Clause{-1, 2}), 1);  // merge
  b.add_resolution(r1, b.add_axiom(Clause{-2, 4}), 2);
  b.add_resolution(r1, b.add_axiom(Clause{-2, 5}), 2);
  ClassificationReport r = classify(b.take(), f);
  CHECK(r.rma_general);
  CHECK(!r.tree_like);
  // no lemma marks but the DAG branches: not input-structured
  CHECK(!r.rml);
}

TEST_CASE("check_strongly_regular") {
  ProofBuilder b;
  int r1 = b.add_resolution(b.add_axiom(Clause{1, 2}),
                            b.add_axiom(Clause{-1, 3}), 1);
  CHECK(b.clause(r1) == Clause{2, 3});
  int r2 = b.add_resolution(r1, b.add_axiom(Clause{-2, 4}), 2);
  CHECK(b.clause(r2) == Clause{3, 4});
  CHECK(check_strongly_regular(b.take()));

  ProofBuilder c;
  int s1 = c.add_resolution(c.add_axiom(Clause{1, 2}),
                            c.add_axiom(Clause{-1, 3}), 1);
  c.add_resolution(s1, c.add_axiom(Clause{-2, 1}), 2);  // reintroduces var 1
  CHECK(!check_strongly_regular(c.take()));
}

TEST_CASE("input_derive outputs are strongly regular") {
  std::mt19937 rng(37);
  int produced = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    CnfFormula f;
    int nv = 3 + static_cast<int>(rng() % 4);
    for (int k = 0, nc = 2 + rng() % 7; k < nc; ++k) {
      Clause c = random_clause(rng, nv);
      if (!c.tautological()) f.add_clause(c);
    }
    f = CnfFormula(f.clauses(), nv);
    Clause target = random_clause(rng, nv);
    if (target.tautological()) continue;
    auto p = input_derive(f, target);
    if (!p) continue;
    ++produced;
    CHECK(check_strongly_regular(*p));
    CHECK(check_input_structured(*p).ok);
    ClassificationReport r = classify(*p, f);
    CHECK(r.valid_resolution);
    CHECK(r.input_shaped);
    check_closure(r);
  }
  CHECK(produced > 3000);
}

TEST_CASE("block_partition") {
  ProofBuilder b;
  int r1 = b.add_resolution(b.add_axiom(Clause{1, 2}),
                            b.add_axiom(Clause{-1, 2}), 1);
  b.mark_lemma(r1);
  int r2 = b.add_resolution(r1, b.add_axiom(Clause{-2, 3}), 2);
  Proof p = b.take();
  auto blocks = block_partition(p);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<int>{r1});
  CHECK(blocks[1] == std::vector<int>{r2});

  // branching without lemma marks is not input-structured
  ProofBuilder c;
  int s1 = c.add_resolution(c.add_axiom(Clause{1, 2}),
                            c.add_axiom(Clause{-1, 2}), 1);
  int s2 = c.add_resolution(s1, c.add_axiom(Clause{-2, 3}), 2);
  c.add_resolution(s1, c.add_axiom(Clause{-2, 4}), 2);
  Proof q = c.take();
  CHECK(!check_input_structured(q).ok);
  CHECK_THROWS_AS(block_partition(q), error);
  // marking the reused step alone is not enough: the two consumers are two
  // chains, so the first one must close a block too
  q.mark_lemma(s1);
  CHECK(!check_input_structured(q).ok);
  q.mark_lemma(s2);
  CHECK(check_input_structured(q).ok);
  CHECK(block_partition(q).size() == 3);
}

TEST_CASE("classification is deterministic and closed, randomized") {
  std::mt19937 rng(41);
  int classified = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    int nv = 4;
    CnfFormula f;
    ProofBuilder b;
    std::vector<int> ids;
    for (int k = 0; k < 4; ++k) {
      Clause c = random_clause(rng, nv);
      if (c.tautological() || c.empty()) continue;
      f.add_clause(c);
      ids.push_back(b.add_axiom(c));
    }
    if (ids.size() < 2) continue;
    // random resolution attempts, occasionally marking lemmas
    for (int k = 0; k < 6 && ids.size() >= 2; ++k) {
      int i = ids[rng() % ids.size()];
      int j = ids[rng() % ids.size()];
      if (i == j) continue;
      try {
        int r = b.add_resolution(i, j);
        ids.push_back(r);
        if (rng() % 3 == 0) b.mark_lemma(r);
      } catch (const error&) {
      }
    }
    Proof p = b.take();
    if (p.empty()) continue;
    ++classified;
    ClassificationReport r1 = classify(p, f);
    ClassificationReport r2 = classify(p, f);
    CHECK(r1.str() == r2.str());
    check_closure(r1);
  }
  CHECK(classified > 1000);
}
