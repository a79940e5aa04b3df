#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrt/analysis.hpp"
#include "mrt/cdcl.hpp"
#include "mrt/classify.hpp"
#include "mrt/cnf.hpp"
#include "mrt/families.hpp"
#include "mrt/proof.hpp"
#include "mrt/transform.hpp"
#include "mrt/unit.hpp"

using nlohmann::json;

namespace {

// Ordered report emitted as stable key=value lines, or JSON with --json.
class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    items_.emplace_back(key, value);
  }
  void add(const std::string& key, long long value) {
    add(key, std::to_string(value));
  }
  void add(const std::string& key, bool value) {
    add(key, std::string(value ? "true" : "false"));
  }

  void print(bool as_json) const {
    if (as_json) {
      json j = json::object();
      for (const auto& [k, v] : items_) j[k] = v;
      std::cout << j.dump(2) << '\n';
    } else {
      for (const auto& [k, v] : items_) std::cout << k << '=' << v << '\n';
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw mrt::error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw mrt::error("write to " + path + " failed");
}

std::uint64_t default_seed() {
  const char* env = std::getenv("MRT_SEED");
  if (!env) return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw mrt::error("MRT_SEED is not a number");
  }
}

mrt::FamilyVariant variant_of(const std::string& name) {
  if (name == "base") return mrt::FamilyVariant::base;
  if (name == "v1") return mrt::FamilyVariant::v1;
  if (name == "v2") return mrt::FamilyVariant::v2;
  if (name == "v3") return mrt::FamilyVariant::v3;
  throw CLI::ValidationError("--family", "unknown family '" + name + "'");
}

mrt::TargetSystem system_of(const std::string& name) {
  if (name == "rma") return mrt::TargetSystem::rma;
  if (name == "rml") return mrt::TargetSystem::rml;
  if (name == "lrma") return mrt::TargetSystem::lrma;
  if (name == "lrml") return mrt::TargetSystem::lrml;
  throw CLI::ValidationError("--system", "unknown system '" + name + "'");
}

mrt::Clause parse_clause_text(const std::string& text) {
  std::istringstream is(text);
  std::vector<mrt::Lit> lits;
  int l = 0;
  while (is >> l) {
    if (l == 0) break;
    lits.push_back(l);
  }
  return mrt::Clause(std::move(lits));
}

std::string clause_text(const mrt::Clause& c) {
  std::ostringstream os;
  for (mrt::Lit l : c.lits()) os << l << ' ';
  os << '0';
  return os.str();
}

bool flag_of(const mrt::ClassificationReport& r, const std::string& name) {
  if (name == "tree-like") return r.tree_like;
  if (name == "input") return r.input_shaped;
  if (name == "rml") return r.rml;
  if (name == "rma") return r.rma_structured;
  if (name == "rma-general") return r.rma_general;
  if (name == "lrml") return r.lrml;
  if (name == "lrma") return r.lrma;
  if (name == "rel") return r.rel;
  if (name == "lreml") return r.lreml;
  throw CLI::ValidationError("--system", "unknown system '" + name + "'");
}

// Input-resolution closure of f, for the brute-force oracle.
std::set<mrt::Clause> input_closure(const mrt::CnfFormula& f) {
  std::set<mrt::Clause> reach(f.clauses().begin(), f.clauses().end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<mrt::Clause> cur(reach.begin(), reach.end());
    for (const mrt::Clause& a : cur)
      for (const mrt::Clause& ax : f.clauses())
        for (int v : a.support()) {
          bool clash = (a.contains(v) && ax.contains(-v)) ||
                       (a.contains(-v) && ax.contains(v));
          if (!clash || (a.contains(v) && a.contains(-v)) ||
              (ax.contains(v) && ax.contains(-v)))
            continue;
          mrt::Clause r = mrt::resolve(a, ax, v);
          if (!r.tautological() && reach.insert(r).second) grew = true;
        }
  }
  return reach;
}

bool closure_member(const std::set<mrt::Clause>& closure,
                    const mrt::Clause& c) {
  for (const mrt::Clause& r : closure)
    if (r.subset_of(c)) return true;
  return false;
}

std::vector<mrt::Clause> all_clauses_over(int num_vars) {
  std::vector<mrt::Clause> out;
  std::size_t total = 1;
  for (int v = 0; v < num_vars; ++v) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    std::vector<mrt::Lit> lits;
    bool taut = false;
    for (int v = 1; v <= num_vars; ++v) {
      switch (c % 3) {
        case 1: lits.push_back(v); break;
        case 2: lits.push_back(-v); break;
        default: break;
      }
      c /= 3;
    }
    (void)taut;
    out.push_back(mrt::Clause(std::move(lits)));
  }
  return out;
}

struct Options {
  bool as_json = false;
  int jobs = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"merge-resolution toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.as_json, "emit JSON instead of key=value");
  app.add_option("--jobs", opt.jobs, "parallel jobs for independent inputs")
      ->check(CLI::PositiveNumber);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a family instance");
  struct {
    std::string family = "base";
    int l = 1, m = 1, n = 2;
    std::string out, layout, proof;
    bool weakened = false;
  } g;
  gen->add_option("--family", g.family, "base|v1|v2|v3");
  gen->add_option("--l", g.l)->required();
  gen->add_option("--m", g.m)->required();
  gen->add_option("--n", g.n)->required();
  gen->add_option("--out", g.out, "DIMACS output")->required();
  gen->add_option("--layout", g.layout, "layout sidecar output");
  gen->add_option("--proof", g.proof,
                  "also emit the short refutation (ISR)");
  gen->add_flag("--weakened", g.weakened,
                "emit the slack-literal weakening of the base instance");

  // ---- gen-proof ----
  auto* genp = app.add_subcommand("gen-proof", "generate a refutation");
  struct {
    std::string kind;
    std::string family = "base";
    std::string system = "rml";
    int l = 1, m = 1, n = 2;
    std::string out, formula;
  } gp;
  genp->add_option("--kind", gp.kind, "res-ub|rml-r1|rml-r3|variant|weakening")
      ->required();
  genp->add_option("--family", gp.family, "family for --kind variant");
  genp->add_option("--system", gp.system,
                   "target system for --kind variant (rma|rml|lrma|lrml)");
  genp->add_option("--l", gp.l)->required();
  genp->add_option("--m", gp.m)->required();
  genp->add_option("--n", gp.n)->required();
  genp->add_option("--out", gp.out, "ISR output")->required();
  genp->add_option("--formula", gp.formula, "also emit the DIMACS instance");

  // ---- check ----
  auto* check = app.add_subcommand("check", "validate and optionally classify");
  struct {
    std::string proof, formula, system, expect = "true";
    bool allow_weakening = false;
    bool semantic = false;
  } ck;
  check->add_option("--proof", ck.proof)->required();
  check->add_option("--formula", ck.formula)->required();
  check->add_option("--system", ck.system,
                    "tree-like|input|rml|rma|rma-general|lrml|lrma|rel|lreml");
  check->add_option("--expect", ck.expect, "true|false (default true)");
  check->add_flag("--allow-weakening", ck.allow_weakening);
  check->add_flag("--semantic", ck.semantic,
                  "check entailment instead of syntactic validity");

  // ---- classify ----
  auto* cls = app.add_subcommand("classify", "full classification report");
  struct {
    std::string proof, formula;
  } cl;
  cls->add_option("--proof", cl.proof)->required();
  cls->add_option("--formula", cl.formula)->required();

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "simulate into a lemma system");
  struct {
    std::string proof, formula, target = "rml", out;
  } sm;
  sim->add_option("--proof", sm.proof)->required();
  sim->add_option("--formula", sm.formula)->required();
  sim->add_option("--target", sm.target, "rml|lreml");
  sim->add_option("--out", sm.out)->required();

  // ---- transform ----
  auto* tr = app.add_subcommand("transform", "structural proof transforms");
  struct {
    std::string proof, kind, out;
  } tf;
  tr->add_option("--proof", tf.proof)->required();
  tr->add_option("--kind", tf.kind,
                 "tree-to-input|tree-to-merge|decompose|regularize")
      ->required();
  tr->add_option("--out", tf.out)->required();

  // ---- restrict ----
  auto* rs = app.add_subcommand("restrict", "apply or sample restrictions");
  rs->require_subcommand(1);
  auto* rs_apply = rs->add_subcommand("apply", "apply a restriction map");
  struct {
    std::string map, formula, out, proof, proof_out;
  } ra;
  rs_apply->add_option("--map", ra.map, "restriction map file")->required();
  rs_apply->add_option("--formula", ra.formula);
  rs_apply->add_option("--out", ra.out, "restricted DIMACS output");
  rs_apply->add_option("--proof", ra.proof);
  rs_apply->add_option("--proof-out", ra.proof_out,
                       "syntactic equivalent of the restricted proof");

  auto* rs_sample = rs->add_subcommand("sample", "draw one block sample");
  struct {
    std::string layout, out;
    std::uint64_t seed = 0;
    bool seed_set = false;
  } rsmp;
  rs_sample->add_option("--layout", rsmp.layout)->required();
  auto* rsmp_seed = rs_sample->add_option("--seed", rsmp.seed);
  rs_sample->add_option("--out", rsmp.out, "restriction map output");

  auto* rs_find =
      rs->add_subcommand("find-respecting", "search for a narrowing sample");
  struct {
    std::string proof, layout, out;
    int max_tries = 100;
    std::uint64_t seed = 0;
  } rf;
  rs_find->add_option("--proof", rf.proof)->required();
  rs_find->add_option("--layout", rf.layout)->required();
  rs_find->add_option("--max-tries", rf.max_tries);
  auto* rf_seed = rs_find->add_option("--seed", rf.seed);
  rs_find->add_option("--out", rf.out, "restriction map output");

  // ---- stats ----
  auto* st = app.add_subcommand("stats", "proof statistics");
  std::string st_proof;
  st->add_option("--proof", st_proof)->required();

  // ---- mu-report ----
  auto* mur = app.add_subcommand("mu-report", "block-width histogram");
  struct {
    std::string proof, layout;
  } mu_opts;
  mur->add_option("--proof", mu_opts.proof)->required();
  mur->add_option("--layout", mu_opts.layout)->required();

  // ---- analyze-conflict ----
  auto* ac = app.add_subcommand("analyze-conflict",
                                "run one episode and analyze its conflict");
  struct {
    std::string formula;
    std::uint64_t seed = 0;
  } aco;
  ac->add_option("--formula", aco.formula)->required();
  auto* ac_seed = ac->add_option("--seed", aco.seed);

  // ---- oracle ----
  auto* orc = app.add_subcommand(
      "oracle", "compare closure membership with the brute-force oracle");
  struct {
    std::string formula, clause;
  } oo;
  orc->add_option("--formula", oo.formula)->required();
  orc->add_option("--clause", oo.clause,
                  "single target clause, DIMACS literals ending in 0");

  // let the global --json/--jobs flags appear after the subcommand
  auto enable_fallthrough = [](auto&& self, CLI::App* a) -> void {
    for (CLI::App* sub : a->get_subcommands(
             [](const CLI::App*) { return true; })) {
      sub->fallthrough();
      self(self, sub);
    }
  };
  enable_fallthrough(enable_fallthrough, &app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  Report rep;
  int exit_code = 0;
  try {
    if (*gen) {
      mrt::FamilyParams p{g.l, g.m, g.n, variant_of(g.family)};
      if (g.weakened) {
        if (p.variant != mrt::FamilyVariant::base)
          throw mrt::error("--weakened applies to the base family only");
        mrt::CnfFormula f = mrt::gen_weakening_formula(p);
        write_file(g.out, mrt::write_dimacs(f));
        rep.add("vars", static_cast<long long>(f.num_vars()));
        rep.add("clauses", static_cast<long long>(f.size()));
        rep.add("slack_var",
                static_cast<long long>(mrt::weakening_var(p)));
        if (!g.layout.empty())
          throw mrt::error("the weakened instance has no layout sidecar");
        if (!g.proof.empty())
          write_file(g.proof,
                     mrt::write_trace(mrt::build_weakening_derivation(p)));
      } else {
        auto [f, lay] = mrt::gen_family(p);
        write_file(g.out, mrt::write_dimacs(f));
        rep.add("vars", static_cast<long long>(f.num_vars()));
        rep.add("clauses", static_cast<long long>(f.size()));
        if (!g.layout.empty()) write_file(g.layout, mrt::write_layout(lay));
        if (!g.proof.empty())
          write_file(g.proof, mrt::write_trace(mrt::build_res_ub(p)));
      }
      rep.add("out", g.out);
    } else if (*genp) {
      mrt::FamilyParams p{gp.l, gp.m, gp.n, variant_of(gp.family)};
      mrt::Proof pr;
      if (gp.kind == "res-ub") {
        pr = mrt::build_res_ub(p);
      } else if (gp.kind == "rml-r1") {
        pr = mrt::build_rml_r1(p);
      } else if (gp.kind == "rml-r3") {
        pr = mrt::build_rml_r3(p);
      } else if (gp.kind == "variant") {
        pr = mrt::build_variant_refutation(p, system_of(gp.system));
      } else if (gp.kind == "weakening") {
        pr = mrt::build_weakening_derivation(p);
      } else {
        throw CLI::ValidationError("--kind", "unknown kind '" + gp.kind + "'");
      }
      write_file(gp.out, mrt::write_trace(pr));
      if (!gp.formula.empty()) {
        mrt::CnfFormula f = gp.kind == "weakening"
                                ? mrt::gen_weakening_formula(p)
                                : mrt::gen_family(p).first;
        write_file(gp.formula, mrt::write_dimacs(f));
      }
      mrt::ProofStats s = mrt::stats(pr);
      rep.add("length", static_cast<long long>(s.length));
      rep.add("lemmas", static_cast<long long>(s.lemma_count));
      rep.add("out", gp.out);
    } else if (*check) {
      mrt::Proof pr = mrt::parse_trace_file(ck.proof);
      mrt::CnfFormula f = mrt::parse_dimacs_file(ck.formula);
      bool result;
      if (ck.semantic) {
        mrt::ValidityReport v = mrt::check_semantic(pr, f);
        rep.add("valid", v.ok);
        if (!v.ok) rep.add("message", v.message);
        result = v.ok;
      } else {
        mrt::CheckOptions copts;
        copts.allow_weakening = ck.allow_weakening;
        mrt::ValidityReport v = mrt::check_valid(pr, f, copts);
        rep.add("valid", v.ok);
        if (!v.ok) rep.add("message", v.message);
        result = v.ok;
        if (!ck.system.empty() && v.ok) {
          mrt::ClassificationReport c = mrt::classify(pr, f);
          bool flag = flag_of(c, ck.system);
          rep.add(ck.system, flag);
          auto it = c.diagnostics.find(ck.system == "tree-like" ? "tree_like"
                                       : ck.system == "input" ? "input_shaped"
                                       : ck.system == "rma"   ? "rma_structured"
                                       : ck.system == "rma-general"
                                           ? "rma_general"
                                           : ck.system);
          if (!flag && it != c.diagnostics.end())
            rep.add("diagnostic", it->second);
          result = flag;
        }
      }
      bool expect;
      if (ck.expect == "true")
        expect = true;
      else if (ck.expect == "false")
        expect = false;
      else
        throw CLI::ValidationError("--expect", "use true or false");
      rep.add("expected", expect);
      exit_code = result == expect ? 0 : 1;
    } else if (*cls) {
      mrt::Proof pr = mrt::parse_trace_file(cl.proof);
      mrt::CnfFormula f = mrt::parse_dimacs_file(cl.formula);
      mrt::ClassificationReport c = mrt::classify(pr, f);
      rep.add("valid_resolution", c.valid_resolution);
      rep.add("tree_like", c.tree_like);
      rep.add("input_shaped", c.input_shaped);
      rep.add("rml", c.rml);
      rep.add("rma_structured", c.rma_structured);
      rep.add("rma_general", c.rma_general);
      rep.add("lrml", c.lrml);
      rep.add("lrma", c.lrma);
      rep.add("rel", c.rel);
      rep.add("lreml", c.lreml);
      for (const auto& [flag, diag] : c.diagnostics)
        rep.add("diagnostic." + flag, diag);
    } else if (*sim) {
      mrt::Proof pi = mrt::parse_trace_file(sm.proof);
      mrt::CnfFormula f = mrt::parse_dimacs_file(sm.formula);
      mrt::Proof out;
      if (sm.target == "rml")
        out = mrt::simulate_rml(pi, f);
      else if (sm.target == "lreml")
        out = mrt::simulate_lreml(pi, f);
      else
        throw CLI::ValidationError("--target", "use rml or lreml");
      write_file(sm.out, mrt::write_trace(out));
      std::size_t L = mrt::stats(pi).length;
      std::size_t outlen = mrt::stats(out).length;
      std::size_t budget =
          (2 * static_cast<std::size_t>(f.num_vars()) + 1) * L +
          static_cast<std::size_t>(f.num_vars());
      rep.add("input_length", static_cast<long long>(L));
      rep.add("output_length", static_cast<long long>(outlen));
      rep.add("budget", static_cast<long long>(budget));
      rep.add("within_budget", outlen <= budget);
      rep.add("out", sm.out);
      if (outlen > budget) exit_code = 1;
    } else if (*tr) {
      mrt::Proof pr = mrt::parse_trace_file(tf.proof);
      mrt::Proof out;
      if (tf.kind == "tree-to-input")
        out = mrt::tree_to_input(pr);
      else if (tf.kind == "tree-to-merge")
        out = mrt::tree_to_merge(pr);
      else if (tf.kind == "decompose")
        out = mrt::decompose_input_structured(pr);
      else if (tf.kind == "regularize")
        out = mrt::regularize_input(pr);
      else
        throw CLI::ValidationError("--kind", "unknown kind '" + tf.kind + "'");
      write_file(tf.out, mrt::write_trace(out));
      rep.add("input_length", static_cast<long long>(mrt::stats(pr).length));
      rep.add("output_length",
              static_cast<long long>(mrt::stats(out).length));
      rep.add("out", tf.out);
    } else if (*rs_apply) {
      mrt::Restriction rho = mrt::parse_restriction_map_file(ra.map);
      if (!ra.formula.empty()) {
        if (ra.out.empty())
          throw mrt::error("--formula needs --out for the restricted DIMACS");
        mrt::CnfFormula f = mrt::parse_dimacs_file(ra.formula);
        mrt::CnfFormula rf = mrt::apply_restriction(f, rho);
        write_file(ra.out, mrt::write_dimacs(rf));
        rep.add("clauses", static_cast<long long>(f.size()));
        rep.add("restricted_clauses", static_cast<long long>(rf.size()));
      }
      if (!ra.proof.empty()) {
        if (ra.proof_out.empty())
          throw mrt::error("--proof needs --proof-out");
        mrt::Proof pr = mrt::parse_trace_file(ra.proof);
        mrt::Proof out =
            mrt::syntactic_equivalent(mrt::restrict_proof(pr, rho));
        write_file(ra.proof_out, mrt::write_trace(out));
        rep.add("proof_length",
                static_cast<long long>(mrt::stats(pr).length));
        rep.add("restricted_proof_length",
                static_cast<long long>(mrt::stats(out).length));
      }
      if (ra.formula.empty() && ra.proof.empty())
        throw mrt::error("restrict apply: give --formula and/or --proof");
    } else if (*rs_sample) {
      if (!*rsmp_seed) rsmp.seed = default_seed();
      mrt::FamilyLayout lay = mrt::parse_layout_file(rsmp.layout);
      mrt::RestrictionSample s = mrt::sample_restriction(lay, rsmp.seed);
      std::string jtext;
      for (int j : s.J) jtext += j < 0 ? "*" : j == 0 ? "0" : "1";
      rep.add("seed", static_cast<long long>(s.seed));
      rep.add("J", jtext);
      rep.add("surviving_blocks",
              static_cast<long long>(s.surviving_blocks()));
      if (!rsmp.out.empty())
        write_file(rsmp.out,
                   mrt::write_restriction_map(s.rho, lay.num_vars()));
    } else if (*rs_find) {
      if (!*rf_seed) rf.seed = default_seed();
      mrt::FamilyLayout lay = mrt::parse_layout_file(rf.layout);
      mrt::Proof pr = mrt::parse_trace_file(rf.proof);
      auto found =
          mrt::find_respecting_restriction(pr, lay, rf.max_tries, rf.seed);
      rep.add("found", found.has_value());
      if (found) {
        std::string jtext;
        for (int j : found->J) jtext += j < 0 ? "*" : j == 0 ? "0" : "1";
        rep.add("seed", static_cast<long long>(found->seed));
        rep.add("J", jtext);
        rep.add("surviving_blocks",
                static_cast<long long>(found->surviving_blocks()));
        if (!rf.out.empty())
          write_file(rf.out,
                     mrt::write_restriction_map(found->rho, lay.num_vars()));
      } else {
        exit_code = 1;
      }
    } else if (*st) {
      mrt::Proof pr = mrt::parse_trace_file(st_proof);
      mrt::ProofStats s = mrt::stats(pr);
      rep.add("length", static_cast<long long>(s.length));
      rep.add("merges", static_cast<long long>(s.num_merges));
      rep.add("width", static_cast<long long>(s.width));
      rep.add("lemmas", static_cast<long long>(s.lemma_count));
      rep.add("max_out_degree", static_cast<long long>(s.max_out_degree));
    } else if (*mur) {
      mrt::Proof pr = mrt::parse_trace_file(mu_opts.proof);
      mrt::FamilyLayout lay = mrt::parse_layout_file(mu_opts.layout);
      std::map<int, long long> hist;
      int widest = 0;
      for (const mrt::ProofStep& s : pr.steps()) {
        if (s.kind == mrt::StepKind::Satisfied) continue;
        int m = mrt::mu(s.clause, lay);
        ++hist[m];
        widest = std::max(widest, m);
      }
      rep.add("steps", static_cast<long long>(mrt::stats(pr).length));
      rep.add("max_mu", static_cast<long long>(widest));
      for (const auto& [m, count] : hist)
        rep.add("mu_" + std::to_string(m), count);
    } else if (*ac) {
      if (!*ac_seed) aco.seed = default_seed();
      mrt::CnfFormula f = mrt::parse_dimacs_file(aco.formula);
      mrt::Episode ep = mrt::random_episode(f, aco.seed);
      rep.add("trail_length", static_cast<long long>(ep.trail.size()));
      if (ep.conflict < 0) {
        rep.add("conflict", std::string("none"));
        exit_code = 1;
      } else {
        rep.add("conflict", static_cast<long long>(ep.conflict));
        mrt::Proof d = mrt::conflict_derivation(ep.trail, f, ep.conflict);
        rep.add("derivation_length",
                static_cast<long long>(mrt::stats(d).length));
        if (ep.trail.last_decision() < 0) {
          rep.add("uip", std::string("none (level-zero conflict)"));
        } else {
          mrt::UipResult uip = mrt::first_uip(d, ep.trail);
          const mrt::ProofStep& us = d.step(uip.step_id);
          bool merge =
              us.kind == mrt::StepKind::Resolution &&
              mrt::is_merge(d.step(us.premises[0]).clause,
                            d.step(us.premises[1]).clause, us.pivot);
          rep.add("uip", clause_text(uip.clause));
          rep.add("uip_merge", merge);
          rep.add("uip_asserting", mrt::is_asserting(uip.clause, ep.trail));
          rep.add("uip_empowering",
                  bool(mrt::is_empowering(f, uip.clause)));
        }
      }
    } else if (*orc) {
      mrt::CnfFormula f = mrt::parse_dimacs_file(oo.formula);
      if (f.num_vars() > 4)
        throw mrt::error("oracle: instances over more than 4 variables "
                         "are too large for the brute-force search");
      std::set<mrt::Clause> closure = input_closure(f);
      long long total = 0, agree = 0;
      if (!oo.clause.empty()) {
        mrt::Clause c = parse_clause_text(oo.clause);
        bool fast = mrt::cl_i_member(f, c);
        bool slow = closure_member(closure, c);
        total = 1;
        agree = fast == slow ? 1 : 0;
        rep.add("clause", clause_text(c));
        rep.add("member", fast);
        rep.add("oracle", slow);
      } else {
        for (const mrt::Clause& c : all_clauses_over(f.num_vars())) {
          bool fast = mrt::cl_i_member(f, c);
          bool slow = closure_member(closure, c);
          ++total;
          if (fast == slow) ++agree;
        }
      }
      rep.add("checked", total);
      rep.add("agreements", agree);
      rep.add("agreement", total == agree);
      if (total != agree) exit_code = 1;
    }
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  rep.print(opt.as_json);
  return exit_code;
}
