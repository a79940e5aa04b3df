#include "mrt/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>

namespace mrt {

namespace {

void require_layout_var(int v, const FamilyLayout& layout,
                        const char* where) {
  if (v < 1 || v > layout.num_vars())
    throw error(std::string(where) + ": variable " + std::to_string(v) +
                " outside the layout");
}

}  // namespace

int mu(const Clause& c, const FamilyLayout& layout) {
  std::set<int> blocks;
  for (Lit l : c.lits()) {
    int v = var_of(l);
    require_layout_var(v, layout, "mu");
    VarRole r = layout.var_role(v);
    if (r.kind != VarRole::x) blocks.insert(r.i);
  }
  return static_cast<int>(blocks.size());
}

Clause trim_r(const Clause& c, const FamilyLayout& layout) {
  int min_pos = 0;
  int max_neg = 0;
  for (Lit l : c.lits()) {
    int v = var_of(l);
    require_layout_var(v, layout, "trim_r");
    if (!layout.is_x_var(v)) continue;
    int i = layout.var_role(v).i;
    if (positive(l)) {
      if (min_pos == 0 || i < min_pos) min_pos = i;
    } else {
      if (i > max_neg) max_neg = i;
    }
  }
  std::vector<Lit> keep;
  for (Lit l : c.lits()) {
    int v = var_of(l);
    if (!layout.is_x_var(v)) {
      keep.push_back(l);
      continue;
    }
    int i = layout.var_role(v).i;
    if (positive(l) ? i == min_pos : i == max_neg) keep.push_back(l);
  }
  return Clause(std::move(keep));
}

Restriction sigma_i(int i, const FamilyLayout& layout) {
  const FamilyParams& p = layout.params();
  if (i < 0 || i >= p.m)
    throw error("sigma_i: index " + std::to_string(i) +
                " outside [0, " + std::to_string(p.m) + ")");
  Restriction r;
  for (int ip = 1; ip <= p.m * p.l - 1; ++ip) {
    if (ip <= i * p.l)
      r.set(layout.x_var(ip), true);
    else if (ip > (i + 1) * p.l)
      r.set(layout.x_var(ip), false);
  }
  return r;
}

std::vector<int> sigma_star_vars(int i, const FamilyLayout& layout) {
  const FamilyParams& p = layout.params();
  if (i < 0 || i >= p.m)
    throw error("sigma_star_vars: index out of range");
  std::vector<int> vars;
  for (int ip = i * p.l + 1; ip <= (i + 1) * p.l && ip <= p.m * p.l - 1;
       ++ip)
    vars.push_back(layout.x_var(ip));
  return vars;
}

bool is_autarky(const Restriction& rho, const std::vector<Clause>& clauses) {
  for (const Clause& c : clauses) {
    bool touched = false;
    bool satisfied = false;
    for (Lit l : c.lits()) {
      auto v = rho.eval(l);
      if (!v) continue;
      touched = true;
      if (*v) satisfied = true;
    }
    if (touched && !satisfied) return false;
  }
  return true;
}

bool is_autarky(const Restriction& rho, const CnfFormula& f) {
  return is_autarky(rho, f.clauses());
}

bool is_k_respecting(const Restriction& rho, const FamilyLayout& layout,
                     int k) {
  const FamilyParams& p = layout.params();
  if (k < 0 || k > p.l) return false;

  // Translate the assignment onto the base variables: auxiliaries follow
  // the layout's substitution, and v2 auxiliaries may only carry their
  // fixed values.
  FamilyParams bp{p.l, p.m, p.n, FamilyVariant::base};
  auto [bf, blay] = gen_family(bp);
  auto sub = layout.aux_substitution();
  Restriction fixed = layout.aux_assignment();
  Restriction base_rho;
  for (const auto& [v, val] : rho.map()) {
    if (v < 1 || v > layout.num_vars()) return false;
    VarRole vr = layout.var_role(v);
    int tv = v;
    bool tval = val;
    if (vr.kind != VarRole::x && vr.kind != VarRole::w) {
      auto it = sub.find(v);
      if (it != sub.end()) {
        tv = var_of(it->second);
        tval = positive(it->second) ? val : !val;
      } else {
        auto fv = fixed.value(v);
        if (!fv || *fv != val) return false;
        continue;
      }
    }
    auto prev = base_rho.value(tv);
    if (prev && *prev != tval) return false;
    base_rho.set(tv, tval);
  }

  std::vector<Clause> w_axioms;
  for (std::size_t ci = 0; ci < bf.size(); ++ci)
    if (blay.role(ci).kind == ClauseRole::w_axiom)
      w_axioms.push_back(bf.clause(ci));
  if (!is_autarky(base_rho, w_axioms)) return false;

  std::vector<int> surviving;
  for (int j = 1; j <= p.l; ++j) {
    bool any = false;
    for (int kk = 1; kk <= p.n; ++kk)
      if (base_rho.value(blay.w_var(j, kk))) any = true;
    if (!any) surviving.push_back(j);
  }
  if (static_cast<int>(surviving.size()) != k) return false;

  std::vector<int> free_x;
  for (int i = 1; i <= p.m * p.l - 1; ++i)
    if (!base_rho.value(blay.x_var(i))) free_x.push_back(i);
  if (static_cast<int>(free_x.size()) != k * p.m - 1) return false;

  auto [tf, tlay] = gen_family({k, p.m, p.n, FamilyVariant::base});
  std::unordered_map<int, int> rename;  // target var -> source var
  for (int i = 1; i <= k * p.m - 1; ++i)
    rename[tlay.x_var(i)] = blay.x_var(free_x[i - 1]);
  for (int j = 1; j <= k; ++j)
    for (int kk = 1; kk <= p.n; ++kk)
      rename[tlay.w_var(j, kk)] = blay.w_var(surviving[j - 1], kk);

  std::vector<Clause> got = apply_restriction(bf, base_rho).clauses();
  std::vector<Clause> want;
  want.reserve(tf.size());
  for (const Clause& c : tf.clauses()) {
    std::vector<Lit> lits;
    for (Lit l : c.lits()) {
      int sv = rename.at(var_of(l));
      lits.push_back(positive(l) ? sv : -sv);
    }
    want.push_back(Clause(std::move(lits)));
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  return got == want;
}

int RestrictionSample::surviving_blocks() const {
  int n = 0;
  for (int j : J)
    if (j < 0) ++n;
  return n;
}

RestrictionSample sample_restriction(const FamilyLayout& layout,
                                     std::uint64_t seed) {
  const FamilyParams& p = layout.params();
  if (p.variant != FamilyVariant::base)
    throw error("sample_restriction: base-family layout required");
  std::mt19937_64 rng(seed);
  RestrictionSample s;
  s.seed = seed;
  s.J.resize(p.l);
  for (int j = 0; j < p.l; ++j) {
    std::uint64_t u = rng() & 3;  // 0, 1 with prob 1/4 each, free otherwise
    s.J[j] = u == 0 ? 0 : u == 1 ? 1 : -1;
  }
  for (int j = 1; j <= p.l; ++j) {
    if (s.J[j - 1] < 0) continue;
    for (int kk = 1; kk <= p.n; ++kk)
      s.rho.set(layout.w_var(j, kk), s.J[j - 1] == 1);
  }
  // x_i copies x_{i-1} whenever its block is killed, with x_0 = 1; the
  // copy chain never introduces 0, so every assigned X variable gets 1.
  for (int i = 1; i <= p.m * p.l - 1; ++i)
    if (s.J[layout.i_hat(i) - 1] >= 0) s.rho.set(layout.x_var(i), true);
  return s;
}

std::optional<RestrictionSample> find_respecting_restriction(
    const Proof& p, const FamilyLayout& layout, int max_tries,
    std::uint64_t seed) {
  int l = layout.params().l;
  for (int t = 0; t < max_tries; ++t) {
    RestrictionSample s = sample_restriction(layout, seed + t);
    if (4 * s.surviving_blocks() < l) continue;
    bool ok = true;
    for (const ProofStep& st : p.steps()) {
      if (st.kind == StepKind::Satisfied) continue;
      auto rc = apply_restriction(st.clause, s.rho);
      if (!rc) continue;
      if (8 * mu(*rc, layout) > l) {
        ok = false;
        break;
      }
    }
    if (ok) return s;
  }
  return std::nullopt;
}

Restriction parse_restriction_map(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Restriction rho;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    int v = 0;
    try {
      v = std::stoi(first);
    } catch (const std::exception&) {
      throw error("parse_restriction_map: bad variable '" + first + "'");
    }
    if (v < 1) throw error("parse_restriction_map: bad variable " + first);
    std::string val;
    if (!(ls >> val) || (val != "0" && val != "1" && val != "*"))
      throw error("parse_restriction_map: bad value for variable " + first);
    if (val != "*") rho.set(v, val == "1");
  }
  return rho;
}

Restriction parse_restriction_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("parse_restriction_map_file: cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_restriction_map(os.str());
}

std::string write_restriction_map(const Restriction& rho, int num_vars) {
  std::ostringstream os;
  int top = num_vars;
  for (const auto& [v, val] : rho.map()) top = std::max(top, v);
  for (int v = 1; v <= top; ++v) {
    auto val = rho.value(v);
    os << v << ' ' << (val ? (*val ? "1" : "0") : "*") << '\n';
  }
  return os.str();
}

}  // namespace mrt
