#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "mrt/analysis.hpp"
#include "mrt/classify.hpp"
#include "mrt/cnf.hpp"
#include "mrt/families.hpp"
#include "mrt/proof.hpp"
#include "mrt/transform.hpp"
#include "mrt/unit.hpp"

namespace py = pybind11;

namespace {

mrt::CnfFormula make_formula(const std::vector<std::vector<int>>& clauses,
                             int num_vars) {
  std::vector<mrt::Clause> cs;
  cs.reserve(clauses.size());
  for (const auto& lits : clauses) cs.push_back(mrt::Clause(lits));
  return mrt::CnfFormula(std::move(cs), num_vars);
}

std::vector<std::vector<int>> clause_lists(const mrt::CnfFormula& f) {
  std::vector<std::vector<int>> out;
  out.reserve(f.size());
  for (const mrt::Clause& c : f.clauses()) out.push_back(c.lits());
  return out;
}

mrt::FamilyParams make_params(int l, int m, int n,
                              const std::string& variant) {
  mrt::FamilyParams p;
  p.l = l;
  p.m = m;
  p.n = n;
  if (variant == "base")
    p.variant = mrt::FamilyVariant::base;
  else if (variant == "v1")
    p.variant = mrt::FamilyVariant::v1;
  else if (variant == "v2")
    p.variant = mrt::FamilyVariant::v2;
  else if (variant == "v3")
    p.variant = mrt::FamilyVariant::v3;
  else
    throw mrt::error("unknown variant '" + variant + "'");
  return p;
}

mrt::TargetSystem make_system(const std::string& system) {
  if (system == "rma") return mrt::TargetSystem::rma;
  if (system == "rml") return mrt::TargetSystem::rml;
  if (system == "lrma") return mrt::TargetSystem::lrma;
  if (system == "lrml") return mrt::TargetSystem::lrml;
  throw mrt::error("unknown system '" + system + "'");
}

std::map<std::string, bool> classify_dict(const mrt::Proof& p,
                                          const mrt::CnfFormula& f) {
  mrt::ClassificationReport r = mrt::classify(p, f);
  return {{"valid_resolution", r.valid_resolution},
          {"tree_like", r.tree_like},
          {"input_shaped", r.input_shaped},
          {"rml", r.rml},
          {"rma_structured", r.rma_structured},
          {"rma_general", r.rma_general},
          {"lrml", r.lrml},
          {"lrma", r.lrma},
          {"rel", r.rel},
          {"lreml", r.lreml}};
}

}  // namespace

PYBIND11_MODULE(pymrt, mod) {
  mod.doc() = "merge-resolution toolkit bindings";

  py::register_exception<mrt::error>(mod, "MrtError");

  py::class_<mrt::Proof>(mod, "Proof")
      .def("__len__", [](const mrt::Proof& p) { return p.size(); })
      .def_property_readonly(
          "length", [](const mrt::Proof& p) { return mrt::stats(p).length; })
      .def_property_readonly(
          "num_merges",
          [](const mrt::Proof& p) { return mrt::stats(p).num_merges; })
      .def_property_readonly(
          "lemma_count",
          [](const mrt::Proof& p) { return mrt::stats(p).lemma_count; })
      .def_property_readonly("is_refutation",
                             [](const mrt::Proof& p) {
                               return mrt::is_refutation(p);
                             })
      .def("root_clause",
           [](const mrt::Proof& p) {
             return p.step(p.root_id()).clause.lits();
           })
      .def("to_text", [](const mrt::Proof& p) { return mrt::write_trace(p); });

  py::class_<mrt::FamilyLayout>(mod, "FamilyLayout")
      .def_property_readonly("num_vars", &mrt::FamilyLayout::num_vars)
      .def_property_readonly("num_clauses", &mrt::FamilyLayout::num_clauses)
      .def("x_var", &mrt::FamilyLayout::x_var)
      .def("w_var", &mrt::FamilyLayout::w_var)
      .def("i_hat", &mrt::FamilyLayout::i_hat)
      .def("to_text",
           [](const mrt::FamilyLayout& lay) { return mrt::write_layout(lay); });

  mod.def(
      "gen_family",
      [](int l, int m, int n, const std::string& variant) {
        auto [f, lay] = mrt::gen_family(make_params(l, m, n, variant));
        return py::make_tuple(clause_lists(f), f.num_vars(), lay);
      },
      py::arg("l"), py::arg("m"), py::arg("n"), py::arg("variant") = "base");

  mod.def("parse_dimacs", [](const std::string& text) {
    mrt::CnfFormula f = mrt::parse_dimacs(text);
    return py::make_tuple(clause_lists(f), f.num_vars());
  });
  mod.def("write_dimacs",
          [](const std::vector<std::vector<int>>& clauses, int num_vars) {
            return mrt::write_dimacs(make_formula(clauses, num_vars));
          });
  mod.def("parse_trace",
          [](const std::string& text) { return mrt::parse_trace(text); });

  mod.def(
      "build_res_ub",
      [](int l, int m, int n) {
        return mrt::build_res_ub(make_params(l, m, n, "base"));
      },
      py::arg("l"), py::arg("m"), py::arg("n"));
  mod.def(
      "build_rml_r1",
      [](int l, int m, int n) {
        return mrt::build_rml_r1(make_params(l, m, n, "base"));
      },
      py::arg("l"), py::arg("m"), py::arg("n"));
  mod.def(
      "build_rml_r3",
      [](int l, int m, int n) {
        return mrt::build_rml_r3(make_params(l, m, n, "base"));
      },
      py::arg("l"), py::arg("m"), py::arg("n"));
  mod.def(
      "build_variant_refutation",
      [](int l, int m, int n, const std::string& variant,
         const std::string& system) {
        return mrt::build_variant_refutation(make_params(l, m, n, variant),
                                             make_system(system));
      },
      py::arg("l"), py::arg("m"), py::arg("n"), py::arg("variant"),
      py::arg("system"));

  mod.def(
      "check_valid",
      [](const mrt::Proof& p, const std::vector<std::vector<int>>& clauses,
         int num_vars, bool allow_weakening) {
        mrt::CheckOptions opts;
        opts.allow_weakening = allow_weakening;
        mrt::ValidityReport r =
            mrt::check_valid(p, make_formula(clauses, num_vars), opts);
        return py::make_tuple(r.ok, r.message);
      },
      py::arg("proof"), py::arg("clauses"), py::arg("num_vars"),
      py::arg("allow_weakening") = false);

  mod.def("classify",
          [](const mrt::Proof& p,
             const std::vector<std::vector<int>>& clauses, int num_vars) {
            return classify_dict(p, make_formula(clauses, num_vars));
          });

  mod.def(
      "simulate",
      [](const mrt::Proof& p, const std::vector<std::vector<int>>& clauses,
         int num_vars, const std::string& target) {
        mrt::CnfFormula f = make_formula(clauses, num_vars);
        if (target == "rml") return mrt::simulate_rml(p, f);
        if (target == "lreml") return mrt::simulate_lreml(p, f);
        throw mrt::error("unknown target '" + target + "'");
      },
      py::arg("proof"), py::arg("clauses"), py::arg("num_vars"),
      py::arg("target") = "rml");

  mod.def("tree_to_input", &mrt::tree_to_input);
  mod.def("tree_to_merge", &mrt::tree_to_merge);
  mod.def("decompose_input_structured", &mrt::decompose_input_structured);

  mod.def("cl_i_member",
          [](const std::vector<std::vector<int>>& clauses, int num_vars,
             const std::vector<int>& clause) {
            return mrt::cl_i_member(make_formula(clauses, num_vars),
                                    mrt::Clause(clause));
          });
  mod.def("is_empowering",
          [](const std::vector<std::vector<int>>& clauses, int num_vars,
             const std::vector<int>& clause) {
            return bool(mrt::is_empowering(make_formula(clauses, num_vars),
                                           mrt::Clause(clause)));
          });

  mod.def("mu", [](const std::vector<int>& clause,
                   const mrt::FamilyLayout& lay) {
    return mrt::mu(mrt::Clause(clause), lay);
  });
  mod.def("trim_r", [](const std::vector<int>& clause,
                       const mrt::FamilyLayout& lay) {
    return mrt::trim_r(mrt::Clause(clause), lay).lits();
  });
  mod.def("sigma_i", [](int i, const mrt::FamilyLayout& lay) {
    mrt::Restriction rho = mrt::sigma_i(i, lay);
    std::map<int, bool> out;
    for (const auto& [v, val] : rho.map()) out[v] = val;
    return out;
  });
  mod.def(
      "sample_restriction",
      [](const mrt::FamilyLayout& lay, std::uint64_t seed) {
        mrt::RestrictionSample s = mrt::sample_restriction(lay, seed);
        std::map<int, bool> rho;
        for (const auto& [v, val] : s.rho.map()) rho[v] = val;
        return py::make_tuple(s.J, rho);
      },
      py::arg("layout"), py::arg("seed"));

  mod.def("res_ub_length", [](int l, int m, int n) {
    return mrt::res_ub_length(make_params(l, m, n, "base"));
  });
  mod.def("r1_length", [](int l, int m, int n) {
    return mrt::r1_length(make_params(l, m, n, "base"));
  });
  mod.def("r3_length", [](int l, int m, int n) {
    return mrt::r3_length(make_params(l, m, n, "base"));
  });
}
