#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "forestbd/acyclic.hpp"
#include "forestbd/backdoor.hpp"
#include "forestbd/cli.hpp"
#include "forestbd/generators.hpp"
#include "forestbd/graph.hpp"
#include "forestbd/oracle.hpp"
#include "forestbd/strong.hpp"
#include "forestbd/weak.hpp"

namespace py = pybind11;
using namespace forestbd;

namespace {

// Python ints are unbounded, so big counts travel through their decimal form.
py::int_ to_pyint(const BigInt& value) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(value.str().c_str(), nullptr, 10));
}

py::dict verdict_dict(const BackdoorVerdict& v) {
  py::dict out;
  if (const auto* found = std::get_if<Found>(&v)) {
    out["found"] = true;
    out["backdoor"] = found->set;
    out["witness"] = found->witness ? py::cast(*found->witness) : py::none();
  } else {
    out["found"] = false;
    out["k"] = std::get<No>(v).k;
  }
  return out;
}

std::vector<Clause> clauses_from_lists(const std::vector<std::vector<int>>& lists) {
  std::vector<Clause> out;
  out.reserve(lists.size());
  for (const auto& lits : lists) out.push_back(Clause::from_dimacs(lits));
  return out;
}

std::vector<std::vector<int>> clauses_to_lists(const Formula& f) {
  std::vector<std::vector<int>> out;
  for (const Clause& c : f.clauses()) {
    std::vector<int> lits;
    for (const Literal& l : c.literals()) lits.push_back(l.dimacs());
    out.push_back(std::move(lits));
  }
  return out;
}

BackdoorVerdict detect(const Formula& f, const std::string& kind, int k, std::optional<int> r,
                       int threads) {
  py::gil_scoped_release release;
  DetectOptions options{threads, {}};
  switch (parse_backdoor_kind(kind)) {
    case BackdoorKind::Weak:
      return detect_weak(f, k, r.value_or(std::max<int>(1, static_cast<int>(max_clause_width(f)))),
                         options);
    case BackdoorKind::Strong:
      return detect_strong_approx(f, k, options);
    case BackdoorKind::Deletion:
      return detect_deletion(f, k, options);
  }
  throw ContractError("unknown backdoor kind");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Backdoors into acyclic CNF formulas";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<ResourceGuardError>(m, "ResourceGuardError", base.ptr());

  py::class_<Formula>(m, "Formula")
      .def(py::init([](const std::vector<std::vector<int>>& clauses, std::optional<int> n) {
             int vars = n.value_or(0);
             for (const auto& c : clauses) {
               for (int lit : c) vars = std::max(vars, std::abs(lit));
             }
             return Formula::over_range(vars, clauses_from_lists(clauses));
           }),
           py::arg("clauses"), py::arg("num_vars") = py::none(),
           "Formula over variables 1..num_vars from DIMACS-style literal lists.")
      .def_static("parse", [](const std::string& text) { return parse_dimacs(text); },
                  py::arg("text"))
      .def("to_dimacs", &emit_dimacs)
      .def_property_readonly("clauses", &clauses_to_lists)
      .def_property_readonly("universe", &Formula::universe)
      .def_property_readonly("num_vars", &Formula::num_vars)
      .def_property_readonly("num_clauses", &Formula::num_clauses)
      .def_property_readonly("length", &Formula::length)
      .def_property_readonly("max_width", &max_clause_width)
      .def("is_acyclic", [](const Formula& f) { return is_acyclic(build_incidence(f).graph()); })
      .def("apply", &apply_assignment, py::arg("assignment"))
      .def("delete_vars", &delete_vars, py::arg("vars"))
      .def("satisfies", &satisfies, py::arg("assignment"))
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__repr__", [](const Formula& f) {
        std::ostringstream out;
        out << "<Formula n=" << f.num_vars() << " m=" << f.num_clauses() << ">";
        return out.str();
      });

  m.def("detect",
        [](const Formula& f, const std::string& kind, int k, std::optional<int> r, int threads) {
          return verdict_dict(detect(f, kind, k, r, threads));
        },
        py::arg("formula"), py::arg("kind"), py::arg("k"), py::arg("r") = py::none(),
        py::arg("threads") = 1,
        "Run a backdoor detector; returns a dict with 'found' and either "
        "'backdoor'/'witness' or 'k'.");
  m.def("detect_weak",
        [](const Formula& f, int k, std::optional<int> r, int threads) {
          return verdict_dict(detect(f, "weak", k, r, threads));
        },
        py::arg("formula"), py::arg("k"), py::arg("r") = py::none(), py::arg("threads") = 1);
  m.def("detect_strong",
        [](const Formula& f, int k, int threads) {
          return verdict_dict(detect(f, "strong", k, std::nullopt, threads));
        },
        py::arg("formula"), py::arg("k"), py::arg("threads") = 1);
  m.def("detect_deletion",
        [](const Formula& f, int k, int threads) {
          return verdict_dict(detect(f, "deletion", k, std::nullopt, threads));
        },
        py::arg("formula"), py::arg("k"), py::arg("threads") = 1);

  m.def("verify",
        [](const Formula& f, const std::string& kind, const VarSet& set) {
          return verify_backdoor(f, parse_backdoor_kind(kind), make_varset(set));
        },
        py::arg("formula"), py::arg("kind"), py::arg("backdoor"));
  m.def("weak_witness",
        [](const Formula& f, const VarSet& set) { return is_weak_bds(f, make_varset(set)); },
        py::arg("formula"), py::arg("backdoor"));

  m.def("count_acyclic",
        [](const Formula& f, std::optional<VarSet> universe) {
          return to_pyint(count_acyclic_models(f, universe ? make_varset(*universe) : f.universe()).count);
        },
        py::arg("formula"), py::arg("universe") = py::none());
  m.def("count",
        [](const Formula& f, const VarSet& backdoor, std::optional<VarSet> universe) {
          ModelCount c = [&] {
            py::gil_scoped_release release;
            return count_via_backdoor(f, make_varset(backdoor),
                                      universe ? make_varset(*universe) : f.universe());
          }();
          return to_pyint(c.count);
        },
        py::arg("formula"), py::arg("backdoor"), py::arg("universe") = py::none(),
        "Model count via a strong backdoor.");
  m.def("solve_acyclic", &solve_acyclic_sat, py::arg("formula"));

  m.def("gen_grid", &gen_grid, py::arg("r"));
  m.def("gen_hitting_set", &gen_hitting_set, py::arg("family"));
  m.def("gen_random", &gen_random_rcnf, py::arg("n"), py::arg("m"), py::arg("r"),
        py::arg("seed"));

  py::module_ oracle = m.def_submodule("oracle", "Brute-force reference implementations");
  oracle.def("count", [](const Formula& f) { return to_pyint(oracle::brute_count(f)); },
             py::arg("formula"));
  oracle.def("is_backdoor",
             [](const Formula& f, const std::string& kind, const VarSet& set) {
               return oracle::is_backdoor(f, parse_backdoor_kind(kind), make_varset(set));
             },
             py::arg("formula"), py::arg("kind"), py::arg("backdoor"));
  oracle.def("min_backdoor",
             [](const Formula& f, const std::string& kind, int k_max) {
               oracle::Report rep = [&] {
                 py::gil_scoped_release release;
                 return oracle::brute_min_backdoor(f, parse_backdoor_kind(kind), k_max);
               }();
               py::dict out;
               out["optimum"] = rep.optimum ? py::cast(*rep.optimum) : py::none();
               out["witness_sets"] = rep.witness_sets;
               return out;
             },
             py::arg("formula"), py::arg("kind"), py::arg("k_max"));
  oracle.def("min_hitting_set", &oracle::min_hitting_set, py::arg("family"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = run_cli(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line interface in-process; returns (code, stdout, stderr).");
}
