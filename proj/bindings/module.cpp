// Python bindings for the core operations. Structured results cross the
// boundary as plain dicts/lists converted from the JSON reports, so the
// Python surface matches the CLI output schemas exactly.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "cspk/classify.hpp"
#include "cspk/io.hpp"
#include "cspk/oracle.hpp"

namespace py = pybind11;
using nlohmann::ordered_json;

namespace {

py::object json_to_py(const ordered_json& j) {
  switch (j.type()) {
    case nlohmann::detail::value_t::null: return py::none();
    case nlohmann::detail::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::detail::value_t::number_integer: return py::int_(j.get<long long>());
    case nlohmann::detail::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::detail::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::detail::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::detail::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case nlohmann::detail::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

cspk::BooleanRelation make_relation(const std::string& name, int arity,
                                    const std::vector<std::string>& members) {
  std::vector<cspk::Tuple> tuples;
  tuples.reserve(members.size());
  for (const auto& s : members) {
    if (static_cast<int>(s.size()) != arity)
      throw std::invalid_argument("tuple '" + s + "' does not match arity");
    tuples.push_back(cspk::tuple_from_string(s));
  }
  return cspk::BooleanRelation::from_tuples(name, arity, tuples);
}

std::vector<std::string> relation_members(const cspk::BooleanRelation& r) {
  std::vector<std::string> out;
  for (auto i : r.member_indices()) out.push_back(cspk::tuple_to_string(cspk::index_to_tuple(i, r.arity())));
  return out;
}

cspk::CspInstance make_instance(int num_vars,
                                const std::vector<std::pair<std::string, std::vector<int>>>& cs) {
  cspk::CspInstance inst;
  inst.num_vars = num_vars;
  for (const auto& [name, vars] : cs) inst.constraints.push_back({name, vars});
  return inst;
}

}  // namespace

PYBIND11_MODULE(cspk, m) {
  m.doc() = "exact classification and sparsification of Boolean CSPs";
  m.attr("__version__") = "0.1.0";

  py::class_<cspk::BooleanRelation>(m, "Relation")
      .def(py::init(&make_relation), py::arg("name"), py::arg("arity"), py::arg("members"))
      .def_property_readonly("name", &cspk::BooleanRelation::name)
      .def_property_readonly("arity", &cspk::BooleanRelation::arity)
      .def("members", &relation_members)
      .def("size", &cspk::BooleanRelation::size)
      .def("contains", [](const cspk::BooleanRelation& r, const std::string& t) {
        return r.contains(cspk::tuple_from_string(t));
      })
      .def("__repr__", [](const cspk::BooleanRelation& r) {
        return "Relation(" + r.name() + ", arity=" + std::to_string(r.arity()) +
               ", members=" + std::to_string(r.size()) + ")";
      });

  py::class_<cspk::ConstraintLanguage>(m, "Language")
      .def(py::init<std::vector<cspk::BooleanRelation>>(), py::arg("relations"))
      .def_property_readonly("relations", &cspk::ConstraintLanguage::relations)
      .def("max_arity", &cspk::ConstraintLanguage::max_arity);

  py::class_<cspk::CspInstance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("num_vars"), py::arg("constraints"))
      .def_readonly("num_vars", &cspk::CspInstance::num_vars)
      .def_property_readonly("constraints",
                             [](const cspk::CspInstance& inst) {
                               std::vector<std::pair<std::string, std::vector<int>>> out;
                               for (const auto& c : inst.constraints)
                                 out.emplace_back(c.relation, c.vars);
                               return out;
                             })
      .def("__len__", [](const cspk::CspInstance& i) { return i.constraints.size(); })
      .def("__repr__", [](const cspk::CspInstance& i) {
        return "Instance(num_vars=" + std::to_string(i.num_vars) +
               ", constraints=" + std::to_string(i.constraints.size()) + ")";
      });

  m.def("kor", &cspk::kor, py::arg("k"), "the k-ary OR relation");
  m.def("full_relation", &cspk::full_relation, py::arg("k"));
  m.def("empty_relation", &cspk::empty_relation, py::arg("k"));

  m.def("parse_language_text", &cspk::parse_language_text, py::arg("text"));
  m.def("parse_language", &cspk::parse_language, py::arg("path"));
  m.def("parse_instance_text", &cspk::parse_instance_text, py::arg("text"), py::arg("language"));
  m.def("parse_instance", &cspk::parse_instance, py::arg("path"), py::arg("language"));
  m.def("write_instance_text", &cspk::write_instance_text, py::arg("instance"));
  m.def("write_language_text", &cspk::write_language_text, py::arg("language"));

  m.def("weight_spectrum", [](const cspk::BooleanRelation& r) {
    auto ws = cspk::weight_spectrum(r);
    py::dict d;
    d["arity"] = ws.arity;
    d["symmetric"] = ws.is_symmetric;
    d["satisfying_weights"] = std::vector<int>(ws.satisfying_weights.begin(),
                                               ws.satisfying_weights.end());
    return d;
  });

  m.def("decide_balanced", [](const cspk::BooleanRelation& r) {
    return json_to_py(cspk::balance_to_json(cspk::decide_balanced(r), r));
  });

  m.def("classify", [](const cspk::ConstraintLanguage& language) {
    return json_to_py(cspk::classification_to_json(cspk::classify_language(language)));
  });

  m.def("classify_text", [](const cspk::ConstraintLanguage& language) {
    return cspk::classification_to_text(cspk::classify_language(language));
  });

  m.def("sparsify", [](const cspk::ConstraintLanguage& language, const cspk::CspInstance& inst) {
    auto [kernel, report] = cspk::sparsify_instance(language, inst);
    return py::make_tuple(kernel, json_to_py(cspk::kernel_report_to_json(report, inst)));
  });

  m.def("brute_force_satisfiable",
        [](const cspk::ConstraintLanguage& language, const cspk::CspInstance& inst) {
          auto res = cspk::brute_force_satisfiable(language, inst);
          py::dict d;
          d["satisfiable"] = res.satisfiable;
          d["witness"] = res.witness ? py::object(py::str(cspk::tuple_to_string(*res.witness)))
                                     : py::object(py::none());
          return d;
        });

  m.def("check_equivalence",
        [](const cspk::ConstraintLanguage& language, const cspk::CspInstance& a,
           const cspk::CspInstance& b) {
          auto v = cspk::check_equivalence(language, a, b);
          py::dict d;
          d["equivalent"] = v.equivalent;
          d["assignments_checked"] = v.assignments_checked;
          d["counterexample"] = v.counterexample
                                    ? py::object(py::str(cspk::tuple_to_string(*v.counterexample)))
                                    : py::object(py::none());
          return d;
        });

  m.def("search_cone_definition",
        [](const cspk::BooleanRelation& target, const cspk::BooleanRelation& source) -> py::object {
          auto res = cspk::search_cone_definition(target, source);
          if (res.status == cspk::ConeSearchStatus::Capped) return py::str("CAPPED");
          if (!res.found()) return py::none();
          return json_to_py(cspk::cone_definition_to_json(*res.definition));
        });

  m.def("max_or_arity", [](const cspk::ConstraintLanguage& language) {
    auto report = cspk::max_or_arity(language);
    py::dict d;
    d["language_max"] = report.language_max;
    d["exact"] = report.exact;
    py::list per;
    for (const auto& e : report.per_relation) {
      py::dict ed;
      ed["relation"] = e.relation;
      ed["value"] = e.value;
      ed["exact"] = e.exact;
      per.append(ed);
    }
    d["per_relation"] = per;
    return d;
  });

  py::register_exception<cspk::ParseError>(m, "ParseError");
  py::register_exception<cspk::BudgetExceeded>(m, "BudgetExceeded");
}
