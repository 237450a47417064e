#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpp/verify.hpp"

namespace py = pybind11;

namespace {

using namespace fpp;

const RootDatum& datum_from(const std::string& type) { return root_datum_by_name(type); }

// Coordinates arrive as a csv string or as a sequence of ints / strings /
// Fractions; everything is converted through its exact fraction text.
QVec coords_from(py::handle obj) {
  if (py::isinstance<py::str>(obj)) return parse_rational_vector(obj.cast<std::string>());
  QVec out;
  for (py::handle item : py::iter(obj))
    out.push_back(parse_rational(py::str(item).cast<std::string>()));
  return out;
}

Weight weight_from(const std::string& type, py::handle coords) {
  return make_weight(datum_from(type), coords_from(coords));
}

std::vector<std::string> weight_out(const Weight& w) {
  std::vector<std::string> out;
  out.reserve(w.coords.size());
  for (const Rat& c : w.coords) out.push_back(rat_str(c));
  return out;
}

py::object json_out(const verify::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict levi_out(const LeviDatum& levi) {
  py::dict out;
  out["nodes"] = levi.nodes;
  py::list components;
  for (const ComponentInfo& c : levi.components) {
    py::dict comp;
    comp["family"] = std::string(1, c.family);
    comp["rank"] = c.local_rank;
    comp["nodes"] = c.nodes;
    components.append(comp);
  }
  out["components"] = components;
  return out;
}

py::object report_out(const verify::VerificationReport& report) {
  return json_out(report.to_json(false));
}

}  // namespace

PYBIND11_MODULE(_fpp, m) {
  m.doc() = "Exact root-system, Weyl-group and Levi computations with parametric "
            "fundamental-parallelepiped verification";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);

  m.def("datum", [](const std::string& type) {
    const RootDatum& d = datum_from(type);
    py::dict out;
    out["family"] = std::string(1, d.family);
    out["rank"] = d.rank;
    out["cartan"] = d.cartan;
    out["positive_roots"] = d.positive_roots.size();
    out["weyl_order"] = weyl_order(d);
    return out;
  }, py::arg("type"), "Cartan data for a simple type, e.g. 'F4'");

  m.def("pairing", [](const std::string& type, py::handle weight, int i) {
    return rat_str(pairing(weight_from(type, weight), i));
  }, py::arg("type"), py::arg("weight"), py::arg("i"));

  m.def("to_root_coords", [](const std::string& type, py::handle weight) {
    const RootVector v = to_root_coords(weight_from(type, weight));
    std::vector<std::string> out;
    for (const Rat& c : v.coeffs) out.push_back(rat_str(c));
    return out;
  }, py::arg("type"), py::arg("weight"));

  m.def("height", [](const std::string& type, py::handle weight) {
    return rat_str(height(weight_from(type, weight)));
  }, py::arg("type"), py::arg("weight"));

  m.def("is_dominant", [](const std::string& type, py::handle weight) {
    return is_dominant(weight_from(type, weight));
  }, py::arg("type"), py::arg("weight"));

  m.def("usual_coords", [](const std::string& type, py::handle weight) {
    QVec usual = usual_coords(weight_from(type, weight));
    std::vector<std::string> out;
    for (const Rat& c : usual) out.push_back(rat_str(c));
    return out;
  }, py::arg("type"), py::arg("weight"));

  m.def("from_usual", [](const std::string& type, py::handle usual) {
    return weight_out(from_usual(datum_from(type), coords_from(usual)));
  }, py::arg("type"), py::arg("usual"));

  m.def("apply_simple", [](const std::string& type, int i, py::handle weight) {
    return weight_out(apply_simple(i, weight_from(type, weight)));
  }, py::arg("type"), py::arg("i"), py::arg("weight"));

  m.def("dominantize", [](const std::string& type, py::handle weight) {
    const auto dom = dominantize(weight_from(type, weight));
    return py::make_tuple(weight_out(dom.dominant), dom.word.letters);
  }, py::arg("type"), py::arg("weight"),
     "Returns (dominant weight, reduced word of the first negative index algorithm)");

  m.def("reduce_word", [](const std::string& type, const std::vector<int>& letters) {
    return reduce_word(make_word(datum_from(type), letters)).letters;
  }, py::arg("type"), py::arg("letters"));

  m.def("weyl_length", [](const std::string& type, const std::vector<int>& letters) {
    return weyl_length(make_word(datum_from(type), letters));
  }, py::arg("type"), py::arg("letters"));

  m.def("weyl_order", [](const std::string& type) { return weyl_order(datum_from(type)); },
        py::arg("type"));

  m.def("longest_element", [](const std::string& type, const std::vector<int>& nodes) {
    return longest_element(datum_from(type), nodes).letters;
  }, py::arg("type"), py::arg("nodes"));

  m.def("module_support", [](const std::string& type, py::handle weight,
                             const std::vector<int>& letters) {
    const RootDatum& d = datum_from(type);
    const auto support =
        module_support(make_weight(d, coords_from(weight)), make_word(d, letters));
    return std::vector<int>(support.begin(), support.end());
  }, py::arg("type"), py::arg("weight"), py::arg("word"));

  m.def("is_hermitian_pair", [](const std::string& type, py::handle lambda_l,
                                py::handle lambda_r) {
    return is_hermitian_pair(make_pair(weight_from(type, lambda_l), weight_from(type, lambda_r)));
  }, py::arg("type"), py::arg("lambda_l"), py::arg("lambda_r"));

  m.def("modules_equivalent", [](const std::string& type, py::handle pl, py::handle pr,
                                 py::handle ql, py::handle qr) {
    return modules_equivalent(make_pair(weight_from(type, pl), weight_from(type, pr)),
                              make_pair(weight_from(type, ql), weight_from(type, qr)));
  }, py::arg("type"), py::arg("p_lambda_l"), py::arg("p_lambda_r"), py::arg("q_lambda_l"),
     py::arg("q_lambda_r"));

  m.def("levi", [](const std::string& type, py::handle eta) {
    return levi_out(levi_from_eta(weight_from(type, eta)));
  }, py::arg("type"), py::arg("eta"));

  m.def("mcx", [](const std::string& type, py::handle eta) {
    return levi_out(compute_mcx(weight_from(type, eta)));
  }, py::arg("type"), py::arg("eta"));

  m.def("is_bottom_layer", [](const std::string& type, py::handle eta, py::handle gamma) {
    return is_bottom_layer(weight_from(type, eta), weight_from(type, gamma));
  }, py::arg("type"), py::arg("eta"), py::arg("gamma"));

  m.def("indefinite_gammas", [](const std::string& type, py::handle tau) {
    const RootDatum& d = datum_from(type);
    std::vector<std::vector<std::string>> out;
    for (const Weight& g : indefinite_gammas(d.family, d.rank, make_weight(d, coords_from(tau))))
      out.push_back(weight_out(g));
    return out;
  }, py::arg("type"), py::arg("tau"));

  m.def("builtin_cases", [] { return verify::builtin_case_names(); });

  m.def("verify_case", [](const std::string& name, int threads) {
    const verify::VerifyOptions vo{threads};
    py::list reports;
    if (name == "g2-eta10" || name == "g2-eta20" || name == "f4-eta0010") {
      reports.append(report_out(verify::verify_outside_fpp_threshold(name, vo)));
      reports.append(report_out(verify::second_part_excludes_all(name, vo)));
    } else if (name == "f4-eta0001") {
      reports.append(report_out(verify::enumerate_outside_fpp_witnesses(vo)));
      reports.append(report_out(verify::second_part_excludes_all(name, vo)));
    } else {
      reports.append(report_out(verify::verify_reduction_case(name)));
    }
    return reports;
  }, py::arg("case"), py::arg("threads") = 0,
     "Runs one named exceptional case; returns a list of report dicts");

  m.def("verify_classical", [](const std::string& type, int samples, std::uint64_t seed,
                               int threads) {
    const RootDatum& d = datum_from(type);
    return report_out(verify::verify_classical(d.family, d.rank, samples, seed,
                                               verify::VerifyOptions{threads}));
  }, py::arg("type"), py::arg("samples") = 1000, py::arg("seed") = 20240001,
     py::arg("threads") = 0);

  m.def("verify_sweep", [](const std::string& type, int cap, int threads) {
    const RootDatum& d = datum_from(type);
    return report_out(verify::verify_bottom_layer_sweep(d.family, d.rank, cap,
                                                        verify::VerifyOptions{threads}));
  }, py::arg("type"), py::arg("cap") = 3, py::arg("threads") = 0);
}
