#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "calogero/config.hpp"
#include "calogero/coords.hpp"
#include "calogero/errors.hpp"
#include "calogero/model.hpp"
#include "calogero/oracle.hpp"
#include "calogero/quantum_numbers.hpp"
#include "calogero/wavefunction.hpp"

namespace py = pybind11;
using namespace calogero;

namespace {

// Slot keys follow the model-file convention "m.l" (level first).
SlotId parse_slot_key(const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) throw ConfigError("slot key must look like 'm.l', got '" + key + "'");
  try {
    return SlotId{std::stoi(key.substr(dot + 1)), std::stoi(key.substr(0, dot))};
  } catch (const std::exception&) {
    throw ConfigError("slot key must look like 'm.l', got '" + key + "'");
  }
}

ValidatedModel make_model(int k, double omega, double mu, double lambda, const std::map<std::string, double>& slots) {
  auto p = ModelParams::uniform(k, omega, mu, lambda);
  const Hierarchy tree(k);
  for (const auto& [key, value] : slots) {
    const SlotId s = parse_slot_key(key);
    if (s.level < 1 || s.level > k || s.ell < 1 || s.ell > pow3(k - s.level))
      throw ConfigError("slot " + key + " is not in the k=" + std::to_string(k) + " tree");
    p.lambda[s] = value;
  }
  return ValidatedModel::validate(p);
}

CartesianConfig as_config(const std::vector<double>& x) { return CartesianConfig{x}; }

py::list levels_of(const SpectrumTable& t) {
  py::list out;
  for (const auto& l : t.levels) {
    py::list reps;
    for (const auto& s : l.representatives) reps.append(format_state(s));
    out.append(py::dict(py::arg("energy") = l.energy, py::arg("degeneracy") = l.degeneracy,
                        py::arg("representatives") = reps));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact spectrum and eigenfunctions of the hierarchical 3^k-body Calogero model";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<SingularConfiguration>(m, "SingularConfiguration", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());

  py::class_<ValidatedModel>(m, "Model")
      .def(py::init(&make_model), py::arg("k"), py::arg("omega") = 1.0, py::arg("mu") = 0.0, py::arg("lam") = 0.0,
           py::arg("slots") = std::map<std::string, double>{},
           "Uniform coupling `lam`, with per-slot overrides keyed 'm.l'. Raises ValidationError.")
      .def_static(
          "load", [](const std::string& path) { return ValidatedModel::validate(load_model_file(path).params); },
          py::arg("path"))
      .def_property_readonly("k", &ValidatedModel::k)
      .def_property_readonly("omega", &ValidatedModel::omega)
      .def_property_readonly("mu", &ValidatedModel::mu)
      .def_property_readonly("hash", &ValidatedModel::hash)
      .def_property_readonly("mu_lower_bound", [](const ValidatedModel& v) { return mu_lower_bound(v); })
      .def("coupling", [](const ValidatedModel& v, int level, int ell) { return v.lambda({ell, level}); },
           py::arg("m"), py::arg("l"))
      .def("__repr__", [](const ValidatedModel& v) {
        return "<calogero.Model k=" + std::to_string(v.k()) + " hash=" + v.hash() + ">";
      });

  m.def("normalize_state", [](const std::string& s, int k) { return format_state(parse_state(s, k)); },
        py::arg("state"), py::arg("k"), "Canonical text form of a state description.");

  m.def(
      "energy", [](const ValidatedModel& v, const std::string& s) { return energy(v, parse_state(s, v.k())); },
      py::arg("model"), py::arg("state") = "");

  m.def(
      "spectrum", [](const ValidatedModel& v, double emax) { return levels_of(enumerate_spectrum(v, emax)); },
      py::arg("model"), py::arg("emax"), "Levels up to emax as dicts (energy, degeneracy, representatives).");

  m.def(
      "equivalence",
      [](const ValidatedModel& v, double emax) {
        const auto r = spectra_equivalence_mu0(v, emax);
        return py::dict(py::arg("equal") = r.equal, py::arg("levels_compared") = r.levels_compared,
                        py::arg("hyperspherical") = levels_of(r.hyperspherical),
                        py::arg("cartesian") = levels_of(r.cartesian),
                        py::arg("first_discrepancy") = r.first_discrepancy);
      },
      py::arg("model"), py::arg("emax"));

  m.def(
      "psi",
      [](const ValidatedModel& v, const std::string& s, const std::vector<double>& x, bool k2_form) {
        const auto st = parse_state(s, v.k());
        return k2_form ? eval_psi_k2(v, st, as_config(x)) : eval_psi_general(v, st, as_config(x));
      },
      py::arg("model"), py::arg("state"), py::arg("x"), py::arg("k2_form") = false);

  m.def(
      "potential", [](const ValidatedModel& v, const std::vector<double>& x) { return potential(v, as_config(x)); },
      py::arg("model"), py::arg("x"));

  m.def(
      "residual",
      [](const ValidatedModel& v, const std::string& s, int points, double h, std::uint64_t seed, double min_separation) {
        ResidualOptions opt;
        opt.n_points = points;
        opt.h = h;
        opt.seed = seed;
        opt.cuts.min_separation = min_separation;
        const auto r = hamiltonian_residual(v, parse_state(s, v.k()), opt);
        return py::dict(py::arg("points") = r.points, py::arg("h") = r.h, py::arg("max_relative") = r.max_relative,
                        py::arg("mean_relative") = r.mean_relative, py::arg("energy") = r.energy,
                        py::arg("skipped_near_nodes") = r.skipped_near_nodes);
      },
      py::arg("model"), py::arg("state") = "", py::arg("points") = 20, py::arg("h") = 1e-3, py::arg("seed") = 1,
      py::arg("min_separation") = 0.3);

  m.def(
      "sample_configs",
      [](int k, double omega, int count, std::uint64_t seed) {
        ConfigSampler sampler(k, omega, SamplingCuts{}, seed);
        std::vector<std::vector<double>> out;
        for (int i = 0; i < count; ++i) out.push_back(sampler.next().x);
        return out;
      },
      py::arg("k"), py::arg("omega"), py::arg("count"), py::arg("seed") = 1);

  m.def(
      "hyperspherical",
      [](const std::vector<double>& x) {
        const auto h = radii_to_hyperspherical(to_polar(to_jacobi(as_config(x))));
        return py::dict(py::arg("r") = h.r, py::arg("alpha") = h.alpha, py::arg("beta") = h.beta);
      },
      py::arg("x"));

  m.def(
      "jacobi_round_trip", [](const std::vector<double>& x) { return from_jacobi(to_jacobi(as_config(x))).x; },
      py::arg("x"));

  m.def(
      "orthogonality",
      [](const ValidatedModel& v, int max_index) {
        const auto r = orthogonality_sweep(v, max_index);
        return py::dict(py::arg("pairs") = r.pairs, py::arg("max_overlap") = r.max_overlap);
      },
      py::arg("model"), py::arg("max_index") = 1);
}
