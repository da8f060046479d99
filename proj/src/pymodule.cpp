#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swlat/flow.hpp"
#include "swlat/functional.hpp"
#include "swlat/hessian.hpp"
#include "swlat/hodge.hpp"
#include "swlat/runconfig.hpp"
#include "swlat/snapshot.hpp"
#include "swlat/spectral.hpp"

namespace py = pybind11;
using namespace swlat;

namespace {

Cochain cochain_from_array(const Lattice& lat, int degree, py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
  Cochain c(lat, degree);
  if (arr.size() != c.size()) throw std::invalid_argument("cochain array has the wrong length");
  std::copy(arr.data(), arr.data() + arr.size(), c.values.begin());
  if (!c.finite()) throw std::invalid_argument("cochain array has non-finite entries");
  return c;
}

py::array_t<double> array_from_cochain(const Cochain& c) {
  // single-integer array_t constructors produce zero strides in this
  // pybind11 release; go through an explicit shape container
  const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(c.values.size())};
  py::array_t<double> out(shape);
  std::copy(c.values.begin(), c.values.end(), out.mutable_data());
  return out;
}

SpinorField spinor_from_array(const Lattice& lat, py::array_t<cdouble, py::array::c_style | py::array::forcecast> arr) {
  SpinorField psi(lat, Chirality::plus);
  if (static_cast<std::int64_t>(arr.size()) != 2 * lat.sites())
    throw std::invalid_argument("spinor array must have 2 complex entries per site");
  std::copy(arr.data(), arr.data() + arr.size(), psi.values.begin());
  if (!psi.finite()) throw std::invalid_argument("spinor array has non-finite entries");
  return psi;
}

py::array_t<cdouble> array_from_spinor(const SpinorField& psi) {
  const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(psi.values.size())};
  py::array_t<cdouble> out(shape);
  std::copy(psi.values.begin(), psi.values.end(), out.mutable_data());
  return out;
}

Configuration make_config(const Lattice& lat, py::array_t<double> a, py::array_t<cdouble> phi,
                          std::array<int, 6> flux, py::object kg) {
  BundleData bundle = [&]() {
    if (py::isinstance<py::float_>(kg) || py::isinstance<py::int_>(kg))
      return BundleData::constant_kg(lat, flux, kg.cast<double>());
    return BundleData(lat, flux, cochain_from_array(lat, 0, kg.cast<py::array_t<double>>()));
  }();
  return Configuration(cochain_from_array(lat, 1, std::move(a)), spinor_from_array(lat, std::move(phi)),
                       std::move(bundle));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice toolkit for the Seiberg-Witten functional on the flat 4-torus";

  py::class_<Lattice>(m, "Lattice")
      .def(py::init<int, double>(), py::arg("n"), py::arg("h"))
      .def_property_readonly("n", &Lattice::n)
      .def_property_readonly("h", &Lattice::h)
      .def_property_readonly("sites", &Lattice::sites)
      .def_property_readonly("edges", &Lattice::edges)
      .def_property_readonly("plaquettes", &Lattice::plaquettes)
      .def_property_readonly("volume", &Lattice::volume);

  py::class_<Configuration>(m, "Configuration")
      .def_property_readonly("lattice", &Configuration::lattice)
      .def_property_readonly("a", [](const Configuration& c) { return array_from_cochain(c.a); })
      .def_property_readonly("phi", [](const Configuration& c) { return array_from_spinor(c.phi); })
      .def_property_readonly("flux", [](const Configuration& c) { return c.bundle.flux(); })
      .def_property_readonly("kg", [](const Configuration& c) { return array_from_cochain(c.bundle.kg()); })
      .def_property_readonly("alpha_squared", [](const Configuration& c) { return c.bundle.alpha_squared(); });

  m.def("make_configuration", &make_config, py::arg("lattice"), py::arg("a"), py::arg("phi"), py::arg("flux"),
        py::arg("kg"));
  m.def("zero_configuration", [](const Lattice& lat, std::array<int, 6> flux, double kg) {
    return Configuration(Cochain(lat, 1), SpinorField(lat, Chirality::plus),
                         BundleData::constant_kg(lat, flux, kg));
  });

  py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
      .def_readonly("curvature_term", &EnergyBreakdown::curvature_term)
      .def_readonly("dirichlet_term", &EnergyBreakdown::dirichlet_term)
      .def_readonly("quartic_term", &EnergyBreakdown::quartic_term)
      .def_readonly("curvature_coupling_term", &EnergyBreakdown::curvature_coupling_term)
      .def_readonly("topological_term", &EnergyBreakdown::topological_term)
      .def_readonly("total", &EnergyBreakdown::total);

  m.def("sw_eval", &sw_eval);
  m.def("alpha_pairing", &alpha_pairing);
  m.def("sw_gradient", [](const Configuration& c) {
    const GradientPair g = sw_gradient(c);
    return py::make_tuple(array_from_cochain(g.grad_a), array_from_spinor(g.grad_phi));
  });
  m.def("monopole_residual_norm", &monopole_residual_norm);

  m.def("gauge_apply", [](const Configuration& c, py::array_t<double> chi, std::array<int, 4> winding) {
    return gauge_apply(GaugeTransform(cochain_from_array(c.lattice(), 0, std::move(chi)), winding), c);
  }, py::arg("config"), py::arg("chi"), py::arg("winding") = std::array<int, 4>{0, 0, 0, 0});

  m.def("hessian_apply", [](const Configuration& c, py::array_t<double> theta, py::array_t<cdouble> v) {
    const HessianOperator h(c);
    const TangentVector out = h.apply(TangentVector(cochain_from_array(c.lattice(), 1, std::move(theta)),
                                                    spinor_from_array(c.lattice(), std::move(v))));
    return py::make_tuple(array_from_cochain(out.theta), array_from_spinor(out.v));
  });
  m.def("hessian_quadratic_form", [](const Configuration& c, py::array_t<double> theta, py::array_t<cdouble> v) {
    const HessianOperator h(c);
    return h.quadratic_form(TangentVector(cochain_from_array(c.lattice(), 1, std::move(theta)),
                                          spinor_from_array(c.lattice(), std::move(v))));
  });

  py::class_<SpectralReport>(m, "SpectralReport")
      .def_readonly("eigenvalues", &SpectralReport::eigenvalues)
      .def_readonly("residual_norms", &SpectralReport::residual_norms)
      .def_readonly("dim", &SpectralReport::dim)
      .def_readonly("morse_index", &SpectralReport::morse_index)
      .def_readonly("kernel_dim", &SpectralReport::kernel_dim)
      .def_readonly("zero_threshold", &SpectralReport::zero_threshold)
      .def_readonly("solver", &SpectralReport::solver)
      .def_readonly("iterations", &SpectralReport::iterations);

  m.def("morse_index", &morse_index, py::arg("config"), py::arg("tau") = -1.0);
  m.def("spectrum_bounded_below_check", &spectrum_bounded_below_check, py::arg("config"),
        py::arg("probe_count") = 4);

  m.def("hodge_split", [](const Configuration& c) {
    const HodgeSplit split = hodge_split(c.a);
    return py::make_tuple(array_from_cochain(split.exact), array_from_cochain(split.coexact),
                          array_from_cochain(split.harmonic));
  });
  m.def("betti_1", &betti_1);
  m.def("coulomb_gauge_fix", [](const Configuration& c) { return coulomb_gauge_fix(c).first; });
  m.def("jacobian_coordinates", [](const Configuration& c) { return jacobian_coordinates(c).coords; });

  py::class_<FlowParams>(m, "FlowParams")
      .def(py::init<>())
      .def_readwrite("step", &FlowParams::step)
      .def_readwrite("max_iters", &FlowParams::max_iters)
      .def_readwrite("grad_tol", &FlowParams::grad_tol)
      .def_readwrite("regauge_every", &FlowParams::regauge_every)
      .def_readwrite("seed", &FlowParams::seed);

  py::enum_<FlowStatus>(m, "FlowStatus")
      .value("converged", FlowStatus::converged)
      .value("max_iters", FlowStatus::max_iters)
      .value("diverged", FlowStatus::diverged);

  py::class_<FlowTrace>(m, "FlowTrace")
      .def_readonly("status", &FlowTrace::status)
      .def_property_readonly("terminal", [](const FlowTrace& t) { return *t.terminal; })
      .def_property_readonly("energies", [](const FlowTrace& t) {
        std::vector<double> es;
        for (const auto& r : t.records) es.push_back(r.energy);
        return es;
      })
      .def_property_readonly("iterations", [](const FlowTrace& t) {
        return t.records.empty() ? 0 : t.records.back().iter;
      });

  m.def("descend", &descend, py::arg("config"), py::arg("params") = FlowParams{});

  py::enum_<CriticalKind>(m, "CriticalKind")
      .value("reducible_morse_bott", CriticalKind::reducible_morse_bott)
      .value("reducible_indexed", CriticalKind::reducible_indexed)
      .value("irreducible", CriticalKind::irreducible)
      .value("not_critical", CriticalKind::not_critical);

  py::class_<Classification>(m, "Classification")
      .def_readonly("kind", &Classification::kind)
      .def_readonly("morse_index", &Classification::morse_index)
      .def_readonly("spinor_kernel_dim", &Classification::spinor_kernel_dim)
      .def_readonly("slice_kernel_dim", &Classification::slice_kernel_dim)
      .def_readonly("grad_norm", &Classification::grad_norm)
      .def_readonly("phi_norm", &Classification::phi_norm);

  m.def("classify_critical_point", &classify_critical_point, py::arg("config"), py::arg("tau") = -1.0,
        py::arg("grad_tol") = 1e-6, py::arg("phi_tol") = 1e-8);

  m.def("save_snapshot", &save_snapshot);
  m.def("load_snapshot", &load_snapshot);
}
