#include <numbers>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nonkp/bourgain.hpp"
#include "nonkp/diagnostics.hpp"
#include "nonkp/dirichlet_neumann.hpp"
#include "nonkp/integrate.hpp"

namespace py = pybind11;
using namespace nonkp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SpectralField from_array(const Grid2D& g, const Array& a, const char* name) {
  if (a.ndim() != 2 || a.shape(0) != g.ny() || a.shape(1) != g.nx())
    throw std::invalid_argument(std::string(name) + " must have shape (Ny, Nx) = (" + std::to_string(g.ny()) + ", " +
                                std::to_string(g.nx()) + ")");
  return transform(g, std::span<const double>(a.data(), g.size()));
}

Array to_array(const SpectralField& f) {
  const Grid2D& g = f.grid();
  const PhysicalField p = inverse_transform(f);
  Array out({g.ny(), g.nx()});
  std::copy(p.values.begin(), p.values.end(), out.mutable_data());
  return out;
}

py::dict simulate(const Grid2D& g, const Array& u, const Array& v, double t_end, double dt, const std::string& scheme,
                  int snapshot_stride, int diagnostics_stride) {
  RunConfig cfg;
  cfg.scheme = parse_scheme(scheme);
  cfg.t_end = t_end;
  cfg.dt = dt;
  cfg.snapshot_stride = snapshot_stride;
  cfg.diagnostics_stride = diagnostics_stride;
  const StateUV s0{from_array(g, u, "u"), from_array(g, v, "v"), 0.0};
  Trajectory tr;
  {
    py::gil_scoped_release release;
    tr = run(cfg, s0);
  }
  const auto n = static_cast<py::ssize_t>(tr.snapshots.size());
  Array us({n, static_cast<py::ssize_t>(g.ny()), static_cast<py::ssize_t>(g.nx())});
  Array vs({n, static_cast<py::ssize_t>(g.ny()), static_cast<py::ssize_t>(g.nx())});
  std::vector<double> ts;
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto pu = inverse_transform(tr.snapshots[i].u);
    const auto pv = inverse_transform(tr.snapshots[i].v);
    std::copy(pu.values.begin(), pu.values.end(), us.mutable_data() + i * g.size());
    std::copy(pv.values.begin(), pv.values.end(), vs.mutable_data() + i * g.size());
    ts.push_back(tr.snapshots[i].t);
  }
  std::vector<double> dt_, H;
  for (const auto& d : tr.diagnostics) {
    dt_.push_back(d.t);
    H.push_back(d.H);
  }
  py::dict out;
  out["t"] = ts;
  out["u"] = us;
  out["v"] = vs;
  out["dt"] = tr.dt;
  out["diagnostics_t"] = dt_;
  out["H"] = H;
  out["hamiltonian_drift"] = hamiltonian_drift(tr).value;
  return out;
}

double dn_trace_error(double h0, int n, double length, int k, int order, double amplitude) {
  const dn::Grid1D g = dn::Grid1D::make(n, length);
  std::vector<double> eta(n);
  for (int p = 0; p < n; ++p) eta[p] = amplitude * h0 * std::cos(2 * std::numbers::pi * k * g.x(p) / length);
  const dn::TraceOracle o = dn::exact_trace_oracle(g, eta, k, h0);
  return dn::l2_norm(dn::dn_apply(dn::make_expansion(g, h0, order, eta), o.phi) - o.normal_velocity);
}

}  // namespace

PYBIND11_MODULE(_nonkp, m) {
  m.doc() = "Pseudospectral toolkit for the Non-KP system";

  py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);

  py::class_<Grid2D>(m, "Grid2D")
      .def(py::init(&make_grid), py::arg("nx"), py::arg("ny"), py::arg("lx"), py::arg("ly"))
      .def_property_readonly("nx", &Grid2D::nx)
      .def_property_readonly("ny", &Grid2D::ny)
      .def_property_readonly("lx", &Grid2D::lx)
      .def_property_readonly("ly", &Grid2D::ly)
      .def("xi_values", &Grid2D::xi_values)
      .def("mu_values", &Grid2D::mu_values)
      .def("__repr__", [](const Grid2D& g) {
        return "Grid2D(nx=" + std::to_string(g.nx()) + ", ny=" + std::to_string(g.ny()) + ")";
      });

  m.def(
      "omega", [](int branch, double xi, double mu) { return omega(branch_from_int(branch), xi, mu); },
      py::arg("branch"), py::arg("xi"), py::arg("mu"), "Linear dispersion relation, branch 1 or 2.");
  m.def(
      "multiplier", [](int branch, double xi, double mu) { return multiplier_M(branch_from_int(branch), xi, mu); },
      py::arg("branch"), py::arg("xi"), py::arg("mu"));
  m.def(
      "random_field",
      [](const Grid2D& g, double amplitude, int max_mode, std::uint64_t seed) {
        return to_array(random_smooth_field(g, amplitude, max_mode, seed));
      },
      py::arg("grid"), py::arg("amplitude"), py::arg("max_mode"), py::arg("seed"),
      "Smooth band-limited real field with max|u| = amplitude, shape (Ny, Nx).");
  m.def(
      "hamiltonian",
      [](const Grid2D& g, const Array& u, const Array& v) {
        return hamiltonian(StateUV{from_array(g, u, "u"), from_array(g, v, "v"), 0.0});
      },
      py::arg("grid"), py::arg("u"), py::arg("v"));
  m.def("simulate", &simulate, py::arg("grid"), py::arg("u"), py::arg("v"), py::arg("t_end"), py::arg("dt") = 0.0,
        py::arg("scheme") = "diagonal-ifrk4", py::arg("snapshot_stride") = 1, py::arg("diagnostics_stride") = 1);
  m.def("psi_T_norm", &psi_T_norm, py::arg("T"), py::arg("b"), py::arg("nt") = 1 << 15);
  m.def("dn_trace_error", &dn_trace_error, py::arg("h0"), py::arg("n"), py::arg("length"), py::arg("k"),
        py::arg("order"), py::arg("amplitude"),
        "L2 error of the order-J Dirichlet-Neumann expansion against an exact harmonic trace.");
  m.def("fit_loglog_slope", [](const std::vector<double>& x, const std::vector<double>& y) {
    return fit_loglog_slope(x, y);
  });
}
