#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "bm/classical.hpp"
#include "bm/moments.hpp"
#include "bm/oracle.hpp"
#include "bm/potentials.hpp"
#include "bm/quantize.hpp"
#include "bm/safe_terms.hpp"
#include "bm/wavefield.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

PYBIND11_MODULE(_bm, m) {
    m.doc() = "semiclassical eigenvalues and wave-corrected bound-state moments "
              "computed directly from a one-dimensional potential";

    py::class_<bm::Potential>(m, "Potential")
        .def_static("parse", &bm::Potential::parse, "spec"_a,
                    "build from a spec string such as 'poschl-teller()' or 'poly(0,0,0,0,1)'")
        .def_static("morse", &bm::Potential::morse)
        .def_static("poschl_teller", &bm::Potential::poschl_teller)
        .def_static("quartic", &bm::Potential::quartic)
        .def_static("harmonic", &bm::Potential::harmonic)
        .def_static("polynomial", &bm::Potential::polynomial, "coeffs"_a)
        .def("__call__", [](const bm::Potential& p, double x) { return p(x); }, "x"_a)
        .def("deriv", &bm::Potential::deriv, "x"_a, "order"_a)
        .def("derivs",
             [](const bm::Potential& p, double x, int max_order) {
                 const auto d = p.derivs(x, max_order);
                 return std::vector<double>(d.begin(), d.begin() + max_order + 1);
             },
             "x"_a, "max_order"_a = 5)
        .def_property_readonly("name", &bm::Potential::name)
        .def_property_readonly("well_min_x", &bm::Potential::well_min_x)
        .def_property_readonly("well_min_value", &bm::Potential::well_min_value)
        .def_property_readonly("escape_energy", &bm::Potential::escape_energy)
        .def("__repr__", [](const bm::Potential& p) { return "Potential(" + p.name() + ")"; });

    py::class_<bm::TurningPoints>(m, "TurningPoints")
        .def_readonly("x1", &bm::TurningPoints::x1)
        .def_readonly("x2", &bm::TurningPoints::x2)
        .def_readonly("eps", &bm::TurningPoints::eps);
    m.def("turning_points",
          [](const bm::Potential& p, double eps) { return bm::turning_points(p, eps); },
          "potential"_a, "eps"_a);

    m.def("action_area", &bm::action_area, "potential"_a, "eps"_a,
          "phase-space area enclosed by the classical orbit");

    py::class_<bm::PhaseSpaceCurve>(m, "PhaseSpaceCurve")
        .def_readonly("eps", &bm::PhaseSpaceCurve::eps)
        .def_readonly("period", &bm::PhaseSpaceCurve::period)
        .def_readonly("area", &bm::PhaseSpaceCurve::area)
        .def_property_readonly("tau", [](const bm::PhaseSpaceCurve& c) {
            std::vector<double> v(c.samples.size());
            for (size_t i = 0; i < v.size(); ++i) v[i] = c.samples[i].tau;
            return v;
        })
        .def_property_readonly("x", [](const bm::PhaseSpaceCurve& c) {
            std::vector<double> v(c.samples.size());
            for (size_t i = 0; i < v.size(); ++i) v[i] = c.samples[i].x;
            return v;
        })
        .def_property_readonly("p", [](const bm::PhaseSpaceCurve& c) {
            std::vector<double> v(c.samples.size());
            for (size_t i = 0; i < v.size(); ++i) v[i] = c.samples[i].p;
            return v;
        })
        .def_property_readonly("action", [](const bm::PhaseSpaceCurve& c) {
            std::vector<double> v(c.samples.size());
            for (size_t i = 0; i < v.size(); ++i) v[i] = c.samples[i].action;
            return v;
        });
    m.def("psc_sample", &bm::psc_sample, "potential"_a, "eps"_a, "n_tau"_a = 256);

    m.def("a1_rate", &bm::a1_rate, "potential"_a, "eps"_a, "gamma"_a, "x"_a, "mom"_a);
    m.def("delta_F", &bm::delta_F, "potential"_a, "eps"_a, "gamma"_a = 1.0,
          "real change of the first amplitude correction per orbit circuit");
    m.def("script_F", &bm::script_F, "potential"_a, "eps"_a, "gamma"_a, "x"_a, "mom"_a);

    py::class_<bm::EigenEstimate>(m, "EigenEstimate")
        .def_readonly("n", &bm::EigenEstimate::n)
        .def_readonly("k", &bm::EigenEstimate::k)
        .def_readonly("eps0", &bm::EigenEstimate::eps0)
        .def_readonly("eps1", &bm::EigenEstimate::eps1)
        .def_readonly("deltaF_used", &bm::EigenEstimate::deltaF_used)
        .def_readonly("gamma_used", &bm::EigenEstimate::gamma_used)
        .def("__repr__", [](const bm::EigenEstimate& e) {
            return "EigenEstimate(n=" + std::to_string(e.n) +
                   ", eps0=" + std::to_string(e.eps0) + ", eps1=" + std::to_string(e.eps1) + ")";
        });
    m.def("quantize", &bm::quantize, "potential"_a, "k"_a, "n"_a, "order"_a = 1,
          "gamma"_a = 1.0);
    m.def("count_bound_states",
          [](const bm::Potential& p, double k, std::optional<double> ceiling) {
              return bm::count_bound_states(p, k, ceiling);
          },
          "potential"_a, "k"_a, "eps_ceiling"_a = py::none());

    py::class_<bm::OrderPair>(m, "OrderPair")
        .def_readonly("order0", &bm::OrderPair::order0)
        .def_readonly("order2", &bm::OrderPair::order2);
    py::class_<bm::MomentEstimate>(m, "MomentEstimate")
        .def_readonly("eps", &bm::MomentEstimate::eps)
        .def_readonly("k", &bm::MomentEstimate::k)
        .def_readonly("gamma", &bm::MomentEstimate::gamma)
        .def_readonly("avg_x", &bm::MomentEstimate::avg_x)
        .def_readonly("avg_x2", &bm::MomentEstimate::avg_x2)
        .def_readonly("avg_k0", &bm::MomentEstimate::avg_k0)
        .def_readonly("avg_k1", &bm::MomentEstimate::avg_k1)
        .def_readonly("avg_k2", &bm::MomentEstimate::avg_k2)
        .def_readonly("m1_over_m0", &bm::MomentEstimate::m1_over_m0)
        .def_readonly("m2_over_m0", &bm::MomentEstimate::m2_over_m0);
    m.def("q_bar", &bm::q_bar, "potential"_a, "eps"_a, "gamma"_a, "x"_a);
    m.def("classical_average", &bm::classical_average, "potential"_a, "eps"_a, "f"_a);
    m.def("normalized_moment", &bm::normalized_moment, "potential"_a, "eps"_a, "k"_a,
          "gamma"_a, "m"_a);
    m.def("moment_estimate", &bm::moment_estimate, "potential"_a, "eps"_a, "k"_a, "gamma"_a);
    m.def("choose_gamma", &bm::choose_gamma, "potential"_a, "eps"_a);
    m.def("gamma_spread", &bm::gamma_spread, "potential"_a, "eps"_a, "gammas"_a, "order"_a);

    py::class_<bm::WaveField>(m, "WaveField")
        .def_property_readonly("grid",
                               [](const bm::WaveField& w) {
                                   py::array_t<double> a(py::ssize_t(w.grid.size()));
                                   std::copy(w.grid.begin(), w.grid.end(), a.mutable_data());
                                   return a;
                               })
        .def_property_readonly("values",
                               [](const bm::WaveField& w) {
                                   py::array_t<std::complex<double>> a(
                                       py::ssize_t(w.values.size()));
                                   std::copy(w.values.begin(), w.values.end(),
                                             a.mutable_data());
                                   return a;
                               })
        .def_readonly("order", &bm::WaveField::order)
        .def_readonly("gamma", &bm::WaveField::gamma)
        .def_readonly("eps", &bm::WaveField::eps)
        .def_readonly("k", &bm::WaveField::k);
    m.def("default_grid", &bm::default_grid, "potential"_a, "eps"_a, "k"_a, "gamma"_a,
          "npoints"_a = 1024);
    m.def("synthesize", &bm::synthesize, "potential"_a, "eps"_a, "k"_a, "gamma"_a,
          "order"_a, "grid"_a);
    m.def("normalize_field", &bm::normalize_field, "field"_a);
    m.def("choose_gamma_field", &bm::choose_gamma_field, "potential"_a, "eps"_a);

    py::class_<bm::NumericState>(m, "NumericState")
        .def_readonly("eps", &bm::NumericState::eps)
        .def_readonly("x_lo", &bm::NumericState::x_lo)
        .def_readonly("x_hi", &bm::NumericState::x_hi)
        .def_readonly("step", &bm::NumericState::step)
        .def_readonly("nodes", &bm::NumericState::nodes)
        .def_readonly("n", &bm::NumericState::n)
        .def_readonly("k", &bm::NumericState::k)
        .def_readonly("observed_order", &bm::NumericState::observed_order)
        .def_property_readonly("u", [](const bm::NumericState& s) {
            py::array_t<double> a(py::ssize_t(s.u.size()));
            std::copy(s.u.begin(), s.u.end(), a.mutable_data());
            return a;
        })
        .def_property_readonly("x", [](const bm::NumericState& s) {
            std::vector<double> xs(s.u.size());
            for (size_t i = 0; i < xs.size(); ++i) xs[i] = s.x_lo + s.step * double(i);
            return xs;
        });
    m.def("solve_eigen", &bm::solve_eigen, "potential"_a, "k"_a, "n"_a, "tol"_a = 1e-10,
          py::call_guard<py::gil_scoped_release>());
    m.def("numeric_moment", &bm::numeric_moment, "state"_a, "m"_a);
}
