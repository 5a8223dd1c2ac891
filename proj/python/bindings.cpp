#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ringpair/jsi.hpp"
#include "ringpair/observables.hpp"
#include "ringpair/oracle.hpp"
#include "ringpair/pump_steady.hpp"

namespace py = pybind11;
using namespace ringpair;

namespace
{

py::array_t<double> as_array(const std::vector<double>& v)
{
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> as_matrix(const std::vector<double>& v, std::size_t rows, std::size_t cols)
{
    py::array_t<double> a({static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)});
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

} // namespace

PYBIND11_MODULE(_ringpair, m)
{
    m.doc() = "Closed-form steady state of a driven microring photon-pair source";

    m.attr("HBAR") = kHbar;
    m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;
    m.def("omega_from_wavelength", &omega_from_wavelength, py::arg("wavelength_m"));

    py::class_<RingParams>(m, "RingParams")
        .def_static("from_lambda",
                    [](double ge, double gl, double lam, double wp, double th_eta, double th_zeta) {
                        return RingParams::from_lambda(ge, gl, lam, wp, ThermalOffsets{th_eta, th_zeta});
                    },
                    py::arg("gamma_ext"), py::arg("gamma_loss"), py::arg("lambda_fwm"),
                    py::arg("omega_p"), py::arg("thermal_eta") = 0.0, py::arg("thermal_zeta") = 0.0)
        .def_static("explicit_couplings", &RingParams::explicit_couplings, py::arg("gamma_ext"),
                    py::arg("gamma_loss"), py::arg("lambda_fwm"), py::arg("eta_spm"),
                    py::arg("zeta_xpm"), py::arg("omega_p"))
        .def_property_readonly("gamma_ext", &RingParams::gamma_ext)
        .def_property_readonly("gamma_loss", &RingParams::gamma_loss)
        .def_property_readonly("gamma_tot", &RingParams::gamma_tot)
        .def_property_readonly("lambda_fwm", &RingParams::lambda_fwm)
        .def_property_readonly("eta_spm", &RingParams::eta_spm)
        .def_property_readonly("zeta_xpm", &RingParams::zeta_xpm)
        .def_property_readonly("omega_p", &RingParams::omega_p)
        .def("__repr__", [](const RingParams& p) {
            return "RingParams(gamma_ext=" + std::to_string(p.gamma_ext()) + ", gamma_loss="
                   + std::to_string(p.gamma_loss()) + ", lambda_fwm=" + std::to_string(p.lambda_fwm())
                   + ")";
        });

    m.def("quality_factor", py::overload_cast<const RingParams&>(&quality_factor));
    m.def("p_amp_sq_from_power", &p_amp_sq_from_power, py::arg("p_in"), py::arg("params"));
    m.def("power_from_p_amp_sq", &power_from_p_amp_sq, py::arg("p_amp_sq"), py::arg("params"));
    m.def("estimate_lambda",
          [](double n, double n2, double length, double area, double omega_p) {
              return estimate_lambda(MaterialGeometry{n, n2, length, area}, omega_p).lambda_fwm;
          },
          py::arg("n_linear"), py::arg("n2"), py::arg("ring_length"), py::arg("cross_section"),
          py::arg("omega_p"));

    py::class_<PumpDrive>(m, "PumpDrive")
        .def_static("from_power", &PumpDrive::from_power, py::arg("p_in"), py::arg("detuning"),
                    py::arg("params"))
        .def_static("from_amp_sq", &PumpDrive::from_amp_sq, py::arg("p_amp_sq"),
                    py::arg("detuning"), py::arg("params"))
        .def_readonly("p_in", &PumpDrive::p_in)
        .def_readonly("detuning", &PumpDrive::detuning)
        .def_readonly("p_amp_sq", &PumpDrive::p_amp_sq);

    py::class_<PumpSolution>(m, "PumpSolution")
        .def_readonly("n_p", &PumpSolution::n_p)
        .def_property_readonly("stable",
                               [](const PumpSolution& s) { return s.stability == Stability::Stable; })
        .def_property_readonly("branch", [](const PumpSolution& s) { return to_string(s.branch); })
        .def_readonly("drive", &PumpSolution::drive);

    m.def("solve_steady_state", &solve_steady_state, py::arg("drive"), py::arg("params"));
    m.def("cubic_eval", &cubic_eval, py::arg("n_p"), py::arg("drive"), py::arg("params"));
    m.def("critical_detuning", py::overload_cast<const RingParams&>(&critical_detuning));
    m.def("stability_window",
          [](double detuning, const RingParams& p) -> py::object {
              const StabilityWindow w = stability_window(detuning, p);
              if (!w.defined)
                  return py::none();
              return py::make_tuple(w.n_minus, w.n_plus);
          },
          py::arg("detuning"), py::arg("params"));
    m.def("stability_eigenvalues", &stability_eigenvalues, py::arg("n_p"), py::arg("detuning"),
          py::arg("params"));
    m.def("optimal_detuning", &optimal_detuning, py::arg("n_p"), py::arg("params"));

    py::class_<DynParam>(m, "DynParam")
        .def(py::init(py::overload_cast<double, double, const RingParams&>(&DynParam::make)),
             py::arg("n_p"), py::arg("detuning"), py::arg("params"))
        .def_property_readonly("n_p", &DynParam::n_p)
        .def_property_readonly("detuning", &DynParam::detuning)
        .def_property_readonly("rho_sq", &DynParam::rho_sq)
        .def_property_readonly("kappa", &DynParam::kappa)
        .def_property_readonly("beta", &DynParam::beta)
        .def_property_readonly("regime", [](const DynParam& d) { return to_string(d.regime()); })
        .def_property_readonly("above_threshold", &DynParam::above_threshold);

    m.def("rho_bar_sq", &rho_bar_sq, py::arg("n_p"), py::arg("detuning"), py::arg("params"));
    m.def("green_kernels",
          [](const DynParam& d, double tau) {
              const KernelEval k = green_kernels(d, tau);
              return py::make_tuple(k.g_d, k.g_a);
          },
          py::arg("dyn"), py::arg("tau"));
    m.def("pair_amplitude", &pair_amplitude, py::arg("dyn"), py::arg("t1"), py::arg("t2"));

    m.def("pair_flux",
          [](const DynParam& d) {
              const FluxResult f = pair_flux(d);
              py::dict out;
              out["j_s"] = f.j_s;
              out["e_ring"] = f.e_ring;
              out["above_threshold"] = f.above_threshold;
              return out;
          },
          py::arg("dyn"));
    m.def("g1", &g1, py::arg("dyn"), py::arg("tau"));
    m.def("lineshape",
          [](const DynParam& d, std::vector<double> omega) {
              return as_array(lineshape(d, omega).values);
          },
          py::arg("dyn"), py::arg("omega_s"));

    py::class_<FilterModel>(m, "FilterModel")
        .def_static("rect", &FilterModel::rect, py::arg("delta_omega_trans"), py::arg("delta_t"))
        .def_static("custom", &FilterModel::custom, py::arg("omega"), py::arg("transmission"),
                    py::arg("delta_t"))
        .def("smoothing", &FilterModel::smoothing, py::arg("u"))
        .def_property_readonly("delta_omega_trans", &FilterModel::delta_omega_trans)
        .def_property_readonly("delta_t", &FilterModel::delta_t);

    m.def("coincidence_rate", &coincidence_rate, py::arg("dyn"), py::arg("omega_s"),
          py::arg("omega_i"), py::arg("filter"));
    m.def("jsi_total",
          [](const DynParam& d, const FilterModel& f, std::size_t points, double half_width_gamma,
             std::size_t supersample) {
              JsiOptions o;
              o.n_s = o.n_i = points;
              o.half_width_in_gamma = half_width_gamma;
              o.supersample = supersample;
              const JsiGrid g = jsi_total(d, f, o);
              py::dict out;
              out["omega_s"] = as_array(g.omega_s);
              out["omega_i"] = as_array(g.omega_i);
              out["i_corr"] = as_matrix(g.i_corr, g.rows(), g.cols());
              out["i_uncorr"] = as_matrix(g.i_uncorr, g.rows(), g.cols());
              out["i_total"] = as_matrix(g.i_total, g.rows(), g.cols());
              out["max_ratio"] = g.max_ratio;
              out["warnings"] = g.warnings;
              return out;
          },
          py::arg("dyn"), py::arg("filter"), py::arg("points") = 201,
          py::arg("half_width_gamma") = 6.0, py::arg("supersample") = 10);

    m.def("oracle_flux", &oracle_flux, py::arg("dyn"));
    m.def("steady_moments",
          [](const DynParam& d) {
              const MomentState s = steady_moments(d);
              return py::make_tuple(s.n_s, s.n_i, s.m);
          },
          py::arg("dyn"));
    m.def("run_validation",
          [](std::size_t samples, std::uint64_t seed) {
              ValidationOptions o;
              o.samples = samples;
              o.seed = seed;
              const ValidationReport r = run_validation(o);
              py::dict out;
              out["max_flux_dev"] = r.max_flux_dev;
              out["max_g1_dev"] = r.max_g1_dev;
              out["max_kernel_dev"] = r.max_kernel_dev;
              out["failures"] = r.failures;
              out["pass"] = r.pass;
              return out;
          },
          py::arg("samples") = 100, py::arg("seed") = 20240521);
}
