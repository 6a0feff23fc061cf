#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "anharmonic/cli.hpp"
#include "anharmonic/errors.hpp"
#include "anharmonic/measures.hpp"

namespace py = pybind11;
using namespace anharmonic;

namespace {

py::dict record_dict(const measures::MeasureRecord& r) {
    py::dict d;
    d["model"] = r.model;
    d["eta_ng"] = r.eta_ng;
    d["nu"] = r.nu;
    d["ent_potential"] = r.ent_potential;
    d["r_x"] = r.r_x;
    d["r_p"] = r.r_p;
    d["energy"] = r.energy;
    d["effective"] = r.effective;
    d["fidelity"] = r.fidelity;
    d["extrapolated"] = r.extrapolated;
    d["note"] = r.note;
    return d;
}

fock::FockState to_state(const std::vector<fock::Complex>& c) { return fock::FockState(c); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nonlinearity and nonclassicality of anharmonic oscillator ground states";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<BoundStateError>(m, "BoundStateError", PyExc_ValueError);
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);
    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);

    py::class_<osc::MhoParams>(m, "Mho")
        .def(py::init<double, double>(), py::arg("alpha") = 1.0, py::arg("beta") = 0.0)
        .def_readwrite("alpha", &osc::MhoParams::alpha)
        .def_readwrite("beta", &osc::MhoParams::beta)
        .def_property_readonly("tau", &osc::MhoParams::tau);
    py::class_<osc::MorseParams>(m, "Morse")
        .def(py::init<double, double>(), py::arg("d") = 1.0, py::arg("alpha") = 1.0)
        .def_readwrite("d", &osc::MorseParams::d)
        .def_readwrite("alpha", &osc::MorseParams::alpha)
        .def_property_readonly("n", &osc::MorseParams::n);
    py::class_<osc::PtParams>(m, "PoschlTeller")
        .def(py::init<double, double>(), py::arg("a") = 1.0, py::arg("alpha") = 1.0)
        .def_readwrite("a", &osc::PtParams::a)
        .def_readwrite("alpha", &osc::PtParams::alpha)
        .def_property_readonly("s", &osc::PtParams::s);
    py::class_<perturb::PolyParams>(m, "Poly")
        .def(py::init<double, double, double>(), py::arg("omega") = 1.0, py::arg("eps4") = 0.0,
             py::arg("eps6") = 0.0)
        .def_readwrite("omega", &perturb::PolyParams::omega)
        .def_readwrite("eps4", &perturb::PolyParams::eps4)
        .def_readwrite("eps6", &perturb::PolyParams::eps6)
        .def("in_validity_box", &perturb::PolyParams::in_validity_box);

    py::class_<osc::Covariance2>(m, "Covariance")
        .def_readonly("sxx", &osc::Covariance2::sxx)
        .def_readonly("sxp", &osc::Covariance2::sxp)
        .def_readonly("spp", &osc::Covariance2::spp)
        .def_readonly("dx", &osc::Covariance2::dx)
        .def_readonly("dp", &osc::Covariance2::dp)
        .def("det", &osc::Covariance2::det);

    m.def("covariance", [](const measures::ModelParams& model) {
        return std::visit(
            [](const auto& p) -> osc::Covariance2 {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, osc::MhoParams>) return osc::mho_covariance(p);
                else if constexpr (std::is_same_v<T, osc::MorseParams>) return osc::morse_covariance(p);
                else if constexpr (std::is_same_v<T, osc::PtParams>) return osc::pt_covariance(p);
                else return perturb::pol_covariance(perturb::perturbative_ground(p).state, p.omega);
            },
            model);
    }, py::arg("model"), "Ground-state covariance; poly uses the perturbative state.");

    m.def("measure",
          [](const measures::ModelParams& model, std::size_t dim_fock, double tol_2d) {
              measures::MeasureOptions opts;
              opts.dim_fock = dim_fock;
              opts.negativity.quad.abs_tol = tol_2d;
              measures::MeasureRecord r;
              {
                  py::gil_scoped_release release;
                  r = measures::measure_model(model, opts);
              }
              return record_dict(r);
          },
          py::arg("model"), py::arg("dim_fock") = 60, py::arg("tol_2d") = 1e-6,
          "eta_ng, nu, ent_potential, squeezing ratios and energy of the ground state.");

    py::class_<wigner::WignerField>(m, "WignerField")
        .def("__call__", &wigner::WignerField::operator(), py::arg("x"), py::arg("p"))
        .def("grid",
             [](const wigner::WignerField& w, py::array_t<double> xs, py::array_t<double> ps) {
                 auto x = xs.unchecked<1>();
                 auto p = ps.unchecked<1>();
                 py::array_t<double> out({p.shape(0), x.shape(0)});
                 auto o = out.mutable_unchecked<2>();
                 for (py::ssize_t j = 0; j < p.shape(0); ++j)
                     for (py::ssize_t i = 0; i < x.shape(0); ++i) o(j, i) = w(x(i), p(j));
                 return out;
             },
             py::arg("x"), py::arg("p"), "Values W(x_i, p_j) as an array indexed [j, i].")
        .def_property_readonly("box", [](const wigner::WignerField& w) {
            return py::make_tuple(w.box.x.lower, w.box.x.upper, w.box.p.lower, w.box.p.upper);
        });

    m.def("mho_wigner", &wigner::mho_wigner, py::arg("tau"));
    m.def("morse_wigner", &wigner::morse_wigner, py::arg("n"));
    m.def("fock_wigner", [](const std::vector<fock::Complex>& c) { return wigner::fock_wigner(to_state(c)); },
          py::arg("coeffs"));
    m.def("model_wigner", &measures::physical_wigner, py::arg("model"),
          "Ground-state Wigner function in the physical variables of the model.");
    m.def("negativity",
          [](const wigner::WignerField& w, double tol) {
              wigner::NegativityOptions opts;
              opts.quad.abs_tol = tol;
              wigner::Negativity n;
              {
                  py::gil_scoped_release release;
                  n = wigner::negativity_volume(w, opts);
              }
              return py::make_tuple(n.delta, n.nu);
          },
          py::arg("field"), py::arg("tol") = 1e-6, "(delta, nu) of a Wigner function.");

    m.def("entanglement_potential",
          [](const std::vector<fock::Complex>& c) { return measures::entanglement_potential(to_state(c)); },
          py::arg("coeffs"));
    m.def("fidelity",
          [](const std::vector<fock::Complex>& a, const std::vector<fock::Complex>& b) {
              return fock::fidelity(to_state(a), to_state(b));
          },
          py::arg("a"), py::arg("b"));

    m.def("perturbative_gammas", [](const perturb::PolyParams& p) {
        const auto g = perturb::perturbative_gammas(p);
        return py::make_tuple(g.gamma0, g.gamma2, g.gamma4, g.gamma6);
    }, py::arg("params"));
    m.def("numeric_ground", [](const perturb::PolyParams& p, std::size_t dim) {
        const auto g = perturb::numeric_ground(p, dim);
        return py::make_tuple(g.state.coeffs(), g.energy);
    }, py::arg("params"), py::arg("dim") = perturb::kDefaultDiagDim);
    m.def("appendix_wigner",
          [](const std::array<double, 4>& g, double x, double p) {
              return perturb::appendix_wigner({g[0], g[1], g[2], g[3]}, x, p);
          },
          py::arg("gammas"), py::arg("x"), py::arg("p"));
    m.def("fidelity_map",
          [](std::pair<double, double> e4, std::pair<double, double> e6, std::size_t count, double omega) {
              std::vector<perturb::FidelityCell> cells;
              {
                  py::gil_scoped_release release;
                  cells = perturb::fidelity_map({e4.first, e4.second, count}, {e6.first, e6.second, count}, omega);
              }
              py::list out;
              for (const auto& c : cells) out.append(py::make_tuple(c.eps4, c.eps6, c.fidelity, c.error));
              return out;
          },
          py::arg("eps4") = std::pair{0.0, 0.1}, py::arg("eps6") = std::pair{0.0, 0.03}, py::arg("count") = 5,
          py::arg("omega") = 1.0, "[(eps4, eps6, fidelity, error)] over a count x count grid.");

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code = 0;
              {
                  py::gil_scoped_release release;
                  code = cli::run(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs the command line front end; returns (exit code, stdout, stderr).");
}
