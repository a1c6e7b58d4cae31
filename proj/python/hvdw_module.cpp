#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hvdw/cli.hpp"
#include "hvdw/coefficients.hpp"

namespace py = pybind11;
using namespace hvdw;

namespace {

py::dict breakdown_dict(const InteractionBreakdown& b) {
    py::dict d;
    d["R"] = b.R;
    d["W_dir"] = b.w_dir;
    d["W_mix"] = b.w_mix;
    d["P_dir"] = b.p_dir;
    d["P_mix"] = b.p_mix;
    d["Gamma_dir"] = b.gamma_dir;
    d["Gamma_mix"] = b.gamma_mix;
    d["total"] = b.total;
    return d;
}

RunConfig config_from_kwargs(const py::kwargs& kw) {
    RunConfig cfg;
    for (auto item : kw) {
        const std::string key = py::cast<std::string>(item.first);
        if (key == "basis_size") {
            cfg.basis_size = py::cast<int>(item.second);
            cfg.basis_size_ground = cfg.basis_size;
        } else if (key == "lamb_shift_ghz")
            cfg.lamb_shift_ghz = py::cast<double>(item.second);
        else if (key == "alpha_fs")
            cfg.constants.alpha_fs = py::cast<double>(item.second);
        else if (key == "deg_threshold")
            cfg.deg_threshold = py::cast<double>(item.second);
        else if (key == "wick_rel_tol")
            cfg.wick_rel_tol = py::cast<double>(item.second);
        else
            throw std::invalid_argument("unknown config option '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "long-range QED interaction energies for hydrogen atom pairs";

    m.def("bound_energy", &bound_energy, py::arg("n"));
    m.def("radial_dipole", &radial_dipole, py::arg("n1"), py::arg("l1"), py::arg("n2"),
          py::arg("l2"));
    m.def("dbar6_closed_form", &dbar6_closed_form, py::arg("n"));
    m.def(
        "transition_gap",
        [](int n1, int l1, int n2, int l2) {
            return transition_gap(BoundState(n1, l1), BoundState(n2, l2));
        },
        py::arg("n"), py::arg("l"), py::arg("n_ref"), py::arg("l_ref"));

    py::class_<PairModel>(m, "Pair")
        .def(py::init([](const std::string& pair, const py::kwargs& kw) {
                 return new PairModel(parse_pair(pair), config_from_kwargs(kw));
             }),
             py::arg("pair"))
        .def("d6",
             [](const PairModel& m_, bool include_qd) {
                 ChannelCoefficients c = d6_direct(m_, include_qd);
                 py::dict d;
                 d["lower"] = c.lower;
                 d["upper"] = c.upper;
                 d["total"] = c.total;
                 return d;
             },
             py::arg("include_quasi_degenerate") = true)
        .def("m6", [](const PairModel& m_) { return m6_mixing(m_); })
        .def("dbar6",
             [](const PairModel& m_) { return dbar6_numeric(m_, m_.config().lamb_shift()); })
        .def("mbar6", [](const PairModel& m_) { return mbar6_numeric(m_); })
        .def("static_polarizability",
             [](const PairModel& m_, bool excited) {
                 return static_scalar_polarizability(excited ? m_.alpha_a() : m_.alpha_b());
             },
             py::arg("excited") = true)
        .def("breakdown", [](const PairModel& m_, double R) { return breakdown_dict(m_.total(R)); },
             py::arg("R"))
        .def("wick",
             [](const PairModel& m_, double R, bool include_qd) {
                 WickTerms w = m_.wick(R, {include_qd});
                 py::dict d;
                 d["dir"] = w.dir;
                 d["mix"] = w.mix;
                 return d;
             },
             py::arg("R"), py::arg("include_quasi_degenerate") = true)
        .def("pole",
             [](const PairModel& m_, double R) {
                 PoleTerms p = m_.pole(R);
                 py::dict d;
                 d["P_dir"] = p.p_dir;
                 d["P_mix"] = p.p_mix;
                 d["Gamma_dir"] = p.gamma_dir;
                 d["Gamma_mix"] = p.gamma_mix;
                 return d;
             },
             py::arg("R"))
        .def("cp_tail", [](const PairModel& m_, double R) { return cp_tail_direct(m_, R); },
             py::arg("R"))
        .def("pole_tail", [](const PairModel& m_, double R) { return pole_tail_direct(m_, R); },
             py::arg("R"))
        .def("crossover",
             [](const PairModel& m_, double rmin, double rmax) {
                 CrossoverResult r = crossover_radius(m_, rmin, rmax);
                 py::dict d;
                 d["found"] = r.found;
                 d["status"] = r.status;
                 if (r.found) d["R"] = r.R;
                 return d;
             },
             py::arg("rmin"), py::arg("rmax"));
}
