#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toeplitz_spectra/band_decay.hpp"
#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/hankel.hpp"
#include "toeplitz_spectra/predictor.hpp"
#include "toeplitz_spectra/spectra.hpp"
#include "toeplitz_spectra/symbol_io.hpp"
#include "toeplitz_spectra/toeplitz.hpp"

namespace py = pybind11;
using namespace toeplitz;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Toeplitz spectra, inverses and predictors";

    static py::exception<Error> error_type(m, "ToeplitzError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            exc.attr("value") = e.value();
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    py::class_<TrigSymbol>(m, "TrigSymbol")
        .def_static("cosine", [](const std::vector<double>& c) { return TrigSymbol::cosine(c); })
        .def_static("from_coeffs", &TrigSymbol::from_coeffs, py::arg("centered"))
        .def_static("constant", &TrigSymbol::constant)
        .def_static("parse", [](const std::string& s) { return load_symbol(s); })
        .def_property_readonly("degree", &TrigSymbol::degree)
        .def_property_readonly("coeffs", &TrigSymbol::coeffs)
        .def("coeff", &TrigSymbol::coeff)
        .def("to_json", [](const TrigSymbol& s) { return symbol_to_json(s); })
        .def("__call__", [](const TrigSymbol& s, double t) { return s(t); });

    m.def("toeplitz_matrix", [](const TrigSymbol& s, int N) { return ToeplitzMatrix::build(s, N).dense(); });
    m.def("dense_invert", [](const DenseMatrix& a) { return dense_invert(a); });
    m.def("eigenvalues", &toeplitz_eigenvalues, py::arg("symbol"), py::arg("N"));
    m.def(
        "grid_locations",
        [](const TrigSymbol& s, int N) {
            py::list out;
            for (const GridLocation& g : grid_localize(s, N, toeplitz_eigenvalues(s, N)))
                out.append(py::make_tuple(g.k, g.theta_shift));
            return out;
        },
        py::arg("symbol"), py::arg("N"));

    m.def(
        "factor",
        [](const TrigSymbol& s) {
            const SpectralFactorization f = wiener_hopf_factor(s);
            py::list roots;
            for (const Root& r : f.roots.roots)
                roots.append(py::make_tuple(r.value, r.multiplicity, r.location == RootLocation::Inside));
            py::dict d;
            d["n0"] = f.n0();
            d["rho"] = f.rho();
            d["scale"] = f.scale;
            d["roots"] = roots;
            d["reconstruction_error"] = f.reconstruction_error;
            return d;
        },
        py::arg("symbol"));

    m.def(
        "hankel_inverse",
        [](const TrigSymbol& s, int N) { return HankelInverter(wiener_hopf_factor(s), N).full(); },
        py::arg("symbol"), py::arg("N"));
    m.def(
        "hankel_product_norm", [](const TrigSymbol& s, int N) { return hankel_product_matrix(wiener_hopf_factor(s), N).norm; },
        py::arg("symbol"), py::arg("N"));

    m.def(
        "band_decay",
        [](const TrigSymbol& s, int N) {
            const DecayReport r = band_decay_report(BandSymbol::from(s), N);
            py::dict d;
            d["offset_max"] = r.offset_max;
            d["slope"] = r.slope;
            d["target"] = r.target;
            d["constant"] = r.constant;
            d["fit_window"] = py::make_tuple(r.fit_lo, r.fit_hi);
            d["exact_band"] = r.exact_band;
            d["pass"] = r.pass;
            return d;
        },
        py::arg("symbol"), py::arg("N"));

    m.def(
        "predictor", [](const TrigSymbol& s, int M) { return levinson(s, M).beta; }, py::arg("symbol"), py::arg("M"));
    m.def("property1_residual", py::overload_cast<const TrigSymbol&, int>(&property1_check), py::arg("symbol"),
          py::arg("M"));
    m.def(
        "weyl_gap", [](const TrigSymbol& s, int N) { return weyl_gap(s, N, default_test_functions()); },
        py::arg("symbol"), py::arg("N"));
}
