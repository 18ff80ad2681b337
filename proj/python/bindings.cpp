#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "uwidth/cover.hpp"
#include "uwidth/error.hpp"
#include "uwidth/experiment.hpp"
#include "uwidth/generators.hpp"
#include "uwidth/metric.hpp"
#include "uwidth/pipeline.hpp"
#include "uwidth/report.hpp"
#include "uwidth/sweep.hpp"
#include "uwidth/transfer.hpp"

namespace py = pybind11;
using namespace uw;

namespace {

std::string as_text(const WidthReport& r) { return to_json(r).dump(); }

double diameter_of(const MetricComplex& c) {
    std::vector<Id> all(c.num_vertices());
    for (Id v = 0; v < all.size(); ++v) all[v] = v;
    return vertex_diameter(RefinedComplex(c, c.longest_edge(), 1), all).value;
}

}  // namespace

PYBIND11_MODULE(_uwidth, m) {
    m.doc() = "1-Uryson width estimates and certificates";

    static py::exception<Error> exc(m, "UwidthError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = exc;
            err.attr("code") = error_name(e.code());
            PyErr_SetString(exc.ptr(), e.what());
        }
    });

    py::class_<MetricComplex>(m, "Complex")
        .def_property_readonly("num_vertices", &MetricComplex::num_vertices)
        .def_property_readonly("num_edges", &MetricComplex::num_edges)
        .def_property_readonly("num_triangles", &MetricComplex::num_triangles)
        .def_property_readonly("dim", &MetricComplex::dim)
        .def_property_readonly("euler_characteristic", &MetricComplex::euler_characteristic)
        .def_property_readonly("longest_edge", &MetricComplex::longest_edge)
        .def("to_text", [](const MetricComplex& c) {
            std::ostringstream os;
            write_complex(os, c);
            return os.str();
        })
        .def("save", [](const MetricComplex& c, const std::string& path) { save_complex(path, c); });

    m.def("generate", &generate_example, py::arg("kind"), py::arg("params") = Params{});
    m.def("load", [](const std::string& path) { return load_complex(path); }, py::arg("path"));
    m.def("from_text", [](const std::string& text) {
        std::istringstream is(text);
        return build_complex(parse_complex(is));
    }, py::arg("text"));

    m.def("sweep_width", [](const MetricComplex& c, double h, double step) {
        RefinedComplex rc(c, h > 0 ? h : default_h(c));
        SweepOptions o;
        o.step = step;
        return as_text(sweep_report("", sweep_quotient(rc, {PointOnComplex::vertex(0)}, o), rc.h()));
    }, py::arg("complex"), py::arg("h") = 0.0, py::arg("step") = 0.0);

    m.def("separator_search", [](const MetricComplex& c, double h, double step, std::size_t budget) {
        RefinedComplex rc(c, h > 0 ? h : default_h(c));
        SearchOptions o;
        o.budget = budget;
        o.step = step;
        return as_text(search_report("", rc, search_separator(rc, {PointOnComplex::vertex(0)}, o)));
    }, py::arg("complex"), py::arg("h") = 0.0, py::arg("step") = 0.0, py::arg("budget") = 8);

    m.def("transfer", [](const MetricComplex& c, double trunc, double h, double step) {
        if (trunc <= 0) trunc = 4 * diameter_of(c);
        if (h <= 0) h = default_h(c);
        auto p = build_cover(c, universal_cover_spec(fundamental_group(c)), trunc, 0, h);
        TransferOptions o;
        o.h = h;
        o.step = step;
        return as_text(transfer_report("", transfer_certificate(p, o), h, trunc));
    }, py::arg("complex"), py::arg("trunc") = 0.0, py::arg("h") = 0.0, py::arg("step") = 0.0);

    m.def("surface", [](const MetricComplex& c, double eps, double trunc, double step, std::size_t budget) {
        PipelineOptions o;
        o.eps = eps;
        o.trunc = trunc;
        o.step = step;
        o.budget = budget;
        return as_text(pipeline_report("", surface_pipeline(c, o)));
    }, py::arg("complex"), py::arg("eps") = 0.1, py::arg("trunc") = 0.0, py::arg("step") = 0.0,
       py::arg("budget") = 8);

    m.def("example1", [](const std::vector<int>& Rs, double trunc, std::uint64_t seed) {
        Example1Options o;
        if (trunc > 0) o.trunc = trunc;
        o.seed = seed;
        std::vector<Example1Row> rows;
        for (int R : Rs) rows.push_back(example1_row(R, o));
        return example1_json(rows, o).dump();
    }, py::arg("R"), py::arg("trunc") = 0.0, py::arg("seed") = 0);
}
