#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "thedra/builders.hpp"
#include "thedra/error.hpp"
#include "thedra/kinematics.hpp"
#include "thedra/metrology.hpp"
#include "thedra/smooth/deformation.hpp"
#include "thedra/workbench/document.hpp"
#include "thedra/workbench/export.hpp"
#include "thedra/workbench/presets.hpp"

namespace py = pybind11;
using namespace thedra;

namespace {

py::array_t<double> to_array(const Grid<Vec3>& g) {
    py::array_t<double> out({g.rows(), g.cols(), std::size_t(3)});
    auto view = out.mutable_unchecked<3>();
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            for (int c = 0; c < 3; ++c) view(i, j, c) = g(i, j)(c);
    return out;
}

Grid<Vec3> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 3 || a.shape(2) != 3)
        throw Error(ErrorCode::ShapeMismatch, "expected an array of shape (rows, cols, 3)", "points");
    auto view = a.unchecked<3>();
    Grid<Vec3> g(a.shape(0), a.shape(1));
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j) g(i, j) = Vec3(view(i, j, 0), view(i, j, 1), view(i, j, 2));
    return g;
}

py::object finite_or_none(double x) { return std::isfinite(x) ? py::object(py::float_(x)) : py::object(py::none()); }

py::dict range_dict(const ParameterRange& r) {
    py::dict d;
    d["t_min"] = finite_or_none(r.t_min);
    d["t_max"] = finite_or_none(r.t_max);
    d["lower_reason"] = std::string(to_string(r.lower_reason));
    d["upper_reason"] = std::string(to_string(r.upper_reason));
    d["lower_index"] = r.lower_index;
    d["upper_index"] = r.upper_index;
    return d;
}

py::dict smooth_range_dict(const smooth::SmoothRange& r) {
    py::dict d;
    d["t_min"] = finite_or_none(r.t_min);
    d["t_max"] = finite_or_none(r.t_max);
    d["lower_reason"] = std::string(to_string(r.lower_reason));
    d["upper_reason"] = std::string(to_string(r.upper_reason));
    d["lower_at"] = r.lower_at;
    d["upper_at"] = r.upper_at;
    d["lower_open"] = r.lower_open;
    d["one_sided"] = r.one_sided();
    return d;
}

smooth::Surface smooth_surface(const std::string& json_text) {
    const workbench::DesignDocument doc = workbench::from_json(json_text);
    if (doc.discrete()) throw Error(ErrorCode::InvalidArgument, "expected a smooth document", "kind");
    return doc.surface();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "T-hedra and T-surfaces: construction, isometric deformation, metrology";

    static py::exception<Error> error_type(m, "ThedraError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object instance = py::reinterpret_borrow<py::object>(error_type)(std::string(to_string(e.code())) + ": " + e.what());
            instance.attr("code") = std::string(to_string(e.code()));
            instance.attr("field") = e.field();
            PyErr_SetObject(error_type.ptr(), instance.ptr());
        }
    });

    py::class_<DesignData>(m, "DesignData")
        .def(py::init([](std::vector<double> phi, std::vector<double> psi, std::vector<double> f0,
                         std::vector<double> g0, std::vector<double> z) {
                 return DesignData{std::move(phi), std::move(psi), std::move(f0), std::move(g0), std::move(z)};
             }),
             py::arg("phi"), py::arg("psi"), py::arg("f0"), py::arg("g0"), py::arg("z"))
        .def_readwrite("phi", &DesignData::phi)
        .def_readwrite("psi", &DesignData::psi)
        .def_readwrite("f0", &DesignData::f0)
        .def_readwrite("g0", &DesignData::g0)
        .def_readwrite("z", &DesignData::z)
        .def_property_readonly("m", &DesignData::m)
        .def_property_readonly("n", &DesignData::n)
        .def("__eq__", [](const DesignData& a, const DesignData& b) { return a == b; })
        .def("__repr__", [](const DesignData& d) {
            return "DesignData(m=" + std::to_string(d.m()) + ", n=" + std::to_string(d.n()) + ")";
        });

    m.def("validate_design", &validate_design, py::arg("design"));
    m.def("build", [](const DesignData& d) { return to_array(build_thedron(d).points); }, py::arg("design"),
          "Vertices of the T-hedron, shape (m+1, n+1, 3).");
    m.def("deform", [](const DesignData& d, double t) { return to_array(deform(d, t).points); }, py::arg("design"),
          py::arg("t"));
    m.def("parameter_range", [](const DesignData& d) { return range_dict(parameter_range(d)); }, py::arg("design"));
    m.def("classify", [](const DesignData& d) { return std::string(to_string(classify_design(d))); }, py::arg("design"));
    m.def("parallel_axial", &parallel_axial, py::arg("design"));
    m.def("axial_residual", &axial_residual, py::arg("design"));
    m.def("miura", [](double a, double b, double c, double d, std::size_t rows, std::size_t cols) {
              return translational_design(miura_data({a, b, c, d, rows, cols}));
          },
          py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("c") = 1.0, py::arg("d") = 1.0, py::arg("m") = 2,
          py::arg("n") = 2);
    m.def("miura_flat_parameters", [](double a, double b, double c, double d) {
              const MiuraFlatParameters f = miura_flat_parameters(a, b, c, d);
              return py::make_tuple(f.t_minus, f.t_plus);
          },
          py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
    m.def("general_from_translational", &general_from_translational, py::arg("t"));
    m.def("translational_from_general", &translational_from_general, py::arg("t"));

    m.def("planarity", [](const py::array_t<double>& points) { return planarity(from_array(points)); }, py::arg("points"));
    m.def("check_isometric", [](const py::array_t<double>& a, const py::array_t<double>& b, double tol) {
              const IsometryReport r = check_isometric(from_array(a), from_array(b), tol);
              py::dict d;
              d["max_edge_residual"] = r.max_edge_residual;
              d["max_diagonal_residual"] = r.max_diagonal_residual;
              d["pass"] = r.pass;
              return d;
          },
          py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
    m.def("is_parallel", [](const py::array_t<double>& a, const py::array_t<double>& b, double tol) {
              return is_parallel(THedron{from_array(a)}, THedron{from_array(b)}, tol);
          },
          py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);

    m.def("load_design", [](const std::string& text) { return workbench::from_json(text).design(); }, py::arg("text"),
          "Parse a discrete design document.");
    m.def("dump_design", [](const DesignData& d, const std::string& name, const std::string& created_at) {
              return workbench::to_json({workbench::kSchemaVersion, d, {name, created_at}});
          },
          py::arg("design"), py::arg("name") = "", py::arg("created_at") = "");
    m.def("preset_names", &workbench::preset_names);
    m.def("preset", [](const std::string& name) { return workbench::to_json(workbench::preset(name)); },
          py::arg("name"), "Preset design document as JSON text.");
    m.def("obj", [](const py::array_t<double>& points) { return workbench::obj_string(from_array(points)); },
          py::arg("points"));

    m.def("smooth_range", [](const std::string& text) { return smooth_range_dict(smooth::smooth_range(smooth_surface(text))); },
          py::arg("document"));
    m.def("smooth_deform",
          [](const std::string& text, double t, std::size_t resolution) {
              const smooth::Surface s = smooth::deform_surface(smooth_surface(text), t).surface;
              return to_array(smooth::sample_to_grid(s, resolution, resolution).points);
          },
          py::arg("document"), py::arg("t"), py::arg("resolution") = 32,
          "Deform a smooth document and sample it on a resolution x resolution quad grid.");
}
