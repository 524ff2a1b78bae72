#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "desmoke/imageio.hpp"
#include "desmoke/metrics.hpp"
#include "desmoke/pipeline.hpp"
#include "desmoke/synth.hpp"

namespace py = pybind11;
using namespace desmoke;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ImageTensor to_tensor(const Array& a) {
    if (a.ndim() != 3 || a.shape(2) != 3) throw DimensionError("expected an array of shape (H, W, 3)");
    const auto h = static_cast<std::size_t>(a.shape(0));
    const auto w = static_cast<std::size_t>(a.shape(1));
    return ImageTensor(h, w, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const ImageTensor& t) {
    Array out({t.height(), t.width(), std::size_t{3}});
    std::copy(t.values().begin(), t.values().end(), out.mutable_data());
    return out;
}

using Stack = std::tuple<Array, Array, Array>;

GradientStack to_stack(const Stack& s) {
    return GradientStack(to_tensor(std::get<0>(s)), to_tensor(std::get<1>(s)), to_tensor(std::get<2>(s)));
}

Stack from_stack(const GradientStack& g) { return {to_array(g.dx), to_array(g.dy), to_array(g.dc)}; }

py::dict diagnostics(const SolveDiagnostics& d) {
    py::dict out;
    out["iterations"] = d.iterations;
    out["converged"] = d.converged;
    out["energy"] = d.energy_trace;
    out["primal_residual"] = d.primal_residual_trace;
    out["dual_residual"] = d.dual_residual_trace;
    return out;
}

}  // namespace

PYBIND11_MODULE(_desmoke, m) {
    m.doc() = "Smoke removal by TV-regularised layer decomposition";

    // Most specific first so pybind11 picks the right Python class.
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<ShapeMismatch>(m, "ShapeMismatch", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);

    py::class_<Betas>(m, "Betas")
        .def(py::init([](double x, double y, double c) { return Betas{x, y, c}; }), py::arg("x") = 1.0,
             py::arg("y") = 1.0, py::arg("c") = 1.0)
        .def_readwrite("x", &Betas::x)
        .def_readwrite("y", &Betas::y)
        .def_readwrite("c", &Betas::c)
        .def("__repr__", [](const Betas& b) {
            return "Betas(x=" + std::to_string(b.x) + ", y=" + std::to_string(b.y) + ", c=" + std::to_string(b.c) +
                   ")";
        });

    py::class_<SolverParams>(m, "SolverParams")
        .def(py::init([](double lambda, Betas betas, double rho, double epsilon, int max_iter, double tol) {
                 SolverParams p{lambda, betas, rho, epsilon, max_iter, tol};
                 p.validate();
                 return p;
             }),
             py::arg("lam") = 1.0, py::arg("betas") = Betas{}, py::arg("rho") = 5.0, py::arg("epsilon") = 1e-8,
             py::arg("max_iter") = 100, py::arg("tol") = 1e-4)
        .def_readwrite("lam", &SolverParams::lambda)
        .def_readwrite("betas", &SolverParams::betas)
        .def_readwrite("rho", &SolverParams::rho)
        .def_readwrite("epsilon", &SolverParams::epsilon)
        .def_readwrite("max_iter", &SolverParams::max_iter)
        .def_readwrite("tol", &SolverParams::tol);

    m.def(
        "decompose",
        [](const Array& image, const SolverParams& params) {
            const DecompositionResult r = decompose(to_tensor(image), params);
            py::dict out;
            out["F"] = to_array(r.F);
            out["J"] = to_array(r.J);
            out["J_unclamped"] = to_array(r.J_unclamped);
            out["alpha"] = r.alpha;
            out["diagnostics"] = diagnostics(r.diag);
            return out;
        },
        py::arg("image"), py::arg("params") = SolverParams{},
        "Split an (H, W, 3) image in [0, 1] into smoke F and enhanced J.");

    m.def(
        "solve",
        [](const Array& image, const SolverParams& params) {
            const SolveResult r = solve_smoke(to_tensor(image), params);
            return py::make_tuple(to_array(r.F), diagnostics(r.diag));
        },
        py::arg("image"), py::arg("params") = SolverParams{}, "Minimise the TV energy; returns (F, diagnostics).");

    m.def(
        "f_update",
        [](const Array& image, const Stack& u, const Stack& y, const SolverParams& params) {
            const ImageTensor I = to_tensor(image);
            const SpectralKernel kernel(I.height(), I.width(), params);
            return to_array(f_update(I, to_stack(u), to_stack(y), kernel, params));
        },
        py::arg("image"), py::arg("u"), py::arg("y"), py::arg("params") = SolverParams{});

    m.def(
        "apply_D", [](const Array& F, const Betas& b) { return from_stack(apply_D(to_tensor(F), b)); },
        py::arg("F"), py::arg("betas") = Betas{}, "Weighted periodic forward differences (dx, dy, dc).");
    m.def(
        "apply_Dt", [](const Stack& g, const Betas& b) { return to_array(apply_Dt(to_stack(g), b)); },
        py::arg("g"), py::arg("betas") = Betas{}, "Adjoint of apply_D.");
    m.def(
        "shrink", [](const Stack& v, double rho, double eps) { return from_stack(shrink(to_stack(v), rho, eps)); },
        py::arg("v"), py::arg("rho"), py::arg("epsilon") = 1e-8);
    m.def(
        "tv_norm", [](const Array& F, const Betas& b) { return tv_norm(to_tensor(F), b); }, py::arg("F"),
        py::arg("betas") = Betas{});
    m.def(
        "energy",
        [](const Array& F, const Array& I, const SolverParams& p) { return energy(to_tensor(F), to_tensor(I), p); },
        py::arg("F"), py::arg("image"), py::arg("params") = SolverParams{});

    m.def(
        "visible_edges",
        [](const Array& image, double threshold) {
            const EdgeMask mask = visible_edges(to_tensor(image), threshold);
            py::array_t<bool> out({mask.height, mask.width});
            std::copy(mask.bits.begin(), mask.bits.end(), out.mutable_data());
            return out;
        },
        py::arg("image"), py::arg("threshold") = kDefaultEdgeContrast);
    m.def(
        "re_metric", [](const Array& I, const Array& J, double thr) { return re_metric(to_tensor(I), to_tensor(J), thr); },
        py::arg("original"), py::arg("enhanced"), py::arg("threshold") = kDefaultEdgeContrast);
    m.def(
        "psnr", [](const Array& a, const Array& b) { return psnr(to_tensor(a), to_tensor(b)); }, py::arg("a"),
        py::arg("b"));
    m.def(
        "evaluate",
        [](const Array& original, const Array& enhanced, std::optional<Array> truth) {
            std::optional<ImageTensor> t;
            if (truth) t = to_tensor(*truth);
            const MetricReport r = evaluate(to_tensor(original), to_tensor(enhanced), t ? &*t : nullptr);
            py::dict out;
            out["re"] = r.re;
            out["psnr"] = r.psnr ? py::cast(*r.psnr) : py::none();
            out["rms_contrast_in"] = r.rms_contrast_in;
            out["rms_contrast_out"] = r.rms_contrast_out;
            return out;
        },
        py::arg("original"), py::arg("enhanced"), py::arg("truth") = py::none());

    m.def(
        "generate_smoke_field",
        [](std::size_t h, std::size_t w, std::uint64_t seed, double strength, double smoothness, double jitter) {
            return to_array(generate_smoke_field(h, w, SmokeSpec{seed, strength, smoothness, jitter}));
        },
        py::arg("height"), py::arg("width"), py::arg("seed") = 1, py::arg("strength") = 0.3,
        py::arg("smoothness") = 12.0, py::arg("chroma_jitter") = 0.05);
    m.def(
        "apply_smoke", [](const Array& clean, const Array& field) { return to_array(apply_smoke(to_tensor(clean), to_tensor(field))); },
        py::arg("clean"), py::arg("field"));
    m.def(
        "textured_scene",
        [](std::size_t h, std::size_t w, std::uint64_t seed, std::size_t cell) {
            return to_array(textured_scene(h, w, seed, cell));
        },
        py::arg("height"), py::arg("width"), py::arg("seed") = 1, py::arg("cell") = 4);

    m.def(
        "load_image", [](const std::filesystem::path& p) { return to_array(load_image(p)); }, py::arg("path"));
    m.def(
        "save_image", [](const Array& image, const std::filesystem::path& p) { save_image(to_tensor(image), p); },
        py::arg("image"), py::arg("path"));
}
