#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tubalrpca/harness/image_io.hpp"
#include "tubalrpca/harness/metrics.hpp"
#include "tubalrpca/harness/noise.hpp"
#include "tubalrpca/norms.hpp"
#include "tubalrpca/solver.hpp"
#include "tubalrpca/spectral.hpp"
#include "tubalrpca/tensor_io.hpp"
#include "tubalrpca/weights.hpp"

namespace py = pybind11;
using namespace tubalrpca;

namespace {

using InArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using InComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

// numpy (d1, d2, d3) has the tube index fastest; Tensor3 keeps slices contiguous.
template <typename Scalar, typename Array>
BasicTensor3<Scalar> to_tensor(const Array& a) {
  if (a.ndim() != 2 && a.ndim() != 3) throw py::value_error("expected a 2-D or 3-D array");
  const std::size_t d1 = a.shape(0);
  const std::size_t d2 = a.shape(1);
  const std::size_t d3 = a.ndim() == 3 ? a.shape(2) : 1;
  BasicTensor3<Scalar> t(d1, d2, d3);
  const Scalar* src = a.data();
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t k = 0; k < d3; ++k) t(i, j, k) = src[(i * d2 + j) * d3 + k];
  return t;
}

template <typename Scalar>
py::array_t<Scalar> to_numpy(const BasicTensor3<Scalar>& t) {
  py::array_t<Scalar> a({t.d1(), t.d2(), t.d3()});
  Scalar* dst = a.mutable_data();
  for (std::size_t i = 0; i < t.d1(); ++i)
    for (std::size_t j = 0; j < t.d2(); ++j)
      for (std::size_t k = 0; k < t.d3(); ++k) dst[(i * t.d2() + j) * t.d3() + k] = t(i, j, k);
  return a;
}

Tensor3 tensor(const InArray& a) { return to_tensor<double>(a); }

WeightSpec weights_for(const Tensor3& x, std::optional<std::vector<double>> intra,
                       std::optional<std::vector<double>> inter) {
  WeightSpec w = WeightSpec::uniform(x.dims());
  if (intra) w.intra = *intra;
  if (inter) w.inter = *inter;
  return w;
}

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["L"] = to_numpy(r.l_hat);
  d["E"] = to_numpy(r.e_hat);
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["residual_history"] = r.residual_history;
  d["mu_history"] = r.mu_history;
  d["w_intra"] = r.final_weights.intra;
  d["w_inter"] = r.final_weights.inter;
  d["lambda"] = r.lambda;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tensor robust PCA with globally weighted tensor nuclear norms";

  auto base = py::register_exception<Error>(m, "TubalError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<NumericError>(m, "NumericError", base.ptr());

  py::enum_<SvdBackend>(m, "SvdBackend")
      .value("jacobi", SvdBackend::kJacobi)
      .value("lapack", SvdBackend::kLapack)
      .value("eigen", SvdBackend::kEigen);
  m.def("lapack_available", &lapack_available);

  py::class_<WeightPolicy>(m, "WeightPolicy")
      .def(py::init<>())
      .def_static("uniform", &WeightPolicy::uniform)
      .def_static("grouped", &WeightPolicy::grouped, py::arg("groups") = std::array<double, 3>{0.8, 0.8, 1.2})
      .def_static("grouped_adaptive", &WeightPolicy::grouped_adaptive,
                  py::arg("groups") = std::array<double, 3>{0.8, 0.8, 1.2})
      .def_property(
          "grouped_intra", [](const WeightPolicy& p) { return p.intra_mode == IntraMode::kGrouped; },
          [](WeightPolicy& p, bool v) { p.intra_mode = v ? IntraMode::kGrouped : IntraMode::kUniform; })
      .def_property(
          "adaptive_inter", &WeightPolicy::adaptive,
          [](WeightPolicy& p, bool v) { p.inter_mode = v ? InterMode::kAdaptiveMce : InterMode::kUniform; })
      .def_readwrite("groups", &WeightPolicy::groups)
      .def_readwrite("scale_floor", &WeightPolicy::scale_floor)
      .def_readwrite("recompute_every", &WeightPolicy::recompute_every);

  py::class_<AdmmConfig>(m, "AdmmConfig")
      .def(py::init<>())
      .def_readwrite("lambda_", &AdmmConfig::lambda)
      .def_readwrite("mu0", &AdmmConfig::mu0)
      .def_readwrite("rho", &AdmmConfig::rho)
      .def_readwrite("mu_max", &AdmmConfig::mu_max)
      .def_readwrite("eps", &AdmmConfig::eps)
      .def_readwrite("max_iter", &AdmmConfig::max_iter)
      .def_readwrite("weight_policy", &AdmmConfig::weight_policy)
      .def_readwrite("svd_backend", &AdmmConfig::svd_backend);

  // t-SVD algebra
  m.def("dft3", [](const InArray& x) { return to_numpy(dft3(tensor(x))); });
  m.def("idft3", [](const InComplexArray& x) { return to_numpy(idft3(to_tensor<Complex>(x))); });
  m.def("tprod", [](const InArray& a, const InArray& b) { return to_numpy(tprod(tensor(a), tensor(b))); });
  m.def("conj_transpose", [](const InArray& x) { return to_numpy(conj_transpose(tensor(x))); });
  m.def("identity_tensor", [](std::size_t d, std::size_t d3) { return to_numpy(identity_tensor(d, d3)); });
  m.def("tsvd", [](const InArray& x) {
    const TSvd t = tsvd(tensor(x));
    return py::make_tuple(to_numpy(t.u), to_numpy(t.s), to_numpy(t.v));
  });

  // norms and proximal operators
  m.def("tnn", [](const InArray& x) { return tnn(tensor(x)); });
  m.def(
      "gwtnn",
      [](const InArray& x, std::optional<std::vector<double>> intra, std::optional<std::vector<double>> inter) {
        const Tensor3 t = tensor(x);
        return gwtnn(t, weights_for(t, intra, inter));
      },
      py::arg("x"), py::arg("intra") = py::none(), py::arg("inter") = py::none());
  m.def(
      "prox_gwtnn",
      [](const InArray& x, double tau, std::optional<std::vector<double>> intra,
         std::optional<std::vector<double>> inter) {
        const Tensor3 t = tensor(x);
        return to_numpy(prox_gwtnn(t, weights_for(t, intra, inter), tau));
      },
      py::arg("m"), py::arg("tau"), py::arg("intra") = py::none(), py::arg("inter") = py::none());
  m.def("soft_threshold", [](const InArray& x, double thr) { return to_numpy(soft_threshold(tensor(x), thr)); });

  // weights
  m.def("grouped_intra", &grouped_intra, py::arg("d"), py::arg("groups") = std::array<double, 3>{0.8, 0.8, 1.2});
  m.def("slice_energies", [](const InArray& x) { return slice_energies(tensor(x)); });
  m.def("mce_inter_weights", &mce_inter_weights, py::arg("energies"), py::arg("scale_floor") = 0.05);

  // solvers
  m.def("default_lambda", py::overload_cast<std::size_t, std::size_t, std::size_t>(&default_lambda));
  auto bind_solver = [&m](const char* name, SolveReport (*fn)(const Tensor3&, AdmmConfig), const char* doc) {
    m.def(
        name,
        [fn](const InArray& x, const AdmmConfig& cfg) {
          const Tensor3 t = tensor(x);
          SolveReport r;
          {
            py::gil_scoped_release release;
            r = fn(t, cfg);
          }
          return report_dict(r);
        },
        py::arg("x"), py::arg("config") = AdmmConfig{}, doc);
  };
  bind_solver(
      "solve", [](const Tensor3& x, AdmmConfig cfg) { return solve(x, cfg); },
      "ADMM decomposition with the configured weight policy");
  bind_solver("solve_trpca", &solve_trpca, "Unit weights");
  bind_solver(
      "solve_etrpca_like", [](const Tensor3& x, AdmmConfig cfg) { return solve_etrpca_like(x, cfg); },
      "Grouped intra weights, uniform inter weights");
  bind_solver("solve_rpca_per_channel", &solve_rpca_per_channel, "Matrix RPCA on each frontal slice");

  // harness helpers
  m.def("psnr", [](const InArray& a, const InArray& b, double peak) { return psnr(tensor(a), tensor(b), peak); },
        py::arg("reference"), py::arg("estimate"), py::arg("peak") = 255.0);
  m.def(
      "corrupt_tubes",
      [](const InArray& x, double fraction, std::uint64_t seed, double value_max) {
        Corruption c = corrupt_tubes(tensor(x), fraction, seed, value_max);
        return py::make_tuple(to_numpy(c.corrupted), c.mask);
      },
      py::arg("x"), py::arg("fraction"), py::arg("seed"), py::arg("value_max") = 255.0);
  m.def(
      "synthesize",
      [](std::size_t d1, std::size_t d2, std::size_t d3, std::size_t rank, double sparsity, std::uint64_t seed) {
        const SyntheticProblem p = synthesize({d1, d2, d3}, rank, sparsity, seed);
        return py::make_tuple(to_numpy(p.low), to_numpy(p.sparse), to_numpy(p.observed));
      },
      py::arg("d1"), py::arg("d2"), py::arg("d3"), py::arg("rank"), py::arg("sparsity"), py::arg("seed"));
  m.def("load_tensor", [](const std::filesystem::path& p) { return to_numpy(load_tensor(p)); });
  m.def("save_image", [](const InArray& x, const std::filesystem::path& p) { save_image(tensor(x), p); });
  m.def("write_t3b", [](const InArray& x, const std::filesystem::path& p) { write_t3b(tensor(x), p); });
  m.def("read_t3b", [](const std::filesystem::path& p) { return to_numpy(read_t3b(p)); });
}
