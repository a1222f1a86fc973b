#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ecs/entanglement.hpp"
#include "ecs/grid.hpp"
#include "ecs/oracle.hpp"
#include "ecs/teleportation.hpp"

namespace py = pybind11;
using namespace ecs;

namespace {

py::array_t<cx> to_numpy(const Matrix& m) {
  py::array_t<cx> out({m.rows(), m.cols()});
  auto r = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < r.shape(0); ++i)
    for (py::ssize_t j = 0; j < r.shape(1); ++j)
      r(i, j) = m(std::size_t(i), std::size_t(j));
  return out;
}

Matrix from_numpy(const py::array_t<cx, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw DimensionMismatch("expected a 2-d array");
  Matrix m(std::size_t(a.shape(0)), std::size_t(a.shape(1)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j)
      m(std::size_t(i), std::size_t(j)) = r(i, j);
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "entangled coherent states under decay: closed forms and brute-force checks";

  py::register_exception<Error>(m, "EcsError");

  m.def("ecs_normalization",
        [](cx a1, cx a2, double phi) { return ecs_normalization(ecs_params(a1, a2, phi)); },
        py::arg("alpha1"), py::arg("alpha2"), py::arg("phi"),
        "normalization prefactor of the two-mode superposition");

  m.def("coherent_overlap", &coherent_overlap, py::arg("a"), py::arg("b"),
        "<a|b> for coherent amplitudes");

  m.def("binary_entropy", &binary_entropy, py::arg("x"));
  m.def("eof_from_concurrence", &eof_from_concurrence, py::arg("c"));

  m.def("pure_ecs_eof",
        [](cx a1, cx a2, double phi) {
          const EofResult r = pure_ecs_eigenvalues(ecs_params(a1, a2, phi));
          return py::make_tuple(r.lambda_plus, r.lambda_minus, r.eof_bits);
        },
        py::arg("alpha1"), py::arg("alpha2"), py::arg("phi"),
        "(lambda_plus, lambda_minus, eof_bits) of the pure state");

  m.def("gamma_t_from_d", [](double d) { return decay_params_from_d(d).gamma_t; },
        py::arg("d"));
  m.def("d_from_gamma_t", [](double gt) { return decay_params(gt).d; }, py::arg("gamma_t"));

  m.def("two_qubit_density",
        [](cx a1, cx a2, double phi, double gamma_t) {
          return to_numpy(two_qubit_density(
              evolve_ecs(ecs_params(a1, a2, phi), decay_params(gamma_t))));
        },
        py::arg("alpha1"), py::arg("alpha2"), py::arg("phi"), py::arg("gamma_t"),
        "4x4 decayed density matrix in the encoded basis |11>,|10>,|01>,|00>");

  m.def("concurrence",
        [](const py::array_t<cx, py::array::c_style | py::array::forcecast>& rho) {
          const ConcurrenceResult r = concurrence(from_numpy(rho));
          return py::make_tuple(r.concurrence,
                                py::make_tuple(r.roots[0], r.roots[1], r.roots[2], r.roots[3]));
        },
        py::arg("rho"), "(concurrence, descending spin-flip roots) of a 4x4 density matrix");

  m.def("mixed_ecs_eof",
        [](cx a1, cx a2, double phi, double gamma_t) {
          return mixed_ecs_eof(ecs_params(a1, a2, phi), decay_params(gamma_t));
        },
        py::arg("alpha1"), py::arg("alpha2"), py::arg("phi"), py::arg("gamma_t"));

  m.def("success_probability",
        [](double ap, double a, double gt) { return success_probability({ap, a, gt}); },
        py::arg("alpha_prime"), py::arg("alpha"), py::arg("gamma_t"));
  m.def("mean_fidelity",
        [](double ap, double a, double gt) { return mean_fidelity({ap, a, gt}); },
        py::arg("alpha_prime"), py::arg("alpha"), py::arg("gamma_t"));
  m.def("stable_log_ratio_kernel",
        [](double a, double b) {
          const auto [k1, k2] = stable_log_ratio_kernel(a, b);
          return py::make_tuple(k1, k2);
        },
        py::arg("a"), py::arg("b"));

  m.def("revival_search",
        [](double ap, const std::vector<double>& alphas, const std::vector<double>& ds,
           unsigned workers) {
          py::list out;
          for (const RevivalTriple& t : revival_search(ap, alphas, ds, workers))
            out.append(py::make_tuple(t.alpha, t.d1, t.d2, t.f1, t.f2));
          return out;
        },
        py::arg("alpha_prime"), py::arg("alpha_grid"), py::arg("d_grid"),
        py::arg("workers") = 1,
        "list of (alpha, d1, d2, F(d1), F(d2)) with F(d2) > max(F(d1), 2/3), d2 > d1");

  m.def("oracle_eof",
        [](cx a1, cx a2, double phi, double gamma_t, std::size_t dim) {
          return oracle_eof(ecs_params(a1, a2, phi), gamma_t, dim);
        },
        py::arg("alpha1"), py::arg("alpha2"), py::arg("phi"), py::arg("gamma_t"),
        py::arg("dim") = 32, "brute-force Fock-space entanglement of formation");

  m.def("simulate_protocol",
        [](double ap, double a, double gt, std::size_t dim, std::size_t samples,
           std::uint64_t seed, unsigned workers) {
          const ProtocolStats s = simulate_protocol({ap, a, gt}, dim, samples, seed, workers);
          py::dict d;
          d["samples"] = s.samples;
          d["success_rate"] = s.success_rate;
          d["rate_se"] = s.rate_se;
          d["weight_mean"] = s.weight_mean;
          d["weight_se"] = s.weight_se;
          d["fidelity_mean"] = s.fidelity_mean;
          d["fidelity_se"] = s.fidelity_se;
          d["fidelity_min"] = s.fidelity_min;
          d["fidelity_max"] = s.fidelity_max;
          return d;
        },
        py::arg("alpha_prime"), py::arg("alpha"), py::arg("gamma_t"), py::arg("dim") = 32,
        py::arg("samples") = 10000, py::arg("seed") = 42, py::arg("workers") = 1,
        "Monte-Carlo run of the one-bit protocol; deterministic in (seed, samples)");

  m.def("hermitian_eig",
        [](const py::array_t<cx, py::array::c_style | py::array::forcecast>& h) {
          const Spectrum sp = hermitian_eig(from_numpy(h));
          return py::make_tuple(sp.values, to_numpy(sp.vectors));
        },
        py::arg("h"), "(descending eigenvalues, column eigenvectors)");
}
