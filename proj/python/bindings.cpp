#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ahcurv/cli.hpp"
#include "ahcurv/constraint_lab.hpp"

namespace py = pybind11;
using namespace ahcurv;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Four-index arrays of shape (2n, 2n, 2n, 2n) in C order are exactly the flat
// row-major component layout.
FourTensor to_tensor(const Array& a) {
  if (a.ndim() != 4) throw Error(ErrorKind::ShapeError, "expected a 4-dimensional array");
  const auto d = a.shape(0);
  if (d % 2 != 0 || a.shape(1) != d || a.shape(2) != d || a.shape(3) != d)
    throw Error(ErrorKind::ShapeError, "expected shape (2n, 2n, 2n, 2n)");
  return FourTensor(static_cast<int>(d / 2), std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const FourTensor& t) {
  const py::ssize_t d = t.dim();
  Array out({d, d, d, d});
  std::copy(t.components().begin(), t.components().end(), out.mutable_data());
  return out;
}

CurvatureTensor curvature(const Array& a) {
  FourTensor t = to_tensor(a);
  const int n = t.n();
  return CurvatureTensor(std::move(t), AdaptedStructure(n));
}

py::object optional_value(const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Algebraic curvature tensors on almost Hermitian vector spaces";

  static py::exception<Error> error_type(m, "AhcurvError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto cls = py::reinterpret_borrow<py::object>(error_type);
      py::object inst = cls(e.what());
      inst.attr("kind") = to_string(e.kind());
      inst.attr("measured") = optional_value(e.measured());
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  m.def("structure_j", [](int n) { return AdaptedStructure(n).J(); }, py::arg("n"));
  m.def("pi1", [](int n) { return to_array(pi1(AdaptedStructure(n))); }, py::arg("n"));
  m.def("pi2", [](int n) { return to_array(pi2(AdaptedStructure(n))); }, py::arg("n"));
  m.def("pencil", [](int n, double a, double b) { return to_array(pencil(AdaptedStructure(n), a, b)); },
        py::arg("n"), py::arg("a"), py::arg("b"));
  m.def("phi", [](const Eigen::MatrixXd& q) { return to_array(phi(q, AdaptedStructure(static_cast<int>(q.rows() / 2)))); },
        py::arg("q"));
  m.def("psi", [](const Eigen::MatrixXd& q) { return to_array(psi(q, AdaptedStructure(static_cast<int>(q.rows() / 2)))); },
        py::arg("q"));

  m.def(
      "symmetry_residuals",
      [](const Array& a) {
        const FourTensor t = to_tensor(a);
        const SymmetryReport r = validate_curvature_symmetries(t);
        py::dict d;
        d["skew12"] = r.skew12;
        d["skew34"] = r.skew34;
        d["bianchi"] = r.bianchi;
        d["pair_symmetry"] = r.pair_symmetry;
        d["rk"] = t.n() >= 2 ? rk_residual(t, AdaptedStructure(t.n())) : 0.0;
        return d;
      },
      py::arg("tensor"));
  m.def("project_curvature", [](const Array& a) { return to_array(project_curvature(to_tensor(a))); },
        py::arg("tensor"));
  m.def(
      "project_rk",
      [](const Array& a) {
        const FourTensor t = to_tensor(a);
        return to_array(project_rk(t, AdaptedStructure(t.n())));
      },
      py::arg("tensor"));

  m.def("ricci", [](const Array& a) { return ricci(to_tensor(a)); }, py::arg("tensor"));
  m.def(
      "star_ricci",
      [](const Array& a) {
        const FourTensor t = to_tensor(a);
        return star_ricci(t, AdaptedStructure(t.n()));
      },
      py::arg("tensor"));
  m.def(
      "scalars",
      [](const Array& a) {
        const Scalars s = scalars(curvature(a));
        return py::make_tuple(s.tau, s.tau_star);
      },
      py::arg("tensor"), "(tau, tau_star)");
  m.def("bochner", [](const Array& a) { return to_array(bochner(curvature(a))); }, py::arg("tensor"));

  m.def(
      "constrained_sample",
      [](int n, double lambda, double mu, double nu, std::uint64_t seed) {
        SeededSampler sampler(seed);
        const ConstrainedSample cs = constrained_sample(AdaptedStructure(n), lambda, mu, nu, sampler);
        py::dict d;
        d["tensor"] = to_array(cs.tensor);
        d["c"] = cs.c;
        d["solution_dimension"] = cs.solution_dimension;
        d["posterior_max_dev"] = cs.posterior_max_dev;
        return d;
      },
      py::arg("n"), py::arg("lam"), py::arg("mu"), py::arg("nu"), py::arg("seed") = 1);

  m.def(
      "condition_residual",
      [](const Array& a, double lambda, double mu, double nu, int samples, std::uint64_t seed) {
        SeededSampler sampler(seed);
        const ConditionEstimate c = condition_residual(curvature(a), lambda, mu, nu, samples, sampler);
        return py::make_tuple(c.c_est, c.max_dev);
      },
      py::arg("tensor"), py::arg("lam"), py::arg("mu"), py::arg("nu"), py::arg("samples") = 64, py::arg("seed") = 1,
      "(c_est, max_dev)");

  m.def(
      "verify_theorem",
      [](const Array& a, double lambda, double mu, double nu, double tol, int samples, std::uint64_t seed) {
        SeededSampler sampler(seed);
        const TheoremReport r = verify_theorem(curvature(a), lambda, mu, nu, sampler, tol, samples);
        py::dict d;
        d["case"] = to_string(r.theorem_case);
        d["condition_dev"] = r.condition_dev;
        d["c_est"] = r.c_est;
        d["bochner_norm"] = optional_value(r.bochner_norm);
        d["proportionality_residual"] = r.proportionality_residual;
        d["bochner_verdict"] = to_string(r.bochner_verdict);
        d["proportionality_verdict"] = to_string(r.proportionality_verdict);
        d["passed"] = r.passed();
        return d;
      },
      py::arg("tensor"), py::arg("lam"), py::arg("mu"), py::arg("nu"), py::arg("tol") = 1e-6,
      py::arg("samples") = 64, py::arg("seed") = 1);

  m.def(
      "verify_corollary",
      [](const Array& a, double tol, int samples, std::uint64_t seed) {
        SeededSampler sampler(seed);
        const CorollaryReport r = verify_corollary(curvature(a), sampler, tol, samples);
        py::dict d;
        d["sectional_dev"] = r.sectional_dev;
        d["sectional_mean"] = r.sectional_mean;
        d["relative_bochner_norm"] = r.relative_bochner_norm;
        d["ricci_residual"] = r.ricci_residual;
        d["forward"] = to_string(r.forward.verdict);
        d["reverse"] = to_string(r.reverse.verdict);
        d["passed"] = r.passed();
        return d;
      },
      py::arg("tensor"), py::arg("tol") = 1e-6, py::arg("samples") = 64, py::arg("seed") = 1);

  m.def(
      "lemma_kernel_dimension",
      [](int n, const std::string& mode, bool holomorphic, bool antiholomorphic, int max_enlargements) {
        if (mode != "exact" && mode != "float") throw Error(ErrorKind::InvalidArgument, "mode must be exact or float");
        LemmaConfig cfg;
        cfg.holomorphic_planes = holomorphic;
        cfg.antiholomorphic_planes = antiholomorphic;
        cfg.max_enlargements = max_enlargements;
        const LemmaResult r = lemma_kernel_dimension(n, mode == "exact" ? LemmaMode::exact : LemmaMode::float_svd, cfg);
        py::dict d;
        d["kernel_dimension"] = r.kernel_dimension;
        d["space_dimension"] = r.space_dimension;
        d["constraint_rows"] = r.constraint_rows;
        d["smallest_retained_ratio"] = r.smallest_retained_ratio;
        return d;
      },
      py::arg("n"), py::arg("mode") = "exact", py::arg("holomorphic") = true, py::arg("antiholomorphic") = true,
      py::arg("max_enlargements") = 3);

  m.def(
      "replay_derivation",
      [](const Array& a, double lambda, double mu, double nu, int samples, std::uint64_t seed) {
        SeededSampler sampler(seed);
        const ReplayReport r = replay_derivation(curvature(a), lambda, mu, nu, sampler, samples);
        py::dict d;
        d["residuals"] = r.residuals;
        d["scale"] = r.scale;
        d["c_est"] = r.c_est;
        d["c1"] = r.c1_formula;
        return d;
      },
      py::arg("tensor"), py::arg("lam"), py::arg("mu"), py::arg("nu"), py::arg("samples") = 64, py::arg("seed") = 1);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "ahcurv");
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
